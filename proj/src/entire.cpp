#include "vdlab/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vdlab {

namespace {

constexpr int kMaxTerms = 200000;

struct SeriesOut {
    cplx value;
    cplx z_deriv;  // z * d/dz of the series
    double tail = 0.0;
    double max_partial = 0.0;
    int terms = 0;
};

// sum_n w^n / W(n+1) in double-double, w = -z^2 for J and +z^2 for I.
SeriesOut sum_series(const EntirePair& pair, cplx z, bool alternating, bool want_deriv)
{
    CDD zz(z);
    CDD w = zz * zz;
    if (alternating) {
        w = CDD(-w.re, -w.im);
    }
    const double az2 = std::norm(z);
    const double eps = pair.eps();
    auto vals = pair.psi_values_dd(64);
    CDD term(DD(1.0), DD(0.0));
    CDD sum = term;
    CDD dsum(DD(0.0), DD(0.0));
    double max_partial = 1.0;
    double sumabs = 1.0;
    SeriesOut out;
    for (int n = 1;; ++n) {
        if (n + 1 >= int(vals->size())) {
            vals = pair.psi_values_dd(2 * n + 2);
        }
        term = (term * w) / (*vals)[n];
        sum = sum + term;
        if (want_deriv) {
            dsum = dsum + term * DD(2.0 * n);
        }
        double at = std::abs(term.value());
        sumabs += at;
        max_partial = std::max(max_partial, std::abs(sum.value()));
        double pnext = (*vals)[n + 1].value();
        double next = at * az2 / pnext;
        double s = std::abs(sum.value());
        if (pnext > 2.0 * az2 && (next < eps * s || next < 1e-32 * sumabs)) {
            out.tail = 2.0 * next;
            out.terms = n + 1;
            break;
        }
        if (n > kMaxTerms) {
            throw std::runtime_error("entire series did not terminate");
        }
    }
    out.value = sum.value();
    out.z_deriv = dsum.value();
    out.max_partial = max_partial;
    return out;
}

SeriesValue to_value(const SeriesOut& s)
{
    SeriesValue v;
    v.value = s.value;
    v.tail_bound = s.tail;
    v.terms = s.terms;
    v.cancellation = s.max_partial > 1e12 * std::abs(s.value);
    return v;
}

} // namespace

EntirePair::EntirePair(LaplaceExponent psi, double eps)
    : psi_(std::move(psi)), eps_(eps), cache_(std::make_shared<Cache>())
{
    if (psi_.theta() >= 1.0) {
        throw std::invalid_argument("entire pair needs Psi(k) > 0 for k >= 1 (theta < 1)");
    }
    const double p0 = psi_(0.0);
    cache_->values = std::make_shared<std::vector<double>>(1, p0);
    cache_->dd = std::make_shared<std::vector<DD>>(1, DD(p0));
}

void EntirePair::extend(int n) const
{
    auto v = std::make_shared<std::vector<double>>(*cache_->values);
    auto d = std::make_shared<std::vector<DD>>(*cache_->dd);
    int target = std::max(n + 1, 2 * int(v->size()));
    const bool hp = psi_.has_psi_hp();
    for (int k = int(v->size()); k < target; ++k) {
        DD p;
        if (hp) {
            HPReal x = psi_.psi_hp(HPReal(k));
            double hi = x.convert_to<double>();
            p = DD(hi) + DD(static_cast<double>(x - hi));
        } else {
            p = DD(psi_(double(k)));
        }
        if (!(p.value() > 0.0)) {
            throw std::domain_error("Psi(k) <= 0 at k = " + std::to_string(k));
        }
        v->push_back(p.value());
        d->push_back(p);
    }
    cache_->values = v;
    cache_->dd = d;
}

std::shared_ptr<const std::vector<double>> EntirePair::psi_values(int n) const
{
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (int(cache_->values->size()) <= n) {
        extend(n);
    }
    return cache_->values;
}

std::shared_ptr<const std::vector<DD>> EntirePair::psi_values_dd(int n) const
{
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (int(cache_->dd->size()) <= n) {
        extend(n);
    }
    return cache_->dd;
}

double EntirePair::log_w_psi(int n) const
{
    auto v = psi_values(n);
    CompensatedSum<double> s;
    for (int k = 1; k <= n; ++k) {
        s.add(std::log((*v)[k]));
    }
    return s.value();
}

double EntirePair::coeff(int n) const
{
    auto v = psi_values(n);
    double c = 1.0;
    for (int k = 1; k <= n; ++k) {
        c /= (*v)[k];
        if (c < 1e-290) {
            return std::exp(-log_w_psi(n));
        }
    }
    return c;
}

SeriesValue eval_J_full(const EntirePair& pair, cplx z) { return to_value(sum_series(pair, z, true, false)); }
cplx eval_J(const EntirePair& pair, cplx z) { return sum_series(pair, z, true, false).value; }
double eval_J(const EntirePair& pair, double t) { return eval_J(pair, cplx(t, 0.0)).real(); }

cplx eval_J_prime(const EntirePair& pair, cplx z)
{
    if (z == cplx(0.0)) {
        return 0.0;
    }
    return sum_series(pair, z, true, true).z_deriv / z;
}

SeriesValue eval_I_full(const EntirePair& pair, cplx z) { return to_value(sum_series(pair, z, false, false)); }
cplx eval_I(const EntirePair& pair, cplx z) { return sum_series(pair, z, false, false).value; }

double eval_I(const EntirePair& pair, double t)
{
    DD w = DD(t) * DD(t);
    const double t2 = t * t;
    auto vals = pair.psi_values_dd(64);
    DD term(1.0), sum(1.0);
    for (int n = 1;; ++n) {
        if (n + 1 >= int(vals->size())) {
            vals = pair.psi_values_dd(2 * n + 2);
        }
        term = term * w / (*vals)[n];
        sum = sum + term;
        double pnext = (*vals)[n + 1].value();
        if (pnext > 2.0 * t2 && term.value() * t2 / pnext < pair.eps() * sum.value()) {
            break;
        }
        if (n > kMaxTerms) {
            throw std::runtime_error("entire series did not terminate");
        }
    }
    return sum.value();
}

double log_eval_I(const EntirePair& pair, double t)
{
    t = std::abs(t);
    if (t < 1.0) {
        return std::log(eval_I(pair, t));
    }
    const double lt2 = 2.0 * std::log(t);
    const double t2 = t * t;
    auto vals = pair.psi_values(64);
    std::vector<double> logs{0.0};
    double l = 0.0, lmax = 0.0;
    for (int n = 1;; ++n) {
        if (n + 1 >= int(vals->size())) {
            vals = pair.psi_values(2 * n + 2);
        }
        l += lt2 - std::log((*vals)[n]);
        logs.push_back(l);
        lmax = std::max(lmax, l);
        if ((*vals)[n + 1] > 2.0 * t2 && l < lmax - 40.0) {
            break;
        }
        if (n > kMaxTerms) {
            throw std::runtime_error("entire series did not terminate");
        }
    }
    double s = 0.0;
    for (double v : logs) {
        s += std::exp(v - lmax);
    }
    return lmax + std::log(s);
}

double eval_F(const EntirePair& pair, double t)
{
    double i = eval_I(pair, t);
    if (!std::isfinite(i)) {
        throw std::overflow_error("I_Psi overflows; F not representable by the series");
    }
    return eval_J(pair, t) / i;
}

double phi_psi(const EntirePair& pair, double u)
{
    if (!(u >= 0.0)) {
        throw std::domain_error("phi_Psi needs u >= 0");
    }
    return log_eval_I(pair, std::sqrt(u));
}

EntirePair lukacs_map(const EntirePair& pair, int p, int k)
{
    if (k < 1) {
        throw std::invalid_argument("lukacs_map needs k >= 1");
    }
    if (p == 1) {
        return EntirePair(tbeta_map(pair.psi(), double(k)), pair.eps());
    }
    if (p == 2) {
        if (pair.psi().theta() > 0.5 + 1e-12) {
            throw std::invalid_argument("lukacs_map p = 2 requires theta <= 1/2");
        }
        LaplaceExponent q = pair.psi();
        for (int j = 0; j < 2 * k; ++j) {
            q = tbar_map(q, 0.5);
        }
        return EntirePair(q, pair.eps());
    }
    throw std::invalid_argument("lukacs_map supports p in {1, 2}");
}

double lukacs_finite_difference(const std::function<double(double)>& f, int p, double t, double h)
{
    auto d2 = [&](double x) {
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    };
    double f2_0 = d2(0.0);
    if (p == 1) {
        double d1 = (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
        return d1 / (t * f2_0);
    }
    if (p == 2) {
        return d2(t) / f2_0;
    }
    throw std::invalid_argument("finite-difference Lukacs map supports p in {1, 2}");
}

OrderTypeEstimate order_estimate(const EntirePair& pair)
{
    const auto& psi = pair.psi();
    std::vector<double> lx, ly;
    for (int j = 4; j <= 20; ++j) {
        double u = std::ldexp(1.0, j);
        lx.push_back(std::log(u));
        ly.push_back(std::log(psi(u)));
    }
    auto slope = [&](std::size_t lo, std::size_t hi) {
        double n = double(hi - lo), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const std::size_t half = 8;  // u >= 2^12
    double ls_upper = slope(half, lx.size());
    double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin;
    for (std::size_t i = half; i + 5 <= lx.size(); ++i) {
        double s = slope(i, i + 5);
        wmin = std::min(wmin, s);
        wmax = std::max(wmax, s);
    }
    OrderTypeEstimate est;
    est.lower_index = std::min(ls_upper, wmin);
    est.rho = std::clamp(2.0 / est.lower_index, 1.0, 2.0);
    est.window_spread = wmax - wmin;
    est.slowly_varying_flag = est.window_spread > 0.05;
    double th = psi.theta();
    double best = 0.0;
    for (int j = 12; j <= 20; ++j) {
        double n = std::ldexp(1.0, j);
        double phi = psi(n) / (n - th);
        best = std::max(best, std::pow(n, est.lower_index - 1.0) / phi);
    }
    est.type_lower_bound = std::pow(best, 1.0 / est.lower_index);
    return est;
}

RealZeroScan real_zeros(const EntirePair& pair, double R)
{
    if (!(R > 0.0)) {
        throw std::invalid_argument("real_zeros needs R > 0");
    }
    RealZeroScan out;
    const int steps = 1000;
    const double h = R / steps;
    auto f = [&](double t) { return eval_J(pair, t); };
    std::vector<double> ts(steps + 1), vs(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        ts[i] = i * h;
        vs[i] = f(ts[i]);
    }
    for (int i = 1; i <= steps; ++i) {
        if (ts[i] >= R) {
            break;
        }
        if (vs[i] == 0.0) {
            out.zeros.push_back(ts[i]);
            continue;
        }
        if (vs[i - 1] != 0.0 && (vs[i - 1] < 0.0) != (vs[i] < 0.0)) {
            double a = ts[i - 1], b = ts[i], fa = vs[i - 1];
            for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, a); ++it) {
                double m = 0.5 * (a + b);
                double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.zeros.push_back(0.5 * (a + b));
        } else if (i + 1 <= steps && std::abs(vs[i]) < 1e-8 && std::abs(vs[i]) <= std::abs(vs[i - 1])
                   && std::abs(vs[i]) <= std::abs(vs[i + 1])) {
            out.warnings.push_back("possible tangential zero near t = " + std::to_string(ts[i]));
        }
    }
    return out;
}

namespace {

// (1/2pi) int Re[z J'(z)/J(z)] dtheta on |z| = R, trapezoid with doubling.
bool winding(const EntirePair& pair, double R, double& raw)
{
    std::vector<double> samples;
    auto g = [&](double th) {
        cplx z = std::polar(R, th);
        auto s = sum_series(pair, z, true, true);
        return (s.z_deriv / s.value).real();
    };
    int m = 64;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
        sum += g(2.0 * std::numbers::pi * j / m);
    }
    double prev = sum / m;
    while (m < (1 << 16)) {
        for (int j = 0; j < m; ++j) {
            sum += g(2.0 * std::numbers::pi * (j + 0.5) / m);
        }
        m *= 2;
        double cur = sum / m;
        if (std::abs(cur - prev) < 1e-8) {
            raw = cur;
            return true;
        }
        prev = cur;
    }
    raw = prev;
    return false;
}

} // namespace

DiskCount count_zeros_disk(const EntirePair& pair, double R)
{
    if (!(R > 0.0)) {
        throw std::invalid_argument("count_zeros_disk needs R > 0");
    }
    double r = R;
    double raw = 0.0;
    for (int attempt = 0; attempt < 10; ++attempt, r += 1e-3) {
        bool ok = winding(pair, r, raw);
        if (ok && std::abs(raw - std::round(raw)) < 0.1) {
            return {int(std::lround(raw)), raw, r};
        }
    }
    throw std::runtime_error("zero counting contour too close to a zero (residual " +
                             std::to_string(std::abs(raw - std::round(raw))) + ")");
}

ZeroReport zero_report(const EntirePair& pair, double R)
{
    ZeroReport rep;
    DiskCount dc = count_zeros_disk(pair, R);
    rep.radius = dc.radius;
    auto rz = real_zeros(pair, dc.radius);
    rep.real_zeros = rz.zeros;
    rep.warnings = rz.warnings;
    if (dc.radius != R) {
        rep.warnings.push_back("radius perturbed to " + std::to_string(dc.radius));
    }
    rep.disk_count = dc.count;
    rep.classification = dc.count == 2 * int(rep.real_zeros.size()) ? ZeroClass::AllRealUpToR
                                                                     : ZeroClass::NonRealDetected;
    return rep;
}

std::string to_string(ZeroClass c)
{
    return c == ZeroClass::AllRealUpToR ? "AllRealUpToR" : "NonRealDetected";
}

} // namespace vdlab
