#include "vdlab/lp.hpp"

#include "vdlab/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace vdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
// tail zeros are multiplied in explicitly until |z|^2/z_k^2 drops below this
constexpr double kTailRatio = 1e-3;
// and at least until k + shift reaches this, where Euler-Maclaurin is sharp
constexpr double kTailStart = 20.0;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void require_integrable_tilt(const SymmetricDensity& d, double lambda)
{
    if (lambda <= 0.0 || std::isfinite(d.support)) {
        return;
    }
    // h(x) = lambda x^2 + log f(x) must head to -infinity
    std::vector<double> h;
    for (double x = 1.0; x <= 4096.0; x *= 2.0) {
        double v = d.f(x);
        if (!(v > 0.0)) {
            break;
        }
        h.push_back(lambda * x * x + std::log(v));
    }
    if (h.size() < 2) {
        return;
    }
    double last = h.back(), prev = h[h.size() - 2];
    if (!(last < prev && last < -30.0)) {
        throw TiltDivergence("e^{lambda x^2} f(x) does not decay: the tilt normalizer diverges");
    }
}

double half_line_integral(const std::function<double(double)>& g, double support)
{
    if (std::isfinite(support)) {
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate(g, 0.0, support, 1e-12);
    }
    return integrate_to_infinity<double>(g, 0.0, 1e-12, 50);
}

} // namespace

// ---------------------------------------------------------------------------
// Laguerre-Polya functions

void LPEvenFunction::validate() const
{
    if (!(c2 >= 0.0)) {
        throw std::invalid_argument("LP function needs c2 >= 0");
    }
    for (double z : zeros) {
        if (!(z > 0.0) || !std::isfinite(z)) {
            throw std::invalid_argument("LP zeros must be positive and finite");
        }
    }
    if (tail) {
        if (!(tail->p > 0.5)) {
            throw std::invalid_argument("tail rule needs p > 1/2 for sum z_k^-2 < inf");
        }
        if (!(tail->kappa > 0.0) || !(zeros.size() + 1.0 + tail->shift > 0.0)) {
            throw std::invalid_argument("tail rule zeros must be positive");
        }
    }
}

double LPEvenFunction::zero(std::size_t k) const
{
    if (k == 0) {
        throw std::invalid_argument("zeros are indexed from 1");
    }
    if (k <= zeros.size()) {
        return zeros[k - 1];
    }
    if (!tail) {
        throw std::out_of_range("LP function has finitely many zeros");
    }
    return tail->kappa * std::pow(double(k) + tail->shift, tail->p);
}

double LPEvenFunction::inverse_square_sum() const
{
    double s = 0.0;
    for (double z : zeros) {
        s += 1.0 / (z * z);
    }
    if (tail) {
        s += lp_tail_power_sum(*tail, zeros.size(), 1);
    }
    return s;
}

LPEvenFunction LPEvenFunction::cosine()
{
    LPEvenFunction f;
    f.tail = LPTailRule{kPi, 1.0, -0.5};
    return f;
}

double lp_tail_power_sum(const LPTailRule& rule, std::size_t K, int m)
{
    const double q = 2.0 * rule.p * m;
    const double scale = std::pow(rule.kappa, -2.0 * m);
    double s = 0.0;
    std::size_t k = K;
    while (double(k) + rule.shift < kTailStart) {
        ++k;
        s += std::pow(double(k) + rule.shift, -q);
    }
    // sum_{j > k} g(j), g(x) = (x + shift)^{-q}
    double y = double(k) + rule.shift;
    double em = std::pow(y, 1.0 - q) / (q - 1.0) - 0.5 * std::pow(y, -q) + q * std::pow(y, -q - 1.0) / 12.0
              - q * (q + 1.0) * (q + 2.0) * std::pow(y, -q - 3.0) / 720.0
              + q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) * std::pow(y, -q - 5.0) / 30240.0;
    return scale * (s + em);
}

std::complex<double> eval_lp(const LPEvenFunction& f, std::complex<double> z)
{
    f.validate();
    const cplx z2 = z * z;
    cplx prod = std::exp(-f.c2 * z2);
    for (double zk : f.zeros) {
        prod *= 1.0 - z2 / (zk * zk);
    }
    if (!f.tail) {
        return prod;
    }
    const LPTailRule& r = *f.tail;
    std::size_t k = f.zeros.size();
    for (;;) {
        double zk = f.zero(k + 1);
        if (double(k + 1) + r.shift >= kTailStart && std::norm(z) / (zk * zk) < kTailRatio) {
            break;
        }
        prod *= 1.0 - z2 / (zk * zk);
        ++k;
    }
    // log prod_{j > k} (1 - z^2/z_j^2) = -sum_m z^{2m} S_{2m}/m
    cplx lg = 0.0;
    cplx zp = 1.0;
    for (int m = 1; m <= 8; ++m) {
        zp *= z2;
        lg -= zp * lp_tail_power_sum(r, k, m) / double(m);
    }
    return prod * std::exp(lg);
}

double eval_lp(const LPEvenFunction& f, double x) { return eval_lp(f, cplx(x, 0.0)).real(); }

double reciprocal_cf(const LPEvenFunction& f, double t)
{
    f.validate();
    const double t2 = t * t;
    double lg = -f.c2 * t2;
    for (double zk : f.zeros) {
        lg -= std::log1p(t2 / (zk * zk));
    }
    if (f.tail) {
        const LPTailRule& r = *f.tail;
        std::size_t k = f.zeros.size();
        for (;;) {
            double zk = f.zero(k + 1);
            if (double(k + 1) + r.shift >= kTailStart && t2 / (zk * zk) < kTailRatio) {
                break;
            }
            lg -= std::log1p(t2 / (zk * zk));
            ++k;
        }
        double tp = 1.0;
        for (int m = 1; m <= 8; ++m) {
            tp *= t2;
            lg -= (m % 2 ? 1.0 : -1.0) * tp * lp_tail_power_sum(r, k, m) / m;
        }
    }
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// Polya frequency determinants

double pf_determinant_test(const std::function<double(double)>& density, const std::vector<double>& xs,
                           const std::vector<double>& ys)
{
    const std::size_t n = xs.size();
    if (n == 0 || n > 5 || ys.size() != n) {
        throw std::invalid_argument("PF test needs grids of equal length 1..5");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs[i] > xs[i - 1]) || !(ys[i] > ys[i - 1])) {
            throw std::invalid_argument("PF grids must be strictly increasing");
        }
    }
    Eigen::MatrixXd M(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            M(j, k) = density(xs[j] - ys[k]);
        }
    }
    return M.determinant();
}

PFScan pf_scan(const std::function<double(double)>& density, int n, int draws, std::uint64_t seed,
               double half_width)
{
    CounterRng rng(seed);
    PFScan best;
    best.min_det = kInf;
    std::uint64_t c = 0;
    for (int d = 0; d < draws; ++d) {
        std::vector<double> xs(n), ys(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = half_width * (2.0 * rng.uniform(c++) - 1.0);
            ys[i] = half_width * (2.0 * rng.uniform(c++) - 1.0);
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()
            || std::adjacent_find(ys.begin(), ys.end()) != ys.end()) {
            continue;
        }
        double det = pf_determinant_test(density, xs, ys);
        ++best.draws;
        if (det < best.min_det) {
            best.min_det = det;
            best.xs = xs;
            best.ys = ys;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Random series representation

std::uint64_t CounterRng::bits(std::uint64_t counter) const
{
    std::uint64_t k = mix64(seed_ ^ mix64(stream_ + 0x632BE59BD9B4E019ULL));
    return mix64(k + 0x9E3779B97F4A7C15ULL * (counter + 1));
}

double CounterRng::uniform(std::uint64_t counter) const
{
    return (double(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double NZSample::mean_standard_error() const { return std::sqrt(variance / double(draws.size())); }

double NZSample::variance_standard_error() const
{
    double m4 = 0.0;
    for (double x : draws) {
        double d = x - mean;
        m4 += d * d * d * d;
    }
    m4 /= double(draws.size());
    return std::sqrt(std::max(0.0, m4 - variance * variance) / double(draws.size()));
}

double NZSample::empirical_cf(double t) const
{
    CompensatedSum<double> s;
    for (double x : draws) {
        s.add(std::cos(t * x));
    }
    return s.value() / double(draws.size());
}

double NZSample::cf_standard_error(double t) const
{
    double m = empirical_cf(t), v = 0.0;
    for (double x : draws) {
        double d = std::cos(t * x) - m;
        v += d * d;
    }
    v /= double(draws.size() - 1);
    return std::sqrt(v / double(draws.size()));
}

NZSample simulate_nz(const LPEvenFunction& f, int samples, std::uint64_t seed)
{
    f.validate();
    if (samples < 2) {
        throw std::invalid_argument("need at least two samples");
    }
    std::vector<double> inv = {};
    for (double z : f.zeros) {
        inv.push_back(1.0 / z);
    }
    double remainder = 2.0 * f.c2;
    if (f.tail) {
        std::size_t k = f.zeros.size();
        while (2.0 * lp_tail_power_sum(*f.tail, k, 1) >= 1e-3) {
            ++k;
            inv.push_back(1.0 / f.zero(k));
        }
        remainder += 2.0 * lp_tail_power_sum(*f.tail, k, 1);
    }
    NZSample out;
    out.explicit_terms = int(inv.size());
    out.gaussian_remainder_variance = remainder;
    out.target_variance = 2.0 * f.c2 + 2.0 * f.inverse_square_sum();
    out.draws.resize(samples);
    const double sd = std::sqrt(remainder);
    CounterRng root(seed);
    for (int i = 0; i < samples; ++i) {
        CounterRng rng = root.split(std::uint64_t(i));
        double u1 = rng.uniform(0), u2 = rng.uniform(1);
        double x = sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        for (std::size_t j = 0; j < inv.size(); ++j) {
            double u = rng.uniform(j + 2) - 0.5;
            double lap = u < 0.0 ? std::log1p(2.0 * u) : -std::log1p(-2.0 * u);
            x += lap * inv[j];
        }
        out.draws[i] = x;
    }
    CompensatedSum<double> s;
    for (double x : out.draws) {
        s.add(x);
    }
    out.mean = s.value() / samples;
    CompensatedSum<double> v;
    for (double x : out.draws) {
        v.add((x - out.mean) * (x - out.mean));
    }
    out.variance = v.value() / (samples - 1);
    return out;
}

// ---------------------------------------------------------------------------
// Densities, characteristic functions, tilts

double cf_from_density(const SymmetricDensity& d, double t)
{
    auto g = [&](double x) {
        double v = d.f(x);
        return v == 0.0 ? 0.0 : std::cos(t * x) * v;
    };
    return 2.0 * half_line_integral(g, d.support);
}

double total_mass(const SymmetricDensity& d) { return cf_from_density(d, 0.0); }

SymmetricDensity tilt_density(const SymmetricDensity& d, double lambda)
{
    if (lambda == 0.0) {
        return d;
    }
    require_integrable_tilt(d, lambda);
    auto base = d.f;
    auto tilted = [base, lambda](double x) {
        double v = base(x);
        return v > 0.0 ? std::exp(lambda * x * x + std::log(v)) : 0.0;
    };
    double z = 2.0 * half_line_integral(tilted, d.support);
    if (!std::isfinite(z) || !(z > 0.0)) {
        throw TiltDivergence("tilt normalizer is not finite");
    }
    SymmetricDensity out;
    out.support = d.support;
    out.label = d.label + " tilted by " + std::to_string(lambda);
    out.f = [tilted, z](double x) { return tilted(x) / z; };
    return out;
}

double tilt_cf(const SymmetricDensity& d, double lambda, double t)
{
    return cf_from_density(tilt_density(d, lambda), t);
}

NewmanDensity::NewmanDensity(int m, double alpha, double beta, std::vector<double> a)
    : m_(m), alpha_(alpha), beta_(beta), a_(std::move(a))
{
    if (m_ < 0) {
        throw std::invalid_argument("m must be a nonnegative integer");
    }
    if (alpha_ < 0.0) {
        throw std::invalid_argument("alpha < 0 gives a non-integrable density");
    }
    double s2 = 0.0;
    for (double ak : a_) {
        if (!(ak > 0.0)) {
            throw std::invalid_argument("zeros a_k must be positive");
        }
        s2 += 1.0 / (ak * ak);
    }
    if (alpha_ == 0.0 && !(beta_ + s2 > 0.0)) {
        throw std::invalid_argument("alpha = 0 needs beta + sum a_k^-2 > 0 for integrability");
    }
    if (alpha_ > 0.0 && !(beta_ + s2 > 0.0)) {
        advisories_.push_back("alpha > 0 with beta + sum a_k^-2 <= 0: outside the admissible family");
    }
    double mass = 2.0 * integrate_to_infinity<double>([this](double x) { return unnormalized(x); }, 0.0, 1e-13, 50);
    K_ = 1.0 / mass;
}

double NewmanDensity::unnormalized(double x) const
{
    double x2 = x * x;
    if (x2 == 0.0) {
        return m_ == 0 ? 1.0 : 0.0;
    }
    double lg = m_ * std::log(x2) - alpha_ * x2 * x2 - beta_ * x2;
    for (double ak : a_) {
        double r = x2 / (ak * ak);
        lg += std::log1p(r) - r;
    }
    return std::exp(lg);
}

double NewmanDensity::operator()(double x) const { return K_ * unnormalized(x); }

SymmetricDensity NewmanDensity::as_density() const
{
    SymmetricDensity d;
    NewmanDensity self = *this;
    d.f = [self](double x) { return self(x); };
    d.label = "newman(m=" + std::to_string(m_) + ")";
    return d;
}

// ---------------------------------------------------------------------------
// Lee-Yang

void IsingModel::validate() const
{
    if (N < 1 || N > 12) {
        throw std::invalid_argument("Ising model needs 1 <= N <= 12");
    }
    if (int(J.size()) != N || int(lambda.size()) != N) {
        throw std::invalid_argument("coupling matrix and field vector must have size N");
    }
    for (int j = 0; j < N; ++j) {
        if (int(J[j].size()) != N) {
            throw std::invalid_argument("coupling matrix must be N x N");
        }
        for (int k = 0; k < N; ++k) {
            if (std::abs(J[j][k] - J[k][j]) > 1e-14 * (1.0 + std::abs(J[j][k]))) {
                throw std::invalid_argument("coupling matrix must be symmetric");
            }
        }
        if (!(lambda[j] >= 0.0)) {
            throw std::invalid_argument("field weights must be nonnegative");
        }
    }
}

bool IsingModel::ferromagnetic() const
{
    for (int j = 0; j < N; ++j) {
        for (int k = j + 1; k < N; ++k) {
            if (J[j][k] < 0.0) {
                return false;
            }
        }
    }
    return true;
}

bool IsingModel::uniform_field() const
{
    return std::all_of(lambda.begin(), lambda.end(), [&](double l) { return l == lambda[0]; });
}

namespace {

// Energies sum_{j<k} J_jk x_j x_k, spins from the bits of the index (1 = up).
std::vector<double> energies(const IsingModel& m)
{
    const int n = m.N;
    std::vector<double> e(std::size_t(1) << n);
    for (std::size_t s = 0; s < e.size(); ++s) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) {
            int xj = (s >> j) & 1 ? 1 : -1;
            for (int k = j + 1; k < n; ++k) {
                int xk = (s >> k) & 1 ? 1 : -1;
                v += m.J[j][k] * xj * xk;
            }
        }
        e[s] = v;
    }
    double top = *std::max_element(e.begin(), e.end());
    for (double& v : e) {
        v -= top;
    }
    return e;
}

template <class T>
std::complex<T> horner(const std::vector<double>& c, std::complex<T> w)
{
    std::complex<T> p = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
        p = p * w + T(c[k]);
    }
    return p;
}

std::vector<cplx> polynomial_roots(const std::vector<double>& c)
{
    const int n = int(c.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        comp(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        comp(i, n - 1) = -c[i] / c[n];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<cplx> roots;
    for (int i = 0; i < n; ++i) {
        roots.push_back(es.eigenvalues()[i]);
    }
    // Newton polish in extended precision
    using L = long double;
    std::vector<double> d(n);
    for (int k = 1; k <= n; ++k) {
        d[k - 1] = k * c[k];
    }
    for (auto& r : roots) {
        std::complex<L> w(r.real(), r.imag());
        L res = std::abs(horner<L>(c, w));
        for (int it = 0; it < 6; ++it) {
            std::complex<L> dp = horner<L>(d, w);
            if (std::abs(dp) == 0) {
                break;
            }
            std::complex<L> next = w - horner<L>(c, w) / dp;
            L nres = std::abs(horner<L>(c, next));
            if (!(nres < res)) {
                break;
            }
            w = next;
            res = nres;
        }
        r = cplx(double(w.real()), double(w.imag()));
    }
    return roots;
}

} // namespace

cplx ising_partition(const IsingModel& m, cplx z)
{
    m.validate();
    auto e = energies(m);
    cplx p = 0.0;
    for (std::size_t s = 0; s < e.size(); ++s) {
        double l = 0.0;
        for (int j = 0; j < m.N; ++j) {
            l += ((s >> j) & 1 ? 1.0 : -1.0) * m.lambda[j];
        }
        p += std::exp(e[s] + z * l);
    }
    return p;
}

LeeYangReport leeyang_check(const IsingModel& m, double height)
{
    m.validate();
    LeeYangReport rep;
    if (!m.ferromagnetic()) {
        rep.warnings.push_back("negative coupling: the Lee-Yang property is not guaranteed");
    }
    rep.uniform = m.uniform_field();
    auto e = energies(m);
    if (rep.uniform) {
        const double lam = m.lambda[0];
        if (!(lam > 0.0)) {
            throw std::invalid_argument("uniform field must be positive");
        }
        std::vector<double> c(m.N + 1, 0.0);
        for (std::size_t s = 0; s < e.size(); ++s) {
            c[std::popcount(s)] += std::exp(e[s]);
        }
        rep.coefficients = c;
        rep.w_roots = polynomial_roots(c);
        for (const auto& w : rep.w_roots) {
            rep.z_roots.push_back(std::log(w) / (2.0 * lam));
            rep.max_unit_circle_deviation = std::max(rep.max_unit_circle_deviation, std::abs(std::abs(w) - 1.0));
            double scale = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                scale += std::abs(c[k]) * std::pow(std::abs(w), double(k));
            }
            rep.max_backward_error = std::max(rep.max_backward_error, std::abs(horner<double>(c, w)) / scale);
        }
        rep.all_on_axis = rep.max_unit_circle_deviation < 1e-8;
        return rep;
    }

    // non-uniform field: scan the imaginary axis, count in a rectangle
    double lmax = 0.0;
    for (double l : m.lambda) {
        lmax += l;
    }
    if (!(lmax > 0.0)) {
        throw std::invalid_argument("field weights vanish");
    }
    auto P = [&](cplx z) { return ising_partition(m, z); };
    const double step = kPi / (16.0 * lmax);
    auto axis = [&](double y) { return P(cplx(0.0, y)).real(); };
    // keep the top edge away from axis zeros
    double H = height;
    for (int tries = 0; tries < 50 && std::abs(axis(H)) < 1e-6 * std::abs(axis(0.0)); ++tries) {
        H += 0.37 * step;
    }
    rep.height = H;
    int changes = 0;
    double prev = axis(0.0);
    for (double y = step; y <= H; y += step) {
        double v = axis(std::min(y, H));
        if ((v < 0.0) != (prev < 0.0)) {
            ++changes;
        }
        prev = v;
    }
    rep.imaginary_axis_zeros = changes;

    // argument principle on [-1, 1] x [-H, H]
    std::vector<cplx> corners = {{-1.0, -H}, {1.0, -H}, {1.0, H}, {-1.0, H}, {-1.0, -H}};
    double total = 0.0;
    std::function<double(cplx, cplx, cplx, cplx, int)> seg = [&](cplx a, cplx b, cplx pa, cplx pb, int depth) {
        double d = std::arg(pb / pa);
        if (std::abs(d) < 0.3 || depth > 40) {
            return d;
        }
        cplx mid = 0.5 * (a + b);
        cplx pm = P(mid);
        return seg(a, mid, pa, pm, depth + 1) + seg(mid, b, pm, pb, depth + 1);
    };
    for (int s = 0; s < 4; ++s) {
        cplx a = corners[s], b = corners[s + 1];
        int pieces = 1 + int(std::abs(b - a) / step);
        for (int i = 0; i < pieces; ++i) {
            cplx za = a + (b - a) * (double(i) / pieces), zb = a + (b - a) * (double(i + 1) / pieces);
            total += seg(za, zb, P(za), P(zb), 0);
        }
    }
    rep.rectangle_zeros = int(std::lround(total / (2.0 * kPi)));
    rep.all_on_axis = rep.rectangle_zeros == 2 * rep.imaginary_axis_zeros;
    if (!rep.all_on_axis) {
        rep.warnings.push_back("rectangle count differs from twice the axis count: zeros off the imaginary axis");
    }
    return rep;
}

} // namespace vdlab
