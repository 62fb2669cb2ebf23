#include "vdlab/bernstein.hpp"

#include "vdlab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vdlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kThetaBand = 1e-6;

// Taylor coefficients c_0..c_{M-1} of f around p from M samples on |u-p|=r.
std::vector<cplx> cauchy_coefficients(const std::function<cplx(cplx)>& f, cplx p, double r, int m)
{
    std::vector<cplx> samples(m);
    for (int j = 0; j < m; ++j) {
        double t = 2.0 * std::numbers::pi * j / m;
        samples[j] = f(p + std::polar(r, t));
    }
    std::vector<cplx> c(m);
    for (int k = 0; k < m; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < m; ++j) {
            s += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * k * j / m);
        }
        c[k] = s / double(m) / std::pow(r, k);
    }
    return c;
}

// L', L''', L^(5) from Taylor coefficients.
std::vector<cplx> odd_derivatives(const std::vector<cplx>& c)
{
    return {c[1], 6.0 * c[3], 120.0 * c[5]};
}

} // namespace

BernsteinFactor::BernsteinFactor(LaplaceExponent parent, double theta)
    : parent_(std::move(parent)), theta_(theta)
{
    label_ = parent_.describe();
    half_sigma2_ = 0.5 * parent_.sigma2();
    if (parent_.has_closed_phi()) {
        nu_theta_ = parent_.phi_at_zero();
    } else if (theta_ > 0.0) {
        nu_theta_ = parent_.kappa() / theta_;
    } else {
        nu_theta_ = parent_.psi_prime_at_zero();
    }
    const LaplaceExponent& p = parent_;
    auto d1 = [&p](double u) { return complex_step_derivative([&p](cplx v) { return p(v); }, u); };
    psi1_ = d1(theta_);
    double h = 1e-4 * std::max(1.0, theta_);
    psi2_ = theta_ > h ? (d1(theta_ + h) - d1(theta_ - h)) / (2.0 * h) : (d1(theta_ + h) - psi1_) / h;
}

BernsteinFactor BernsteinFactor::from_function(std::function<cplx(cplx)> phi, std::string label,
                                               double phi_at_zero)
{
    BernsteinFactor b;
    b.direct_ = std::move(phi);
    b.label_ = std::move(label);
    b.nu_theta_ = phi_at_zero;
    return b;
}

cplx BernsteinFactor::operator()(cplx u) const
{
    if (direct_) {
        return direct_(u);
    }
    if (parent_.has_closed_phi()) {
        return parent_.closed_phi(u);
    }
    cplx d = u - theta_;
    if (std::abs(d) > kThetaBand) {
        return parent_(u) / d;
    }
    return psi1_ + 0.5 * psi2_ * d;
}

double BernsteinFactor::operator()(double u) const
{
    if (direct_) {
        return direct_(cplx(u, 0.0)).real();
    }
    if (parent_.has_closed_phi()) {
        return parent_.closed_phi(u);
    }
    double d = u - theta_;
    if (std::abs(d) > kThetaBand) {
        return parent_(u) / d;
    }
    return psi1_ + 0.5 * psi2_ * d;
}

double BernsteinFactor::derivative(double u) const
{
    return complex_step_derivative([this](cplx v) { return (*this)(v); }, u);
}

double BernsteinFactor::tail(double r) const
{
    if (!parent_.valid()) {
        throw std::invalid_argument("tail requires a parent exponent");
    }
    return mu_bar_theta(parent_, r);
}

bool BernsteinFactor::has_closed_log_w() const
{
    return parent_.valid() && parent_.has_closed_log_w_phi();
}

cplx BernsteinFactor::closed_log_w(cplx z) const { return parent_.closed_log_w_phi(z); }

double BernsteinFactor::mu_bar_zero() const
{
    return parent_.valid() ? parent_.mu_bar_zero() : kNaN;
}

std::pair<double, BernsteinFactor> wiener_hopf(const LaplaceExponent& psi)
{
    double th = psi.theta();
    return {th, BernsteinFactor(psi, th)};
}

double log_w_phi_integer(const BernsteinFactor& phi, int n)
{
    if (n < 1) {
        throw std::invalid_argument("W_phi(n) needs n >= 1");
    }
    CompensatedSum<double> s;
    for (int k = 1; k < n; ++k) {
        s.add(std::log(phi(double(k))));
    }
    return s.value();
}

double w_phi_integer(const BernsteinFactor& phi, int n)
{
    if (n < 1) {
        throw std::invalid_argument("W_phi(n) needs n >= 1");
    }
    double w = 1.0;
    for (int k = 1; k < n; ++k) {
        w *= phi(double(k));
        if (!(std::abs(w) < 1e300)) {
            return std::exp(log_w_phi_integer(phi, n));
        }
    }
    return w;
}

double gamma_phi(const BernsteinFactor& phi)
{
    constexpr int kMaxLevel = 20;
    constexpr int kCols = 6;
    std::vector<std::vector<double>> table;
    CompensatedSum<double> sum;
    int k = 0;
    double prev_best = kNaN;
    for (int j = 1; j <= kMaxLevel; ++j) {
        int n = 1 << j;
        while (k < n) {
            ++k;
            sum.add(phi.derivative(double(k)) / phi(double(k)));
        }
        std::vector<double> row{sum.value() - std::log(phi(double(n)))};
        int cols = std::min<int>(kCols, table.size() + 1);
        for (int m = 1; m < cols; ++m) {
            double f = std::ldexp(1.0, m) - 1.0;
            row.push_back(row[m - 1] + (row[m - 1] - table.back()[m - 1]) / f);
        }
        table.push_back(row);
        double best = row.back();
        if (j >= 5 && std::abs(best - prev_best) < 1e-9) {
            return best;
        }
        prev_best = best;
    }
    const auto& last = table.back();
    throw ConvergenceError("gamma_phi did not converge by n = 2^20", last.back(),
                           table[table.size() - 2].back());
}

BernsteinGammaEvaluator::BernsteinGammaEvaluator(BernsteinFactor phi, int shift)
    : phi_(std::move(phi)), shift_(shift)
{
    if (phi_.has_closed_log_w()) {
        return;
    }
    CompensatedSum<cplx> s;
    for (int k = 1; k < shift_; ++k) {
        s.add(log_phi(cplx(k, 0.0)));
    }
    lw_shift_ = s.value();
    auto c = cauchy_coefficients([this](cplx u) { return log_phi(u); }, cplx(shift_, 0.0), 0.5 * shift_, 32);
    odd_derivs_ = odd_derivatives(c);
}

cplx BernsteinGammaEvaluator::log_phi(cplx u) const
{
    cplx v = phi_(u);
    if (std::abs(v) == 0.0) {
        throw std::domain_error("phi vanishes on the evaluation path");
    }
    return std::log(v);
}

cplx BernsteinGammaEvaluator::em_tail(cplx z) const
{
    const double n = shift_;
    const cplx end = n + z;
    // integral of L along [N, N + z]
    int panels = 1 + int(std::abs(z) / 8.0);
    const GaussRule& g = gauss_legendre(16);
    cplx integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        double s0 = double(p) / panels, s1 = double(p + 1) / panels;
        double c = 0.5 * (s0 + s1), h = 0.5 * (s1 - s0);
        for (int j = 0; j < 16; ++j) {
            integral += g.w[j] * h * log_phi(n + (c + h * g.x[j]) * z);
        }
    }
    integral *= z;
    auto c = cauchy_coefficients([this](cplx u) { return log_phi(u); }, end, 0.5 * n, 32);
    auto d_end = odd_derivatives(c);
    // c[0] is L(N + z) up to aliasing of order 2^-32
    cplx l_end = log_phi(end);
    cplx l_start = log_phi(cplx(n, 0.0));
    static const double kB[3] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0};
    cplx r = integral - 0.5 * (l_end - l_start);
    for (int j = 0; j < 3; ++j) {
        r += kB[j] * (d_end[j] - odd_derivs_[j]);
    }
    return r;
}

cplx BernsteinGammaEvaluator::log_w(cplx z) const
{
    if (!(z.real() > 0.0)) {
        throw std::domain_error("W_phi evaluation requires Re z > 0");
    }
    if (phi_.has_closed_log_w()) {
        return phi_.closed_log_w(z);
    }
    CompensatedSum<cplx> s;
    s.add(lw_shift_);
    for (int k = 0; k < shift_; ++k) {
        s.add(-log_phi(z + double(k)));
    }
    s.add(em_tail(z));
    return s.value();
}

double BernsteinGammaEvaluator::gamma_phi() const { return vdlab::gamma_phi(phi_); }

cplx w_phi_complex(const BernsteinGammaEvaluator& eval, cplx z) { return eval.w(z); }

cplx w_phi_weierstrass(const BernsteinFactor& phi, double gamma, cplx z, int terms)
{
    CompensatedSum<cplx> s;
    s.add(-gamma * z);
    s.add(-std::log(phi(z)));
    for (int k = 1; k <= terms; ++k) {
        double pk = phi(double(k));
        s.add(std::log(pk) - std::log(phi(z + double(k))) + z * (phi.derivative(double(k)) / pk));
    }
    return std::exp(s.value());
}

double moments_exp_functional(const BernsteinFactor& phi, int n)
{
    if (n < 0) {
        throw std::invalid_argument("moment order must be >= 0");
    }
    return std::exp(std::lgamma(n + 1.0) - log_w_phi_integer(phi, n + 1));
}

} // namespace vdlab
