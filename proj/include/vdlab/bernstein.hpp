#pragma once

#include "vdlab/levy.hpp"

#include <functional>
#include <stdexcept>

namespace vdlab {

/// Wiener-Hopf cofactor phi of Psi(u) = (u - theta) phi(u).
///
/// For catalog exponents phi is the stored closed form; otherwise it is
/// Psi(u)/(u - theta), switching to a first-order Taylor expansion at theta
/// within 1e-6 of the root.
class BernsteinFactor {
public:
    BernsteinFactor() = default;
    BernsteinFactor(LaplaceExponent parent, double theta);

    /// Bernstein function given directly (no parent exponent); used for
    /// tests and the exploratory candidate sequences.
    static BernsteinFactor from_function(std::function<cplx(cplx)> phi, std::string label,
                                         double phi_at_zero = 0.0);

    cplx operator()(cplx u) const;
    double operator()(double u) const;
    /// phi'(u) by the complex-step rule.
    double derivative(double u) const;

    double theta() const { return theta_; }
    /// Constant term: kappa/theta if theta > 0, else Psi'(0+).
    double nu_theta() const { return nu_theta_; }
    double half_sigma2() const { return half_sigma2_; }
    /// mu_bar_theta(r) for atom and density measures; throws otherwise.
    double tail(double r) const;
    const LaplaceExponent& parent() const { return parent_; }
    bool has_parent() const { return parent_.valid(); }
    bool has_closed_log_w() const;
    cplx closed_log_w(cplx z) const;
    /// Total mass of the Levy measure of phi (may be +inf, NaN if unknown).
    double mu_bar_zero() const;
    const std::string& label() const { return label_; }

private:
    LaplaceExponent parent_;
    std::function<cplx(cplx)> direct_;
    std::string label_;
    double theta_ = 0.0;
    double nu_theta_ = 0.0;
    double half_sigma2_ = 0.0;
    double psi1_ = 0.0;  // Psi'(theta)
    double psi2_ = 0.0;  // Psi''(theta)
};

/// Returns (theta, phi).
std::pair<double, BernsteinFactor> wiener_hopf(const LaplaceExponent& psi);

/// W_phi(n) = prod_{k=1}^{n-1} phi(k); W_phi(1) = 1.
double w_phi_integer(const BernsteinFactor& phi, int n);
double log_w_phi_integer(const BernsteinFactor& phi, int n);

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last, double previous)
        : std::runtime_error(what), last_(last), previous_(previous) {}
    double last() const { return last_; }
    double previous() const { return previous_; }

private:
    double last_, previous_;
};

/// gamma_phi = lim (sum_{k<=n} phi'(k)/phi(k) - log phi(n)), Richardson
/// extrapolated over n = 2^j. Throws ConvergenceError past n = 2^20.
double gamma_phi(const BernsteinFactor& phi);

/// Evaluates W_phi on Re z > 0.
///
/// Closed forms are used when the catalog provides one. Otherwise the
/// functional equation shifts z by N and the remaining ratio
/// W(N + z)/W(N) is taken from the Euler-Maclaurin expansion of
/// log phi, with the integral along [N, N + z] done by Gauss-Legendre and
/// the odd derivatives by a Cauchy integral.
class BernsteinGammaEvaluator {
public:
    explicit BernsteinGammaEvaluator(BernsteinFactor phi, int shift = 32);

    cplx log_w(cplx z) const;
    cplx w(cplx z) const { return std::exp(log_w(z)); }
    const BernsteinFactor& phi() const { return phi_; }
    /// Computed on first request.
    double gamma_phi() const;

private:
    cplx log_phi(cplx u) const;
    cplx em_tail(cplx z) const;

    BernsteinFactor phi_;
    int shift_;
    cplx lw_shift_;                  // log W(N)
    std::vector<cplx> odd_derivs_;   // L', L''', L^(5) at N
};

cplx w_phi_complex(const BernsteinGammaEvaluator& eval, cplx z);

/// The truncated Weierstrass product with N factors; slow reference used
/// in tests.
cplx w_phi_weierstrass(const BernsteinFactor& phi, double gamma, cplx z, int terms);

/// E[I_phi^n] = n!/W_phi(n+1).
double moments_exp_functional(const BernsteinFactor& phi, int n);

} // namespace vdlab
