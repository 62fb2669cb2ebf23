#pragma once

#include <string>
#include <vector>

namespace vdlab {

/// theta_0(x) = sum_{n >= 1} e^{-pi n^2 x}, x > 0.
double theta0(double x);

/// Phi(x) = sum (4 pi^2 n^4 e^{9x/2} - 6 pi n^2 e^{5x/2}) e^{-pi n^2 e^{2x}},
/// summed directly for any real x (no use of evenness).
double phi_capital(double x);
/// log Phi(x), finite where Phi underflows (e.g. Phi(3) ~ e^{-1250}).
double log_phi_capital(double x);

struct XiQuadrature {
    double x_max = 4.0;  // Phi(4) < 1e-1000
    double panel = 0.125;
    int nodes = 16;
};

/// xi(t) = int e^{itx} Phi(x) dx as 2 int_0^X cos(tx) Phi(x) dx.
double xi_fourier(double t, XiQuadrature q = {});
/// Real part of int_{-X}^{X} e^{itx} Phi(x) dx with Phi summed on both sides.
double xi_two_sided(double t, XiQuadrature q = {});

/// Roots of xi_fourier in (a, b) located by a uniform scan and bisection.
std::vector<double> xi_sign_changes(double a, double b, int steps = 400);

struct MomentValue {
    double value = 0.0;
    double error = 0.0;  // difference between two panel resolutions
};

/// F(n) = int_1^inf (log x)^n x^{-3/4} theta_0(x) dx, 0 <= n <= 64, as
/// int_0^inf y^n e^{y/4} theta_0(e^y) dy accumulated in double-double.
MomentValue f_moment(int n);

/// Coefficients of xi(t) = sum gamma(n) t^{2n}/n! and the candidate
/// Bernstein values.
///
/// gamma(n) = (-1)^n n!/(2n)! (32 C(2n,2) F(2n-2) - F(2n)) / 2^{2n+2} for n >= 1
/// and gamma(0) = 1/2 - F(0)/4; these are the even moments of Phi.
/// phi_derived(n+1) = -gamma(n)/gamma(n+1) is what J = xi/xi(0) with
/// Psi(u) = u phi(u) forces. phi_printed(n+1) = -G(2n)/(8(n+1) G(2n+2)) with
/// G(2n) = 64 n (2n-1) F(2n-2)/F(2n) - 1 is kept for comparison.
struct XiCoefficients {
    int n_max = 0;
    std::vector<double> F, F_err;            // index 0..2 n_max + 2
    std::vector<double> gamma, gamma_err;    // index 0..n_max
    std::vector<double> gamma_cancellation;  // (a + b)/|a - b| for a - b in gamma
    std::vector<double> gamma_printed;       // n!/(2n)! (...)/2^{2n-1}
    std::vector<double> G;                   // G[n] = G(2n), n = 0..n_max + 1 (G(0) = -1)
    std::vector<double> phi_derived;         // phi_derived[n] = phi(n+1), n = 0..n_max-1
    std::vector<double> phi_printed;         // phi_printed[n] = phi(n+1), n = 0..n_max-1
};

/// n_max <= 30 (F is needed up to index 2 n_max + 2 <= 62). F moments are
/// computed on `threads` workers (0 = hardware concurrency).
XiCoefficients xi_coefficients(int n_max, int threads = 0);

/// sum_{n <= N} gamma(n) t^{2n}/n!.
double theta_series(const XiCoefficients& c, double t, int N);

struct RoundTrip {
    std::vector<double> reconstructed;  // gamma(0) (-1)^n / W(n+1)
    double max_relative_error = 0.0;
};

/// Rebuilds gamma(n) from 1/W(n+1) = prod_{k <= n} 1/phi(k) and gamma(0).
RoundTrip candidate_round_trip(const XiCoefficients& c, const std::vector<double>& phi);

struct BernsteinCondition {
    std::string name;
    bool pass = true;
    int first_violation = -1;  // argument k of the first failing value, -1 if none
    double worst = 0.0;        // most negative signed value met
};

struct BernsteinBattery {
    std::vector<BernsteinCondition> conditions;
    bool all_pass() const;
};

/// phi(k) >= 0, Delta phi >= 0 and (-1)^{j-1} Delta^j phi >= 0 for j = 2..4 on
/// values phi(1..M), M >= 4; a relative slack of 1e-12 absorbs rounding.
BernsteinBattery necessary_bernstein_checks(const std::vector<double>& phi_values);

} // namespace vdlab
