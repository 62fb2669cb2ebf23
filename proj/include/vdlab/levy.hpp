#pragma once

#include "vdlab/special.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vdlab {

/// 50-digit real used where Psi(k) must be known beyond double precision.
using HPReal = boost::multiprecision::cpp_bin_float_50;

struct Atom {
    double r = 0.0;
    double mass = 0.0;
};

/// Density of a Levy measure on (0, inf) with its power behaviour at the
/// ends: density ~ r^exponent_at_zero as r -> 0 and ~ r^exponent_at_infinity
/// as r -> inf (use -infinity for exponential decay, +infinity when the
/// density vanishes near the end).
struct NumericDensity {
    std::function<double(double)> density;
    double exponent_at_zero = 0.0;
    double exponent_at_infinity = -1e300;
    std::string id;
};

enum class MeasureKind { None, Atoms, ClosedForm, NumericDensity };

struct LevyMeasureSpec {
    MeasureKind kind = MeasureKind::None;
    std::vector<Atom> atoms;
    std::string catalog;
    std::vector<std::pair<std::string, double>> params;
    NumericDensity numeric;
};

/// Closed-form data supplied by catalog constructors. Psi is stored
/// directly; the Levy measure is never reconstructed.
struct ClosedFormData {
    std::function<cplx(cplx)> psi;
    std::function<double(double)> psi_real;
    double kappa = 0.0;
    double sigma2 = 0.0;
    double psi_prime_zero = 0.0;
    double theta = -1.0;  // exact root when known, else negative
    std::function<cplx(cplx)> phi;        // optional
    std::function<double(double)> phi_real;  // optional
    std::function<cplx(cplx)> log_w_phi;  // optional
    double phi_at_zero = 0.0;
    double mu_bar_zero = 0.0;  // total mass of the Levy measure of phi
    /// Optional Psi on real u >= 1 in 50 digits; lets the entire-function
    /// series keep its accuracy under heavy cancellation.
    std::function<HPReal(const HPReal&)> psi_hp;
};

/// Laplace exponent of a possibly killed spectrally negative Levy process,
/// Psi(u) = -kappa + a u + sigma2 u^2 / 2 - int (1 - e^{-ur} - ur 1{r<1}) mu(dr).
/// Immutable; the largest root theta is computed at construction.
class LaplaceExponent {
public:
    LaplaceExponent() = default;

    static LaplaceExponent triplet(double kappa, double a, double sigma2, LevyMeasureSpec measure);
    static LaplaceExponent closed_form(std::string name,
                                       std::vector<std::pair<std::string, double>> params,
                                       ClosedFormData data);

    double operator()(double u) const;
    cplx operator()(cplx u) const;

    double theta() const;
    double kappa() const;
    double drift() const;
    double sigma2() const;
    double psi_prime_at_zero() const;
    const LevyMeasureSpec& measure() const;
    const std::string& name() const;
    const std::vector<std::pair<std::string, double>>& params() const;
    std::string describe() const;

    bool has_psi_hp() const;
    HPReal psi_hp(const HPReal& u) const;

    bool has_closed_phi() const;
    cplx closed_phi(cplx u) const;
    double closed_phi(double u) const;
    bool has_closed_log_w_phi() const;
    cplx closed_log_w_phi(cplx z) const;
    /// phi(0) and total mass of the Levy measure of phi (may be +inf).
    double phi_at_zero() const;
    double mu_bar_zero() const;

    bool valid() const { return static_cast<bool>(impl_); }

    struct Impl;

private:
    explicit LaplaceExponent(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend LaplaceExponent tbeta_map(const LaplaceExponent&, double);
    friend LaplaceExponent tbar_map(const LaplaceExponent&, double);
};

struct ExponentClassification {
    bool in_N = false;
    bool in_N_D = false;
    double theta = 0.0;
    double psi_prime_at_zero = 0.0;
    double psi_at_half = 0.0;
    std::string reason;
};

double eval_psi(const LaplaceExponent& psi, double u);
cplx eval_psi(const LaplaceExponent& psi, cplx u);

/// a - int_1^inf r mu(dr); may be -infinity.
double psi_derivative_at_zero(const LaplaceExponent& psi);

/// Doubling + bisection to absolute tolerance 1e-12.
double largest_root_theta(const LaplaceExponent& psi);

ExponentClassification classify(const LaplaceExponent& psi);

/// u/(u+beta) Psi(u+beta).
LaplaceExponent tbeta_map(const LaplaceExponent& psi, double beta);

/// (u-beta)/(u+beta) Psi(u+beta); requires beta >= theta.
LaplaceExponent tbar_map(const LaplaceExponent& psi, double beta);

/// Tail of the exponentially tilted measure,
/// int_r^inf e^{theta (r - s)} mu(ds), for Atoms / NumericDensity specs.
double mu_bar_theta(const LaplaceExponent& psi, double r);

/// int (1 - e^{-ur} - ur 1{r<1}) mu(dr) for Atoms / NumericDensity specs.
cplx levy_integral(const LevyMeasureSpec& m, cplx u);

} // namespace vdlab
