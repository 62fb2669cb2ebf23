#pragma once

#include "vdlab/bernstein.hpp"
#include "vdlab/entire.hpp"
#include "vdlab/levy.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace vdlab {

/// Symmetric law on [-2, 2] with density proportional to (4 - x^2)^{-theta-1/2};
/// at theta = 1/2 it is the two-point law (delta_2 + delta_{-2})/2.
double arcsine_density(double theta, double x);
/// E[J^{2n}] = Gamma(1-theta)(2n)!/(Gamma(n+1-theta) n!), 4^n at theta = 1/2.
double arcsine_moment(double theta, int n);

/// E[D^{2n}] for D = sqrt(I_phi) J_theta, Psi(u) = (u - theta) phi(u).
double moment_D(const LaplaceExponent& psi, int n);

enum class Provenance { MellinBarnes, FourierInversion, ClosedForm };
std::string to_string(Provenance p);

/// Sampled density stored as quadrature nodes, weights and values.
///
/// With symmetric = true the nodes cover [0, support_hi] and stand for the
/// even extension to the whole line; otherwise they cover the support.
/// A purely atomic law keeps its atoms and no nodes.
struct DensityGrid {
    std::vector<double> x, w, f;
    std::vector<Atom> atoms;  // (location, mass)
    double support_lo = 0.0;
    double support_hi = 0.0;
    bool symmetric = true;
    Provenance provenance = Provenance::ClosedForm;
    double normalization_residual = 0.0;
    double min_value = 0.0;
    std::vector<std::string> notes;

    /// Integral of g against the law.
    double expect(const std::function<double(double)>& g) const;
    double total_mass() const;
    double moment(int k) const;
    double cf(double t) const;
};

/// Builds a grid for a given density on [lo, hi] with composite
/// Gauss-Legendre panels.
DensityGrid density_grid_from_function(const std::function<double(double)>& density, double lo, double hi,
                                       int panels, bool symmetric, Provenance prov = Provenance::ClosedForm);

/// Integration line Re z = a; cutoff and step are auto-tuned when left at 0.
struct MellinContour {
    double a = 0.0;       // 0 selects 1 + order
    double cutoff = 0.0;  // height B
    double step = 0.0;    // panel width along the line
};

/// Mellin-Barnes evaluation of the density of D = sqrt(I_phi) J_theta.
///
/// For order n >= 1 the integral with the factor Gamma(z)/Gamma(z-n) is
/// returned as written; it equals x * f_{D^2}^{(n)}(x^2).
///
/// sigma^2 > 0: the integrand is a slowly decaying amplitude times a
/// linear phase, integrated with Ooura's Fourier rules; near the support
/// edge 2 sqrt(2)/sigma the density follows the model
/// delta^{q-1}(c0 + c1 delta) + d0, fitted from three evaluations.
/// sigma^2 = 0: the amplitude decays exponentially and is tabulated once on
/// Gauss panels along the contour, then reused for every x.
class MellinDensity {
public:
    explicit MellinDensity(const LaplaceExponent& psi, int order = 0, MellinContour contour = {});
    ~MellinDensity();
    MellinDensity(MellinDensity&&) noexcept;
    MellinDensity& operator=(MellinDensity&&) noexcept;

    /// Value at x (order 0 extends to x <= 0 by symmetry; order >= 1 needs x > 0).
    double operator()(double x) const;
    /// The contour integral itself at x > 0: no edge model, no support
    /// cutoff. Beyond the support edge it should vanish.
    double integral_value(double x) const;
    /// lim_{x -> 0} f(x) = Gamma(1-theta)/(2 W_phi(1/2) Gamma(1/2-theta)).
    double limit_at_zero() const;
    /// 2 sqrt(2)/sigma, +inf when sigma = 0.
    double support_edge() const;
    /// Decay exponent q of the integrand amplitude |b|^{-q} (sigma > 0).
    double edge_exponent() const;
    /// True when D is the two-point law (D^2 constant).
    bool atomic() const;
    double atom_location() const;
    /// Edge model parameters; active only for order 0 with sigma > 0.
    double model_switch() const;
    double model_value(double delta) const;
    const std::vector<std::string>& warnings() const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

double density_D_mellin(const LaplaceExponent& psi, double x, int order = 0, MellinContour contour = {});

struct DensityGridOptions {
    int nodes_per_panel = 16;
};

/// Density of D on a quadrature grid (symmetric, nodes on [0, edge)).
DensityGrid density_D_grid(const LaplaceExponent& psi, DensityGridOptions opt = {});

struct FourierGridSpec {
    double x_max = 0.0;  // 0 selects from the observed tail
    double panel_width = 0.5;
    int nodes_per_panel = 16;
};

/// Density of Dbar, whose characteristic function is 1/I_Psi, by the
/// cosine transform (1/pi) int_0^inf cos(tx)/I_Psi(t) dt on a trapezoid rule
/// with step halving until the sup-change is below 1e-7.
DensityGrid density_Dbar_fourier(const LaplaceExponent& psi, FourierGridSpec spec = {});

/// Lambda_I f(t) = int f(x t) F_I(dx).
double markov_mult_operator(const DensityGrid& law, const std::function<double(double)>& f, double t);
double markov_mult_operator(const std::vector<Atom>& law, const std::function<double(double)>& f, double t);

/// Minimum eigenvalue of the Gram matrix [cf(t_j - t_k)].
double bochner_psd_test(const std::function<double(double)>& cf, const std::vector<double>& grid);

struct CheckResult {
    std::string check;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct PairTolerances {
    double structural = 1e-12;
    double psd = 1e-8;
    double nonnegativity = 1e-7;
    double moments = 1e-5;
    double roundtrip = 1e-5;
    double normalization = 1e-6;
    double support = 1e-7;
};

struct PairGrids {
    int psd_points = 32;
    double psd_half_width = 5.0;
    unsigned long long seed = 12345;
    double structural_t_max = 5.0;
    double roundtrip_t_max = 3.0;
    int max_moment = 4;
};

struct PairReport {
    std::string exponent;
    bool in_N_D = false;
    std::string reason;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Runs every pair check; failures inside a check are recorded, never thrown.
PairReport verify_pair(const LaplaceExponent& psi, PairGrids grids = {}, PairTolerances tol = {});

} // namespace vdlab
