#pragma once

#include "vdlab/special.hpp"

#include <cstdint>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdlab {

/// Zeros z_k = kappa (k + shift)^p for every k beyond the explicit list
/// (k counts from 1 across the whole sequence).
struct LPTailRule {
    double kappa = 1.0;
    double p = 1.0;
    double shift = 0.0;
};

/// phi(z) = e^{-c2 z^2} prod_k (1 - z^2/z_k^2), an even Laguerre-Polya function.
struct LPEvenFunction {
    double c2 = 0.0;
    std::vector<double> zeros;
    std::optional<LPTailRule> tail;

    /// Throws std::invalid_argument on c2 < 0, non-positive zeros or a tail
    /// rule with p <= 1/2 or a non-positive first tail zero.
    void validate() const;
    /// k-th zero, k >= 1.
    double zero(std::size_t k) const;
    /// sum of z_k^{-2}.
    double inverse_square_sum() const;

    /// cos z as an LP function: zeros (2k-1) pi/2.
    static LPEvenFunction cosine();
};

/// Sum over k > K of z_k^{-2m} for the tail rule (Euler-Maclaurin).
double lp_tail_power_sum(const LPTailRule& rule, std::size_t K, int m);

std::complex<double> eval_lp(const LPEvenFunction& f, std::complex<double> z);
double eval_lp(const LPEvenFunction& f, double x);

/// 1/phi(it) = e^{-c2 t^2} prod (1 + t^2/z_k^2)^{-1}.
double reciprocal_cf(const LPEvenFunction& f, double t);

/// det [f(x_j - y_k)] for strictly increasing grids of equal length n <= 5.
double pf_determinant_test(const std::function<double(double)>& density, const std::vector<double>& xs,
                           const std::vector<double>& ys);

struct PFScan {
    double min_det = 0.0;
    std::vector<double> xs, ys;  // grids attaining the minimum
    int draws = 0;
};

/// Minimum of pf_determinant_test over random sorted grids drawn uniformly
/// from [-half_width, half_width].
PFScan pf_scan(const std::function<double(double)>& density, int n, int draws, std::uint64_t seed,
               double half_width = 3.0);

/// Counter-based random source: the i-th draw of a stream is a hash of
/// (seed, stream, i), so draws are reproducible and independent of
/// scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}
    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform on (0, 1).
    double uniform(std::uint64_t counter) const;
    CounterRng split(std::uint64_t stream) const { return CounterRng(seed_, stream_ * 0x9E3779B97F4A7C15ULL + stream + 1); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

struct NZSample {
    std::vector<double> draws;
    double mean = 0.0;
    double variance = 0.0;
    double target_variance = 0.0;
    int explicit_terms = 0;
    double gaussian_remainder_variance = 0.0;

    double mean_standard_error() const;
    /// Standard error of the sample variance from the fourth central moment.
    double variance_standard_error() const;
    double empirical_cf(double t) const;
    double cf_standard_error(double t) const;
};

/// Draws X = sqrt(2 c2) N + sum_k Z_k/z_k with Z_k standard Laplace. Zeros
/// of a tail rule are drawn explicitly until the remaining variance falls
/// below 1e-3; the remainder is a Gaussian of exactly that variance.
NZSample simulate_nz(const LPEvenFunction& f, int samples, std::uint64_t seed = 1);

/// Symmetric density on [-support, support] (support may be +inf).
struct SymmetricDensity {
    std::function<double(double)> f;
    double support = std::numeric_limits<double>::infinity();
    std::string label;
};

/// int e^{itx} f(x) dx as 2 int_0^support cos(tx) f(x) dx, to about 1e-9.
double cf_from_density(const SymmetricDensity& d, double t);
double total_mass(const SymmetricDensity& d);

/// Raised when int e^{lambda x^2} f(x) dx is judged infinite.
class TiltDivergence : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Normalized density e^{lambda x^2} f(x)/Z_lambda.
SymmetricDensity tilt_density(const SymmetricDensity& d, double lambda);
double tilt_cf(const SymmetricDensity& d, double lambda, double t);

/// f(x) = K x^{2m} e^{-alpha x^4 - beta x^2} prod ((1 + x^2/a_k^2) e^{-x^2/a_k^2}).
class NewmanDensity {
public:
    NewmanDensity(int m, double alpha, double beta, std::vector<double> a);
    double operator()(double x) const;
    double K() const { return K_; }
    /// Constraint findings; empty when the parameters meet them.
    const std::vector<std::string>& advisories() const { return advisories_; }
    SymmetricDensity as_density() const;

private:
    double unnormalized(double x) const;
    int m_;
    double alpha_, beta_;
    std::vector<double> a_;
    double K_ = 1.0;
    std::vector<std::string> advisories_;
};

/// Ising model on {-1, 1}^N with weight e^{sum_{j<k} J_jk x_j x_k}.
struct IsingModel {
    int N = 1;
    std::vector<std::vector<double>> J;  // symmetric N x N, diagonal ignored
    std::vector<double> lambda;          // field weights, size N
    /// Throws on N outside [1, 12] or malformed sizes.
    void validate() const;
    bool ferromagnetic() const;
    bool uniform_field() const;
};

struct LeeYangReport {
    bool uniform = true;
    /// Fugacity polynomial coefficients in w = e^{2 lambda z}, ascending.
    std::vector<double> coefficients;
    std::vector<std::complex<double>> w_roots;
    std::vector<std::complex<double>> z_roots;  // principal branch
    double max_unit_circle_deviation = 0.0;
    double max_backward_error = 0.0;
    // non-uniform fields
    double height = 0.0;
    int imaginary_axis_zeros = 0;  // zeros on i(0, height)
    int rectangle_zeros = 0;       // zeros in [-1, 1] x [-height, height]
    bool all_on_axis = true;
    std::vector<std::string> warnings;
};

/// Partition function P(z) = sum_x mu(x) e^{z sum_j lambda_j x_j}.
std::complex<double> ising_partition(const IsingModel& m, std::complex<double> z);

LeeYangReport leeyang_check(const IsingModel& m, double height = 20.0);

} // namespace vdlab
