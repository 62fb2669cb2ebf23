#pragma once

#include "vdlab/levy.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace vdlab {

/// Series value with its truncation bound.
struct SeriesValue {
    cplx value;
    double tail_bound = 0.0;
    /// max |partial sum| / |value| exceeded 1e12: trailing digits are unreliable.
    bool cancellation = false;
    int terms = 0;
};

/// J_Psi(z) = sum (-1)^n z^{2n}/W_Psi(n+1) and its companion
/// I_Psi(z) = J_Psi(iz), with W_Psi(n+1) = Psi(1)...Psi(n).
///
/// Psi(k) is memoized in a shared, lock-protected prefix cache, so copies of
/// a pair share the cache and may be used from several threads.
class EntirePair {
public:
    explicit EntirePair(LaplaceExponent psi, double eps = 1e-15);

    const LaplaceExponent& psi() const { return psi_; }
    double eps() const { return eps_; }

    /// Psi(k) for k = 1..n (index 0 holds Psi(0)); snapshot of the cache.
    std::shared_ptr<const std::vector<double>> psi_values(int n) const;
    /// Same values in double-double. When the exponent supplies Psi in
    /// extended precision these carry about 32 digits; otherwise they are
    /// the double values.
    std::shared_ptr<const std::vector<DD>> psi_values_dd(int n) const;
    /// 1/W_Psi(n+1).
    double coeff(int n) const;
    double log_w_psi(int n) const;  // log W_Psi(n+1)

private:
    struct Cache {
        std::mutex mu;
        std::shared_ptr<const std::vector<double>> values;
        std::shared_ptr<const std::vector<DD>> dd;
    };
    void extend(int n) const;  // caller holds the cache lock
    LaplaceExponent psi_;
    double eps_;
    std::shared_ptr<Cache> cache_;
};

SeriesValue eval_J_full(const EntirePair& pair, cplx z);
cplx eval_J(const EntirePair& pair, cplx z);
double eval_J(const EntirePair& pair, double t);
/// Derivative by the termwise differentiated series.
cplx eval_J_prime(const EntirePair& pair, cplx z);

SeriesValue eval_I_full(const EntirePair& pair, cplx z);
cplx eval_I(const EntirePair& pair, cplx z);
/// Positive series on the real axis.
double eval_I(const EntirePair& pair, double t);
/// log I_Psi(t) for real t, safe against overflow.
double log_eval_I(const EntirePair& pair, double t);

/// F_Psi(t) = J_Psi(t)/I_Psi(t).
double eval_F(const EntirePair& pair, double t);

/// phi_Psi(u) = log I_Psi(sqrt u).
double phi_psi(const EntirePair& pair, double u);

/// p = 1: pair of T_k Psi. p = 2: pair of (Tbar_{1/2})^{2k} Psi (needs theta <= 1/2).
EntirePair lukacs_map(const EntirePair& pair, int p, int k);

/// Direct definition t^{p-2} f^{(p)}(t)/f^{(2)}(0) applied once, by
/// central differences; test oracle for lukacs_map.
double lukacs_finite_difference(const std::function<double(double)>& f, int p, double t, double h = 1e-3);

struct OrderTypeEstimate {
    double rho = 1.0;
    double lower_index = 2.0;
    double type_lower_bound = 0.0;
    double window_spread = 0.0;
    bool slowly_varying_flag = false;
};

OrderTypeEstimate order_estimate(const EntirePair& pair);

struct RealZeroScan {
    std::vector<double> zeros;
    std::vector<std::string> warnings;
};

/// Positive real zeros of J_Psi in (0, R).
RealZeroScan real_zeros(const EntirePair& pair, double R);

struct DiskCount {
    int count = 0;
    double raw = 0.0;
    double radius = 0.0;
};

/// Zeros of J_Psi in |z| < R with multiplicity, by the argument principle.
DiskCount count_zeros_disk(const EntirePair& pair, double R);

enum class ZeroClass { AllRealUpToR, NonRealDetected };

struct ZeroReport {
    double radius = 0.0;
    std::vector<double> real_zeros;
    int disk_count = 0;
    ZeroClass classification = ZeroClass::AllRealUpToR;
    std::vector<std::string> warnings;
};

ZeroReport zero_report(const EntirePair& pair, double R);

std::string to_string(ZeroClass c);

} // namespace vdlab
