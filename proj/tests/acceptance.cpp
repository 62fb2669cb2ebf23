// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "vdlab/bernstein.hpp"
#include "vdlab/catalog.hpp"
#include "vdlab/dantzig.hpp"
#include "vdlab/entire.hpp"
#include "vdlab/levy.hpp"
#include "vdlab/lp.hpp"
#include "vdlab/xi.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace vdlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

// Gamma(beta) E_{alpha,beta}(-t^2) summed term by term in 50 digits.
double ml_oracle(double alpha, double beta, double t)
{
    using R = boost::multiprecision::cpp_bin_float_50;
    const R w = -R(t) * t;
    R s = 0, p = 1;
    for (int n = 0; n < 2000; ++n) {
        R term = p / boost::math::tgamma(R(alpha) * n + beta);
        s += term;
        if (n > 5 && abs(term) < R(1e-40)) {
            break;
        }
        p *= w;
    }
    return static_cast<double>(s * boost::math::tgamma(R(beta)));
}

Outcome criterion1()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
        EntirePair p(bessel(nu));
        for (int i = 0; i <= 1000; ++i) {
            double t = 0.01 * i;
            double ref = t == 0.0 ? 1.0
                                  : std::tgamma(nu + 1.0) * std::pow(t, -nu) * boost::math::cyl_bessel_j(nu, 2.0 * t);
            worst = std::max(worst, std::abs(eval_J(p, t) - ref));
        }
    }
    double secs = seconds_since(t0);
    o.detail << "sup error " << sci(worst) << " over nu in {-0.5,0,0.5,1,2.5}, t in [0,10]; " << secs << " s";
    o.require(worst < 1e-9, "sup error < 1e-9");
    o.require(secs < 1.0, "runtime < 1 s");
    return o;
}

Outcome criterion2()
{
    Outcome o;
    EntirePair p(mittag_leffler(1.5, 1.2));
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        double t = 0.01 * i;
        worst = std::max(worst, std::abs(eval_J(p, t) - ml_oracle(1.5, 1.2, t)));
    }
    o.detail << "sup |J - Gamma(1.2) E_{1.5,1.2}(-t^2)| on [0,5] = " << sci(worst);
    o.require(worst < 1e-8, "error < 1e-8");
    return o;
}

Outcome criterion3()
{
    Outcome o;
    EntirePair c(cosine_exponent()), s(sinc_exponent());
    double ec = 0.0, es = 0.0;
    for (int i = 0; i <= 500; ++i) {
        double t = 0.01 * i;
        ec = std::max({ec, std::abs(eval_J(c, t) - std::cos(t)), std::abs(1.0 / eval_I(c, t) - 1.0 / std::cosh(t))});
        double sinc = t == 0.0 ? 1.0 : std::sin(t) / t;
        double tsh = t == 0.0 ? 1.0 : t / std::sinh(t);
        es = std::max({es, std::abs(eval_J(s, t) - sinc), std::abs(1.0 / eval_I(s, t) - tsh)});
    }
    DensityGrid gc = density_Dbar_fourier(cosine_exponent());
    DensityGrid gs = density_Dbar_fourier(sinc_exponent());
    double dc = 0.0, ds = 0.0;
    for (std::size_t i = 0; i < gc.x.size(); ++i) {
        dc = std::max(dc, std::abs(gc.f[i] - 0.5 / std::cosh(0.5 * kPi * gc.x[i])));
    }
    for (std::size_t i = 0; i < gs.x.size(); ++i) {
        double sech = 1.0 / std::cosh(0.5 * kPi * gs.x[i]);
        ds = std::max(ds, std::abs(gs.f[i] - 0.25 * kPi * sech * sech));
    }
    o.detail << "cosine: [cos, 1/cosh] " << sci(ec) << ", density vs 1/(2cosh(pi x/2)) " << sci(dc)
             << "; sinc: [sin t/t, t/sinh t] " << sci(es) << ", density vs (pi/4)sech^2(pi x/2) " << sci(ds);
    o.require(ec < 1e-10 && es < 1e-10, "pair identities to 1e-10");
    o.require(dc < 1e-6 && ds < 1e-6, "Fourier densities to 1e-6");
    return o;
}

Outcome criterion4()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<LaplaceExponent> entries{bessel(1.0),
                                         confluent_1f1(0.5, 1.0),
                                         fox_wright(0.5, 1.0),
                                         mittag_leffler(1.5, 1.2),
                                         barnes_hypergeometric(1.5, 0.5),
                                         hypergeometric_1f2(2.0),
                                         power_gamma(0.5, 1.0),
                                         cosine_exponent(),
                                         sinc_exponent()};
    int passed = 0;
    for (const auto& psi : entries) {
        PairReport r = verify_pair(psi);
        if (r.in_N_D && r.all_pass()) {
            ++passed;
        } else {
            for (const auto& c : r.checks) {
                if (!c.pass) {
                    o.detail << " " << psi.describe() << ":" << c.check << "=" << sci(c.residual);
                }
            }
            o.require(false, psi.describe());
        }
    }
    double secs = seconds_since(t0);
    o.detail << " " << passed << "/" << entries.size() << " catalog entries pass every check; " << secs << " s";
    o.require(secs < 60.0, "runtime < 60 s");
    return o;
}

Outcome criterion5()
{
    Outcome o;
    // normalization on the Mellin-Barnes grid
    double norm = 0.0;
    for (const auto& psi : {bessel(0.0), bessel(1.0), confluent_1f1(0.5, 1.0), sinc_exponent()}) {
        DensityGrid g = density_D_grid(psi);
        norm = std::max(norm, std::abs(g.total_mass() - 1.0));
    }
    // x -> 0 against Gamma(1-theta)/(2 W(1/2) Gamma(1/2-theta)) with W from gamma functions (theta = 0 here)
    struct Case {
        LaplaceExponent psi;
        double w_half;
    };
    const double a = 0.5, b = 1.0;
    std::vector<Case> cases{
        {bessel(0.0), std::tgamma(0.5)},
        {bessel(1.0), std::tgamma(1.5) / std::tgamma(2.0)},
        {bessel(2.5), std::tgamma(3.0) / std::tgamma(3.5)},
        {sinc_exponent(), 0.5 * std::tgamma(1.0) / std::tgamma(1.5)},
        {confluent_1f1(a, b), std::tgamma(1.5 - a) * std::tgamma(1.0 + b) / (std::tgamma(0.5 + b) * std::tgamma(2.0 - a))},
    };
    double lim = 0.0;
    for (const auto& c : cases) {
        MellinDensity f(c.psi);
        double expected = 1.0 / (2.0 * c.w_half * std::sqrt(kPi));
        lim = std::max({lim, std::abs(f(1e-5) - expected), std::abs(f.limit_at_zero() - expected)});
    }
    MellinDensity f0(bessel(0.0));
    double arc = 0.0;
    for (int i = 0; i <= 199; ++i) {
        double x = 0.01 * i;
        arc = std::max(arc, std::abs(f0(x) - arcsine_density(0.0, x)));
    }
    o.detail << "|mass - 1| " << sci(norm) << "; x->0 limit " << sci(lim) << "; Bessel nu=0 vs arcsine on [0,1.99] "
             << sci(arc);
    o.require(norm < 1e-6, "normalization");
    o.require(lim < 1e-6, "limit at zero");
    o.require(arc < 1e-6, "arcsine identity");
    return o;
}

Outcome criterion6()
{
    Outcome o;
    double worst = 0.0;
    for (const auto& psi : {bessel(1.0), cosine_exponent(), fox_wright(0.5, 1.0), confluent_1f1(0.5, 1.0)}) {
        EntirePair pair(psi);
        auto J = [&pair](double t) { return eval_J(pair, t); };
        for (int p : {1, 2}) {
            EntirePair image = lukacs_map(pair, p, 1);
            for (int i = 1; i <= 10; ++i) {
                double t = 0.3 * i;
                worst = std::max(worst, std::abs(eval_J(image, t) - lukacs_finite_difference(J, p, t)));
            }
        }
    }
    EntirePair l1(lukacs_map(EntirePair(cosine_exponent()), 1, 1));
    double cos_err = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double t = 0.05 * i;
        cos_err = std::max(cos_err, std::abs(eval_J(l1, t) - (t == 0.0 ? 1.0 : std::sin(t) / t)));
    }
    o.detail << "exponent-level vs finite-difference L1/L2 (4 exponents x 10 points) " << sci(worst)
             << "; L1 cos = sin t/t " << sci(cos_err);
    o.require(worst < 1e-6, "Lukacs commutation");
    o.require(cos_err < 1e-10, "L1 cos identity");
    return o;
}

Outcome criterion7()
{
    Outcome o;
    EntirePair j0(bessel(0.0));
    auto F = [&j0](double t) { return eval_J(j0, t); };
    double worst = 0.0;
    for (double b : {0.5, 1.0, 3.0}) {
        // the measure with even moments n!(n+b)/b
        auto dens = [b](double x) { return 2.0 / b * x * std::exp(-x * x) * (x * x + b - 1.0); };
        DensityGrid law = density_grid_from_function(dens, 0.0, 9.0, 72, false);
        for (int i = 0; i <= 30; ++i) {
            double t = 0.1 * i;
            double ref = (b - t * t) * std::exp(-t * t) / b;
            worst = std::max(worst, std::abs(markov_mult_operator(law, F, t) - ref));
        }
    }
    o.detail << "sup |Lambda F_J0 - (b - t^2)e^{-t^2}/b| over b in {0.5,1,3}, t in [0,3] = " << sci(worst);
    o.require(worst < 1e-6, "worked example");
    return o;
}

Outcome criterion8()
{
    Outcome o;
    EntirePair j0(bessel(0.0));
    RealZeroScan scan = real_zeros(j0, 8.0);
    double zerr = scan.zeros.size() >= 5 ? 0.0 : 1.0;
    for (int k = 1; k <= 5 && k <= int(scan.zeros.size()); ++k) {
        zerr = std::max(zerr, std::abs(scan.zeros[k - 1] - 0.5 * boost::math::cyl_bessel_j_zero(0.0, k)));
    }
    bool disk_ok = true;
    for (int R = 1; R <= 8; ++R) {
        ZeroReport r = zero_report(j0, double(R));
        disk_ok = disk_ok && r.classification == ZeroClass::AllRealUpToR &&
                  r.disk_count == 2 * int(r.real_zeros.size());
    }
    // all zeros of E_{1.7}(-t^2) with |t| < 16 are real; the first non-real ones lie in 16 < |t| < 20
    ZeroReport ml = zero_report(EntirePair(mittag_leffler(1.7, 1.0)), 20.0);
    o.detail << "Bessel nu=0 zeros vs j_{0,k}/2 " << sci(zerr) << "; disk = 2 x real for R = 1..8: "
             << (disk_ok ? "yes" : "no") << "; Mittag-Leffler (1.7,1), R = 20: " << to_string(ml.classification)
             << " (disk " << ml.disk_count << ", real " << ml.real_zeros.size() << ")";
    o.require(zerr < 1e-8, "zero locations");
    o.require(disk_ok, "AllRealUpToR");
    o.require(ml.classification == ZeroClass::NonRealDetected, "NonRealDetected");
    return o;
}

Outcome criterion9()
{
    Outcome o;
    std::mt19937_64 gen(20240531);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> size(1, 8);
    double worst = 0.0;
    for (int m = 0; m < 20; ++m) {
        IsingModel model;
        model.N = size(gen);
        model.J.assign(model.N, std::vector<double>(model.N, 0.0));
        for (int j = 0; j < model.N; ++j) {
            for (int k = j + 1; k < model.N; ++k) {
                model.J[j][k] = model.J[k][j] = unit(gen);
            }
        }
        model.lambda.assign(model.N, 0.2 + 1.8 * unit(gen));
        worst = std::max(worst, leeyang_check(model).max_unit_circle_deviation);
    }
    IsingModel one;
    one.N = 1;
    one.J = {{0.0}};
    one.lambda = {1.0};
    LeeYangReport r1 = leeyang_check(one);
    double single = r1.w_roots.size() == 1 ? std::abs(r1.w_roots[0] - std::complex<double>(-1.0, 0.0)) : 1.0;
    o.detail << "20 random ferromagnetic models (N <= 8): max ||w| - 1| = " << sci(worst) << "; single spin |w + 1| = "
             << sci(single);
    o.require(worst < 1e-8, "unit circle");
    o.require(single < 1e-15, "single spin");
    return o;
}

Outcome criterion10()
{
    Outcome o;
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> grid;
    for (int i = 0; i < 32; ++i) {
        grid.push_back(-5.0 + 10.0 * i / 31.0);
    }
    double min_eig = 1.0, worst_z = 0.0;
    for (int f = 0; f < 5; ++f) {
        LPEvenFunction lp;
        lp.c2 = f % 2 ? 0.5 * unit(gen) : 0.0;
        int n = 1 + int(unit(gen) * 20.0);
        for (int k = 0; k < n; ++k) {
            lp.zeros.push_back(0.5 + 4.0 * unit(gen));
        }
        if (f == 4) {
            lp.tail = LPTailRule{kPi, 1.0, 0.5};  // zeros pi (k + 1/2) beyond the list
        }
        min_eig = std::min(min_eig, bochner_psd_test([&lp](double t) { return reciprocal_cf(lp, t); }, grid));
        NZSample s = simulate_nz(lp, 100000, 1000 + f);
        for (double t : {0.5, 1.0, 2.0}) {
            worst_z = std::max(worst_z, std::abs(s.empirical_cf(t) - reciprocal_cf(lp, t)) / s.cf_standard_error(t));
        }
    }
    o.detail << "5 random LP functions: min Gram eigenvalue " << sci(min_eig)
             << "; NZ empirical CF worst |z| at t in {0.5,1,2} = " << worst_z;
    o.require(min_eig >= -1e-8, "PSD");
    o.require(worst_z < 5.0, "within 5 standard errors");
    return o;
}

Outcome criterion11()
{
    Outcome o;
    const double oracle = -0.125 * std::pow(kPi, -0.25) * boost::math::tgamma(0.25) * boost::math::zeta(0.5);
    const double xi0 = xi_fourier(0.0);
    XiCoefficients c = xi_coefficients(30);
    double series = 0.0;
    for (int i = 0; i <= 40; ++i) {
        double t = 0.05 * i;
        series = std::max(series, std::abs(theta_series(c, t, 25) - xi_fourier(t)));
    }
    std::vector<double> roots = xi_sign_changes(14.0, 14.2, 20);
    RoundTrip rt = candidate_round_trip(c, c.phi_derived);
    BernsteinBattery bat = necessary_bernstein_checks(c.phi_derived);
    o.detail << "xi(0) vs zeta/Gamma oracle " << sci(std::abs(xi0 - oracle)) << "; Theta series (N=25) vs Fourier on [0,2] "
             << sci(series) << "; sign change at " << (roots.empty() ? std::string("none") : std::to_string(roots[0]))
             << "; round trip " << sci(rt.max_relative_error) << "; Bernstein battery (reported):";
    for (const auto& b : bat.conditions) {
        o.detail << " {" << b.name << ": " << (b.pass ? "holds" : "violated") << "}";
    }
    o.require(std::abs(xi0 - oracle) < 1e-6, "xi(0)");
    o.require(series < 1e-6, "Theta series");
    o.require(roots.size() == 1 && roots[0] > 14.0 && roots[0] < 14.2, "sign change");
    o.require(rt.max_relative_error < 1e-10, "round trip");
    o.require(!bat.conditions.empty(), "battery ran");
    return o;
}

Outcome criterion12()
{
    Outcome o;
    struct Case {
        const char* name;
        LaplaceExponent psi;
        double rho;
    };
    std::vector<Case> cases{{"bessel nu=0", bessel(0.0), 1.0},
                            {"bessel nu=1", bessel(1.0), 1.0},
                            {"power_gamma alpha=0.5", power_gamma(0.5, 1.0), 4.0 / 3.0},
                            {"mittag_leffler alpha=1.5", mittag_leffler(1.5, 1.2), 4.0 / 3.0}};
    for (const auto& c : cases) {
        double rho = order_estimate(EntirePair(c.psi)).rho;
        o.detail << " " << c.name << ": " << rho << " (expected " << c.rho << ");";
        o.require(std::abs(rho - c.rho) < 0.02, c.name);
    }
    return o;
}

} // namespace

int main()
{
    std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Bessel identity", criterion1},
        {"Mittag-Leffler identity", criterion2},
        {"classical pairs", criterion3},
        {"pair verification", criterion4},
        {"Mellin-Barnes density", criterion5},
        {"Lukacs commutation", criterion6},
        {"Markov operator example", criterion7},
        {"zero classification", criterion8},
        {"Lee-Yang", criterion9},
        {"Schoenberg reciprocal", criterion10},
        {"xi probe", criterion11},
        {"order estimation", criterion12},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %2zu %-26s %s: %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
