#include "doctest.h"

#include "vdlab/catalog.hpp"
#include "vdlab/dantzig.hpp"
#include "vdlab/entire.hpp"
#include "vdlab/lp.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <random>

using namespace vdlab;

namespace {

const double pi = 3.14159265358979323846;

SymmetricDensity gaussian(double s = 1.0)
{
    return {[s](double x) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * pi)); },
            std::numeric_limits<double>::infinity(), "gaussian"};
}

SymmetricDensity arcsine0()
{
    return {[](double x) { return std::abs(x) < 2.0 ? arcsine_density(0.0, x) : 0.0; }, 2.0, "arcsine"};
}

} // namespace

TEST_SUITE("lp_toolkit") {

TEST_CASE("eval_lp examples")
{
    LPEvenFunction c = LPEvenFunction::cosine();
    CHECK(std::abs(eval_lp(c, std::complex<double>(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(eval_lp(c, 1.0) - std::cos(1.0)) < 1e-8);
    LPEvenFunction g;
    g.c2 = 0.5;
    CHECK(eval_lp(g, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("reciprocal_cf examples")
{
    LPEvenFunction c = LPEvenFunction::cosine();
    CHECK(reciprocal_cf(c, 0.0) == 1.0);
    CHECK(std::abs(reciprocal_cf(c, 1.0) - 1.0 / std::cosh(1.0)) < 1e-10);
    CHECK(reciprocal_cf(c, 1.0) == doctest::Approx(0.6480543));
    LPEvenFunction g;
    g.c2 = 0.3;
    CHECK(reciprocal_cf(g, 1.7) == doctest::Approx(std::exp(-0.3 * 1.7 * 1.7)).epsilon(1e-15));
}

TEST_CASE("validation")
{
    LPEvenFunction bad;
    bad.c2 = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    LPEvenFunction z;
    z.zeros = {1.0, -2.0};
    CHECK_THROWS_AS(z.validate(), std::invalid_argument);
    LPEvenFunction t;
    t.tail = LPTailRule{1.0, 0.5, 0.0};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("tail power sums")
{
    // zeros k + 0 with p = 1: sum_{k > 10} k^{-2} = psi'(11)
    LPTailRule r{1.0, 1.0, 0.0};
    double direct = 0.0;
    for (int k = 11; k < 2000000; ++k) direct += 1.0 / (double(k) * k);
    direct += 1.0 / 2000000.0;
    CHECK(lp_tail_power_sum(r, 10, 1) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("PF determinant scans")
{
    auto g = gaussian().f;
    auto lap = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
    auto uni = [](double x) { return std::abs(x) <= 1.0 ? 0.5 : 0.0; };
    CHECK(pf_scan(g, 2, 2000, 1).min_det >= -1e-12);
    CHECK(pf_scan(lap, 2, 100, 2).min_det >= -1e-12);
    // log-concave: 2 x 2 determinants stay non-negative, 3 x 3 ones do not
    CHECK(pf_scan(uni, 2, 20000, 3).min_det >= -1e-12);
    CHECK(pf_scan(uni, 3, 20000, 4).min_det < 0.0);
    CHECK(pf_determinant_test(lap, {-1.0, 0.5}, {0.0, 2.0}) ==
          doctest::Approx(lap(-1.0) * lap(-1.5) - lap(-3.0) * lap(0.5)));
}

TEST_CASE("simulate_nz")
{
    LPEvenFunction c = LPEvenFunction::cosine();
    NZSample s = simulate_nz(c, 100000, 11);
    CHECK(s.target_variance == doctest::Approx(1.0));  // sum 8/((2k-1)^2 pi^2) = 1
    CHECK(std::abs(s.mean) < 5 * s.mean_standard_error());
    CHECK(std::abs(s.variance - s.target_variance) < 5 * s.variance_standard_error());
    CHECK(std::abs(s.empirical_cf(1.0) - 1.0 / std::cosh(1.0)) < 5 * s.cf_standard_error(1.0));

    LPEvenFunction f;
    f.c2 = 0.2;
    f.zeros = {1.0, 2.5};
    NZSample t = simulate_nz(f, 100000, 12);
    CHECK(t.target_variance == doctest::Approx(0.4 + 2.0 + 2.0 / 6.25));
    CHECK(std::abs(t.variance - t.target_variance) < 5 * t.variance_standard_error());

    NZSample again = simulate_nz(f, 1000, 12);
    NZSample once = simulate_nz(f, 1000, 12);
    CHECK(again.draws == once.draws);
}

TEST_CASE("cf_from_density examples")
{
    for (double t : {0.0, 0.5, 2.0}) CHECK(std::abs(cf_from_density(gaussian(), t) - std::exp(-t * t / 2)) < 1e-8);
    SymmetricDensity q{[](double x) { return std::exp(-std::pow(x, 4)); }, std::numeric_limits<double>::infinity(),
                       "quartic"};
    double K = total_mass(q);
    SymmetricDensity qn{[K](double x) { return std::exp(-std::pow(x, 4)) / K; }, q.support, "quartic"};
    CHECK(cf_from_density(qn, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    EntirePair j0(bessel(0.0));
    for (double t : {0.4, 1.3, 3.0}) CHECK(std::abs(cf_from_density(arcsine0(), t) - eval_J(j0, t)) < 1e-7);
}

TEST_CASE("tilt_cf examples")
{
    for (double t : {0.3, 1.0}) CHECK(tilt_cf(gaussian(), 0.0, t) == doctest::Approx(cf_from_density(gaussian(), t)));
    CHECK(std::abs(tilt_cf(gaussian(), 0.25, 1.0) - std::exp(-1.0)) < 1e-8);
    for (double lam : {0.5, 3.0, 20.0}) {
        double v = tilt_cf(arcsine0(), lam, 0.8);
        CHECK(std::isfinite(v));
        CHECK(v == doctest::Approx(tilt_cf(arcsine0(), lam, -0.8)));
    }
    CHECK_THROWS_AS(tilt_cf(gaussian(), 0.6, 1.0), TiltDivergence);
    SymmetricDensity lap{[](double x) { return 0.5 * std::exp(-std::abs(x)); }, std::numeric_limits<double>::infinity(),
                         "laplace"};
    CHECK_THROWS_AS(tilt_cf(lap, 0.01, 1.0), TiltDivergence);
}

TEST_CASE("tilt semigroup")
{
    SymmetricDensity q{[](double x) { return std::exp(-std::pow(x, 4)); }, std::numeric_limits<double>::infinity(),
                       "quartic"};
    for (const auto& d : {q, arcsine0(), gaussian(0.7)}) {
        SymmetricDensity step = tilt_density(d, 0.2);
        for (double t : {0.0, 0.7, 1.9}) CHECK(std::abs(tilt_cf(step, 0.3, t) - tilt_cf(d, 0.5, t)) < 1e-7);
    }
}

TEST_CASE("Newman densities")
{
    NewmanDensity n(1, 1.0, 0.5, {1.0, 2.0});
    CHECK(n.advisories().empty());
    CHECK(cf_from_density(n.as_density(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(n(0.7) == doctest::Approx(n(-0.7)));
    CHECK_THROWS(NewmanDensity(0, -1.0, 0.0, {}));
    NewmanDensity adv(0, 1.0, -2.0, {1.0});
    CHECK_FALSE(adv.advisories().empty());
}

TEST_CASE("Lee-Yang examples")
{
    IsingModel one{1, {{0.0}}, {1.0}};
    LeeYangReport r1 = leeyang_check(one);
    REQUIRE(r1.w_roots.size() == 1);
    CHECK(std::abs(r1.w_roots[0] + 1.0) < 1e-14);
    CHECK(std::abs(ising_partition(one, {0.3, 0.0}) - std::cosh(0.3) * ising_partition(one, 0.0)) < 1e-14);

    IsingModel two{2, {{0.0, 0.5}, {0.5, 0.0}}, {1.0, 1.0}};
    LeeYangReport r2 = leeyang_check(two);
    REQUIRE(r2.w_roots.size() == 2);
    CHECK(r2.max_unit_circle_deviation < 1e-10);
    // w^2 e^{J} + 2 e^{-J} w + e^{J} by brute expansion over the four spins
    for (const auto& w : r2.w_roots) {
        std::complex<double> p = std::exp(0.5) * w * w + 2.0 * std::exp(-0.5) * w + std::exp(0.5);
        CHECK(std::abs(p) < 1e-12);
    }
    for (const auto& z : r2.z_roots) CHECK(std::abs(z.real()) < 1e-10);

    IsingModel anti{2, {{0.0, -1.0}, {-1.0, 0.0}}, {1.0, 1.0}};
    LeeYangReport ra = leeyang_check(anti);
    CHECK_FALSE(ra.warnings.empty());
    CHECK(ra.max_unit_circle_deviation > 1e-3);
}

TEST_CASE("Lee-Yang with non-uniform field")
{
    IsingModel m{3, {{0, 0.4, 0.2}, {0.4, 0, 0.7}, {0.2, 0.7, 0}}, {1.0, 0.5, 0.8}};
    LeeYangReport r = leeyang_check(m, 10.0);
    CHECK_FALSE(r.uniform);
    CHECK(r.all_on_axis);
    CHECK(r.rectangle_zeros == 2 * r.imaginary_axis_zeros);
}

TEST_CASE("Lee-Yang random ferromagnets")
{
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        int N = 1 + trial % 8;
        IsingModel m;
        m.N = N;
        m.J.assign(N, std::vector<double>(N, 0.0));
        for (int j = 0; j < N; ++j)
            for (int k = j + 1; k < N; ++k) m.J[j][k] = m.J[k][j] = u(gen);
        m.lambda.assign(N, 0.3 + u(gen));
        CHECK(leeyang_check(m).max_unit_circle_deviation < 1e-8);
    }
    IsingModel big{13, {}, {}};
    CHECK_THROWS(big.validate());
}

TEST_CASE("Schoenberg consistency")
{
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> grid;
    for (int i = 0; i < 32; ++i) grid.push_back(-5.0 + 10.0 * u(gen));
    for (int f = 0; f < 5; ++f) {
        LPEvenFunction lp;
        lp.c2 = f % 2 ? 0.3 * u(gen) : 0.0;
        int nz = 1 + int(19 * u(gen));
        for (int k = 0; k < nz; ++k) lp.zeros.push_back(0.3 + 5.0 * u(gen));
        CHECK(bochner_psd_test([&lp](double t) { return reciprocal_cf(lp, t); }, grid) >= -1e-8);
    }
}

TEST_CASE("product and series agree for cosine")
{
    LPEvenFunction c = LPEvenFunction::cosine();
    EntirePair p(cosine_exponent());
    for (int i = 0; i <= 30; ++i) {
        double t = 0.1 * i;
        CHECK(std::abs(eval_lp(c, t) - eval_J(p, t)) < 1e-8);
    }
}

TEST_CASE("counter rng is stateless")
{
    CounterRng a(42), b(42);
    CHECK(a.bits(17) == b.bits(17));
    CHECK(a.bits(17) != a.bits(18));
    CHECK(a.split(1).bits(0) != a.split(2).bits(0));
    for (int i = 0; i < 1000; ++i) {
        double v = a.uniform(i);
        CHECK((v > 0.0 && v < 1.0));
    }
}

}
