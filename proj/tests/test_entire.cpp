#include "doctest.h"

#include "vdlab/catalog.hpp"
#include "vdlab/entire.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>
#include <thread>

using namespace vdlab;

namespace {

const double pi = 3.14159265358979323846;

// Gamma(beta) E_{alpha,beta}(-t^2) by its power series in long double.
double ml_oracle(double alpha, double beta, double t)
{
    long double s = 0.0L, x = -(long double)t * t, p = 1.0L;
    for (int k = 0; k < 200; ++k) {
        s += p / boost::math::tgamma((long double)alpha * k + beta);
        p *= x;
    }
    return double(s * boost::math::tgamma((long double)beta));
}

} // namespace

TEST_SUITE("entire_vd") {

TEST_CASE("coefficients")
{
    EntirePair p(mittag_leffler(1.5, 1.2));
    CHECK(p.coeff(0) == 1.0);
    for (int n = 0; n < 30; ++n) {
        double ratio = p.coeff(n) / p.coeff(n + 1);
        CHECK(ratio == doctest::Approx(p.psi()(double(n + 1))).epsilon(1e-13));
    }
}

TEST_CASE("eval_J examples")
{
    EntirePair b0(bessel(0.0));
    CHECK(std::abs(eval_J(b0, cplx(0.0)) - 1.0) < 1e-15);
    CHECK(std::abs(eval_J(b0, 1.2024130)) < 1e-6);
    for (double t : {0.3, 1.7, 4.0}) CHECK(std::abs(eval_J(b0, t) - boost::math::cyl_bessel_j(0, 2 * t)) < 1e-13);

    EntirePair ml(mittag_leffler(1.5, 1.2));
    CHECK(std::abs(eval_J(ml, 1.0) - ml_oracle(1.5, 1.2, 1.0)) < 1e-12);
}

TEST_CASE("eval_I examples")
{
    EntirePair c(cosine_exponent());
    CHECK(eval_I(c, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(std::cosh(1.0) == doctest::Approx(1.5430806));
    EntirePair b0(bessel(0.0));
    CHECK(eval_I(b0, 1.0) == doctest::Approx(boost::math::cyl_bessel_i(0, 2.0)).epsilon(1e-14));
    CHECK(eval_I(b0, 1.0) == doctest::Approx(2.2795853));
    CHECK(std::abs(eval_I(b0, cplx(0.0)) - 1.0) < 1e-15);
}

TEST_CASE("eval_F examples")
{
    EntirePair b1(bessel(1.0));
    CHECK(eval_F(b1, 0.0) == 1.0);
    // F(it) = J(it)/I(it) = I(t)/J(t)
    double f = eval_F(b1, 0.7);
    double f_it = eval_I(b1, 0.7) / eval_J(b1, 0.7);
    CHECK(std::abs(f * f_it - 1.0) < 1e-10);
    EntirePair c(cosine_exponent());
    CHECK(std::abs(eval_F(c, pi / 2)) < 1e-15);
    CHECK(eval_F(c, 0.4) == doctest::Approx(std::cos(0.4) / std::cosh(0.4)).epsilon(1e-14));
}

TEST_CASE("phi_psi examples")
{
    EntirePair c(cosine_exponent());
    CHECK(phi_psi(c, 0.0) == 0.0);
    CHECK(phi_psi(c, 1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-14));
    CHECK(std::log(std::cosh(1.0)) == doctest::Approx(0.4337809));
    for (const auto& psi : {cosine_exponent(), bessel(1.0), mittag_leffler(1.5, 1.2)}) {
        EntirePair p(psi);
        double prev = phi_psi(p, 0.0), prev_d = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 100; ++i) {
            double v = phi_psi(p, 0.25 * i);
            double d = v - prev;
            CHECK(d >= 0.0);
            CHECK(d <= prev_d + 1e-12);
            prev = v;
            prev_d = d;
        }
    }
}

TEST_CASE("lukacs_map examples")
{
    EntirePair c(cosine_exponent());
    EntirePair l1 = lukacs_map(c, 1, 1);
    for (double t : {0.2, 1.0, 2.5}) CHECK(std::abs(eval_J(l1, t) - std::sin(t) / t) < 1e-13);

    EntirePair b(bessel(0.5));
    EntirePair lb = lukacs_map(b, 1, 1);
    EntirePair b15(bessel(1.5));
    for (double t : {0.5, 2.0}) CHECK(std::abs(eval_J(lb, t) - eval_J(b15, t)) < 1e-14);

    EntirePair l2 = lukacs_map(c, 2, 1);
    auto cosf = [](double t) { return std::cos(t); };
    for (double t : {0.3, 0.9}) CHECK(std::abs(eval_J(l2, t) - lukacs_finite_difference(cosf, 2, t)) < 1e-6);

    CHECK_THROWS(lukacs_map(c, 3, 1));
}

TEST_CASE("order_estimate examples")
{
    CHECK(std::abs(order_estimate(EntirePair(bessel(1.0))).rho - 1.0) < 0.02);
    OrderTypeEstimate ml = order_estimate(EntirePair(mittag_leffler(1.5, 1.2)));
    CHECK(std::abs(ml.rho - 4.0 / 3.0) < 0.02);
    CHECK(ml.lower_index == doctest::Approx(1.5).epsilon(0.02));
    CHECK(std::abs(order_estimate(EntirePair(power_gamma(0.5, 0.0))).rho - 4.0 / 3.0) < 0.02);
}

TEST_CASE("real_zeros examples")
{
    RealZeroScan b = real_zeros(EntirePair(bessel(0.0)), 5.0);
    REQUIRE(b.zeros.size() == 3);
    for (int k = 1; k <= 3; ++k)
        CHECK(std::abs(b.zeros[k - 1] - 0.5 * boost::math::cyl_bessel_j_zero(0.0, k)) < 1e-10);
    CHECK(b.zeros[0] == doctest::Approx(1.2024130));
    CHECK(b.zeros[2] == doctest::Approx(4.3268640));

    RealZeroScan c = real_zeros(EntirePair(cosine_exponent()), 5.0);
    REQUIRE(c.zeros.size() == 2);
    CHECK(std::abs(c.zeros[0] - pi / 2) < 1e-12);
    CHECK(std::abs(c.zeros[1] - 3 * pi / 2) < 1e-12);

    CHECK(real_zeros(EntirePair(bessel(2.0)), 1.0).zeros.empty());
}

TEST_CASE("count_zeros_disk examples")
{
    EntirePair b0(bessel(0.0));
    CHECK(count_zeros_disk(b0, 3.0).count == 4);
    CHECK(count_zeros_disk(b0, 0.5).count == 0);
}

TEST_CASE("Mittag-Leffler (1.7, 1) zeros")
{
    // 40-digit reference roots of E_{1.7}(-t^2)
    const double ref[] = {1.466691785, 3.888867741, 5.9288999406473021309, 7.9745138062894403645};
    EntirePair ml(mittag_leffler(1.7, 1.0));
    ZeroReport r8 = zero_report(ml, 8.0);
    REQUIRE(r8.real_zeros.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r8.real_zeros[k] - ref[k]) < 1e-8);
    CHECK(r8.disk_count == 8);
    CHECK(r8.classification == ZeroClass::AllRealUpToR);

    ZeroReport r20 = zero_report(ml, 20.0);
    CHECK(r20.classification == ZeroClass::NonRealDetected);
    CHECK(r20.disk_count > 2 * int(r20.real_zeros.size()));
}

TEST_CASE("structural pair identity")
{
    for (const auto& psi : {bessel(1.0), mittag_leffler(1.5, 1.2), cosine_exponent(), sinc_exponent(),
                            confluent_1f1(0.5, 1.0)}) {
        EntirePair p(psi);
        for (int i = 0; i <= 50; ++i) {
            double t = 0.1 * i;
            double it = eval_I(p, t);
            CHECK(std::abs(eval_J(p, cplx(0.0, t)) - it) < 1e-12 * it);
            CHECK(std::abs(eval_I(p, cplx(t, 0.0)).real() - it) < 1e-12 * it);
        }
    }
}

TEST_CASE("evenness at random complex points")
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    EntirePair p(mittag_leffler(1.5, 1.2));
    for (int i = 0; i < 20; ++i) {
        cplx z(u(gen), u(gen));
        cplx a = eval_J(p, z), b = eval_J(p, -z);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("derivative series matches differences")
{
    EntirePair p(bessel(1.0));
    for (double t : {0.4, 1.1, 2.9}) {
        double h = 1e-5;
        double fd = (eval_J(p, t + h) - eval_J(p, t - h)) / (2 * h);
        CHECK(std::abs(eval_J_prime(p, cplx(t)).real() - fd) < 1e-8);
    }
}

TEST_CASE("Lukacs commutation")
{
    EntirePair p(bessel(1.0));
    EntirePair lp = lukacs_map(p, 1, 1);
    auto J = [&p](double t) { return eval_J(p, t); };
    for (int i = 1; i <= 10; ++i) {
        double t = 0.3 * i;
        CHECK(std::abs(lukacs_finite_difference(J, 1, t) - eval_J(lp, t)) < 1e-6);
    }
}

TEST_CASE("zero classification consistency")
{
    for (const auto& psi : {bessel(0.0), cosine_exponent(), mittag_leffler(1.7, 1.0), mittag_leffler(1.5, 1.2)}) {
        for (double R : {3.0, 6.0, 9.0}) {
            ZeroReport r = zero_report(EntirePair(psi), R);
            int excess = r.disk_count - 2 * int(r.real_zeros.size());
            CHECK(excess >= 0);
            CHECK(excess % 2 == 0);
            CHECK((excess == 0) == (r.classification == ZeroClass::AllRealUpToR));
        }
    }
}

TEST_CASE("copies share the coefficient cache across threads")
{
    EntirePair p(mittag_leffler(1.5, 1.2));
    std::vector<double> out(8);
    std::vector<std::thread> ts;
    for (int i = 0; i < 8; ++i) ts.emplace_back([&out, p, i] { out[i] = eval_J(p, 0.5 + i); });
    for (auto& t : ts) t.join();
    for (int i = 0; i < 8; ++i) CHECK(out[i] == eval_J(p, 0.5 + i));
}

}
