#include "doctest.h"

#include "vdlab/quadrature.hpp"
#include "vdlab/xi.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>

using namespace vdlab;

namespace {

const double pi = 3.14159265358979323846;

const XiCoefficients& coefficients()
{
    static const XiCoefficients c = xi_coefficients(30);
    return c;
}

} // namespace

TEST_SUITE("xi_probe") {

TEST_CASE("theta0")
{
    CHECK(theta0(1.0) == doctest::Approx(std::exp(-pi) + std::exp(-4 * pi) + std::exp(-9 * pi)).epsilon(1e-14));
    // 1 + 2 theta0(x) = x^{-1/2} (1 + 2 theta0(1/x))
    for (double x : {0.3, 0.7, 2.0}) CHECK(1 + 2 * theta0(x) == doctest::Approx((1 + 2 * theta0(1 / x)) / std::sqrt(x)));
}

TEST_CASE("phi_capital examples")
{
    CHECK(phi_capital(3.0) >= 0.0);
    CHECK(std::isfinite(log_phi_capital(3.0)));
    CHECK(log_phi_capital(3.0) < -1000.0);
    CHECK(std::abs(phi_capital(0.5) - phi_capital(-0.5)) < 1e-10 * phi_capital(0.5));
    for (double x : {0.0, 0.2, 1.0}) CHECK(phi_capital(x) > 0.0);
    double mass = integrate<double>([](double x) { return phi_capital(x); }, -4.0, 4.0, 1e-14);
    CHECK(std::abs(mass - xi_fourier(0.0)) < 1e-12);
}

TEST_CASE("xi_fourier examples")
{
    double oracle = -0.125 * std::pow(pi, -0.25) * boost::math::tgamma(0.25) * boost::math::zeta(0.5);
    CHECK(std::abs(xi_fourier(0.0) - oracle) < 1e-12);
    CHECK(oracle == doctest::Approx(0.49712).epsilon(1e-5));
    for (double t : {0.5, 3.0, 9.0}) CHECK(std::abs(xi_fourier(t) - xi_two_sided(-t)) < 1e-10 * std::abs(xi_fourier(0.0)));
    std::vector<double> r = xi_sign_changes(14.0, 14.2, 20);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(14.134725).epsilon(1e-6));
}

TEST_CASE("quadrature convergence")
{
    XiQuadrature fine;
    fine.panel /= 2;
    for (double t : {0.0, 1.0, 2.5, 5.0}) CHECK(std::abs(xi_fourier(t) - xi_fourier(t, fine)) < 1e-8);
}

TEST_CASE("moments")
{
    const XiCoefficients& c = coefficients();
    for (std::size_t n = 0; n < c.F.size(); ++n) CHECK(c.F[n] > 0.0);
    for (std::size_t n = 0; n + 3 < c.F.size(); ++n) CHECK(c.F[n + 3] / c.F[n + 1] > c.F[n + 2] / c.F[n]);
    for (int n = 0; n <= 20; ++n) CHECK(c.F_err[n] < 1e-8 * c.F[n]);
    CHECK(std::abs(c.gamma[0] - xi_fourier(0.0)) < 1e-6);
    MomentValue m0 = f_moment(0);
    CHECK(m0.value == doctest::Approx(c.F[0]));
    CHECK_THROWS(f_moment(65));
}

TEST_CASE("Theta series matches the Fourier transform")
{
    const XiCoefficients& c = coefficients();
    for (int i = 0; i <= 20; ++i) {
        double t = 0.1 * i;
        CHECK(std::abs(theta_series(c, t, 25) - xi_fourier(t)) < 1e-6);
    }
}

TEST_CASE("candidate round trip and G sign report")
{
    const XiCoefficients& c = coefficients();
    CHECK(candidate_round_trip(c, c.phi_derived).max_relative_error < 1e-10);
    for (double v : c.phi_derived) CHECK(v > 0.0);
    CHECK(c.G[0] == -1.0);
    for (int n = 1; n <= 15; ++n) CHECK(c.G[n] > 0.0);
    CHECK(c.phi_printed[1] < 0.0);
}

TEST_CASE("necessary Bernstein checks")
{
    std::vector<double> sq, quad, lin;
    for (int k = 1; k <= 20; ++k) {
        sq.push_back(std::sqrt(double(k)));
        quad.push_back(double(k) * k);
        lin.push_back(double(k));
    }
    CHECK(necessary_bernstein_checks(sq).all_pass());
    CHECK(necessary_bernstein_checks(lin).all_pass());
    BernsteinBattery q = necessary_bernstein_checks(quad);
    CHECK_FALSE(q.all_pass());
    bool j2_fails = false;
    for (const auto& cond : q.conditions)
        if (cond.name.find("Delta^2") != std::string::npos && !cond.pass) j2_fails = true;
    CHECK(j2_fails);
    CHECK_THROWS(necessary_bernstein_checks({1.0, 2.0, 3.0}));
}

}
