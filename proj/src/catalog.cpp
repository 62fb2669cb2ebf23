#include "vdlab/catalog.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg)
{
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

double get(const std::map<std::string, double>& p, const std::string& key, double dflt)
{
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

// Gamma(a)/Gamma(b) for a, b > 0.
HPReal hp_gamma_ratio(const HPReal& a, const HPReal& b) { return boost::math::tgamma_ratio(a, b); }

} // namespace

const std::vector<CatalogEntryInfo>& catalog_entries()
{
    static const std::vector<CatalogEntryInfo> entries = {
        {"bessel", "u(u+nu)", {"nu"}, "nu >= -1/2", {{"nu", 0.0}}},
        {"confluent_1f1", "u(u+1-a)/(u+b)", {"a", "b"}, "0 < a < 1 < a+b", {{"a", 0.5}, {"b", 1.0}}},
        {"fox_wright", "u Gamma(alpha u+beta)/Gamma(alpha(u-1)+beta)", {"alpha", "beta"},
         "0 < alpha < 1, beta >= alpha", {{"alpha", 0.5}, {"beta", 1.0}}},
        {"mittag_leffler", "Gamma(alpha u+beta)/Gamma(alpha u+beta-alpha)", {"alpha", "beta"},
         "1 < alpha < 2, alpha-1 < beta < alpha", {{"alpha", 1.5}, {"beta", 1.2}}},
        {"barnes_hypergeometric", "u Gamma(alpha rho+alpha u)/Gamma(alpha u)", {"alpha", "rho"},
         "1 < alpha < 2, 0 < rho <= 1/alpha", {{"alpha", 1.5}, {"rho", 0.5}}},
        {"hypergeometric_1f2", "u(u+a1)(u+a2)/(u+alpha), a1,a2 = (alpha +- sqrt(alpha^2+4))/2",
         {"alpha"}, "alpha > 0 (class N_D iff alpha >= 3/2)", {{"alpha", 2.0}}},
        {"power_gamma", "u(u+gamma)^alpha", {"alpha", "gamma"}, "0 < alpha < 1, gamma >= 0",
         {{"alpha", 0.5}, {"gamma", 1.0}}},
        {"cosine", "2u(2u-1)", {}, "none", {}},
        {"sinc", "2u(2u+1)", {}, "none", {}},
    };
    return entries;
}

LaplaceExponent bessel(double nu)
{
    require(nu >= -0.5, "bessel requires nu >= -1/2");
    ClosedFormData d;
    d.psi = [nu](cplx u) { return u * (u + nu); };
    d.psi_real = [nu](double u) { return u * (u + nu); };
    d.sigma2 = 2.0;
    d.psi_prime_zero = nu;
    d.theta = nu >= 0.0 ? 0.0 : -nu;
    if (nu >= 0.0) {
        d.phi = [nu](cplx u) { return u + nu; };
        d.phi_real = [nu](double u) { return u + nu; };
        double c = std::lgamma(1.0 + nu);
        d.log_w_phi = [nu, c](cplx z) { return lgamma(z + nu) - c; };
        d.phi_at_zero = nu;
    } else {
        d.phi = [](cplx u) { return u; };
        d.phi_real = [](double u) { return u; };
        d.log_w_phi = [](cplx z) { return lgamma(z); };
        d.phi_at_zero = 0.0;
    }
    d.mu_bar_zero = 0.0;
    d.psi_hp = [nu](const HPReal& u) { return u * (u + nu); };
    return LaplaceExponent::closed_form("bessel", {{"nu", nu}}, d);
}

LaplaceExponent confluent_1f1(double a, double b)
{
    require(a > 0.0 && a < 1.0 && a + b > 1.0, "confluent_1f1 requires 0 < a < 1 < a+b");
    ClosedFormData d;
    d.psi = [a, b](cplx u) { return u * (u + 1.0 - a) / (u + b); };
    d.psi_real = [a, b](double u) { return u * (u + 1.0 - a) / (u + b); };
    d.psi_prime_zero = (1.0 - a) / b;
    d.theta = 0.0;
    d.phi = [a, b](cplx u) { return (u + 1.0 - a) / (u + b); };
    d.phi_real = [a, b](double u) { return (u + 1.0 - a) / (u + b); };
    double c = std::lgamma(1.0 + b) - std::lgamma(2.0 - a);
    d.log_w_phi = [a, b, c](cplx z) { return lgamma(z + 1.0 - a) - lgamma(z + b) + c; };
    d.phi_at_zero = (1.0 - a) / b;
    d.mu_bar_zero = (a + b - 1.0) / b;
    d.psi_hp = [a, b](const HPReal& u) { return u * (u + 1 - HPReal(a)) / (u + b); };
    return LaplaceExponent::closed_form("confluent_1f1", {{"a", a}, {"b", b}}, d);
}

LaplaceExponent fox_wright(double alpha, double beta)
{
    require(alpha > 0.0 && alpha < 1.0 && beta >= alpha, "fox_wright requires 0 < alpha < 1 and beta >= alpha");
    ClosedFormData d;
    auto phi = [alpha, beta](cplx u) { return gamma_ratio(alpha * u + beta, alpha * u + beta - alpha); };
    auto phir = [alpha, beta](double u) { return gamma_ratio(alpha * u + beta, alpha * u + beta - alpha); };
    d.psi = [phi](cplx u) { return u * phi(u); };
    d.psi_real = [phir](double u) { return u * phir(u); };
    d.phi = phi;
    d.phi_real = phir;
    d.psi_prime_zero = phir(0.0);
    d.theta = 0.0;
    double c = std::lgamma(beta);
    d.log_w_phi = [alpha, beta, c](cplx z) { return lgamma(alpha * (z - 1.0) + beta) - c; };
    d.phi_at_zero = phir(0.0);
    d.mu_bar_zero = kInf;
    d.psi_hp = [alpha, beta](const HPReal& u) {
        return u * hp_gamma_ratio(alpha * u + beta, alpha * u + beta - alpha);
    };
    return LaplaceExponent::closed_form("fox_wright", {{"alpha", alpha}, {"beta", beta}}, d);
}

LaplaceExponent mittag_leffler(double alpha, double beta)
{
    require(alpha > 1.0 && alpha < 2.0 && beta > alpha - 1.0 && beta < alpha,
            "mittag_leffler requires 1 < alpha < 2 and alpha-1 < beta < alpha");
    ClosedFormData d;
    d.psi = [alpha, beta](cplx u) { return gamma_ratio(alpha * u + beta, alpha * u + beta - alpha); };
    d.psi_real = [alpha, beta](double u) { return gamma_ratio(alpha * u + beta, alpha * u + beta - alpha); };
    d.kappa = -gamma_ratio(beta, beta - alpha);
    double theta = 1.0 - beta / alpha;
    d.theta = theta;
    d.psi_prime_zero = complex_step_derivative(d.psi, 0.0);
    d.phi = [alpha, beta](cplx u) {
        return alpha * gamma_ratio(alpha * u + beta, alpha * u + beta - alpha + 1.0);
    };
    d.phi_real = [alpha, beta](double u) {
        return alpha * gamma_ratio(alpha * u + beta, alpha * u + beta - alpha + 1.0);
    };
    double c = std::lgamma(1.0 - theta) - std::lgamma(beta);
    d.log_w_phi = [alpha, beta, theta, c](cplx z) {
        return lgamma(alpha * (z - 1.0) + beta) - lgamma(z - theta) + c;
    };
    d.phi_at_zero = alpha * gamma_ratio(beta, beta - alpha + 1.0);
    d.mu_bar_zero = kInf;
    d.psi_hp = [alpha, beta](const HPReal& u) { return hp_gamma_ratio(alpha * u + beta, alpha * u + beta - alpha); };
    return LaplaceExponent::closed_form("mittag_leffler", {{"alpha", alpha}, {"beta", beta}}, d);
}

LaplaceExponent barnes_hypergeometric(double alpha, double rho)
{
    require(alpha > 1.0 && alpha < 2.0 && rho > 0.0 && rho <= 1.0 / alpha,
            "barnes_hypergeometric requires 1 < alpha < 2 and 0 < rho <= 1/alpha");
    ClosedFormData d;
    double ar = alpha * rho;
    auto phi = [alpha, ar](cplx u) { return gamma_ratio(ar + alpha * u, alpha * u); };
    auto phir = [alpha, ar](double u) { return gamma_ratio(ar + alpha * u, alpha * u); };
    d.psi = [phi](cplx u) { return u * phi(u); };
    d.psi_real = [phir](double u) { return u * phir(u); };
    d.phi = phi;
    d.phi_real = phir;
    d.psi_prime_zero = 0.0;
    d.theta = 0.0;
    bool linear = std::abs(ar - 1.0) < 1e-15;
    d.sigma2 = linear ? 2.0 * alpha : 0.0;
    d.phi_at_zero = 0.0;
    d.mu_bar_zero = linear ? 0.0 : kInf;
    d.psi_hp = [alpha, ar](const HPReal& u) { return u * hp_gamma_ratio(ar + alpha * u, alpha * u); };
    return LaplaceExponent::closed_form("barnes_hypergeometric", {{"alpha", alpha}, {"rho", rho}}, d);
}

LaplaceExponent hypergeometric_1f2(double alpha)
{
    require(alpha > 0.0, "hypergeometric_1f2 requires alpha > 0");
    double s = std::sqrt(alpha * alpha + 4.0);
    double a1 = 0.5 * (alpha + s);
    double a2 = 0.5 * (alpha - s);
    ClosedFormData d;
    d.psi = [alpha, a1, a2](cplx u) { return u * (u + a1) * (u + a2) / (u + alpha); };
    d.psi_real = [alpha, a1, a2](double u) { return u * (u + a1) * (u + a2) / (u + alpha); };
    d.sigma2 = 2.0;
    d.psi_prime_zero = a1 * a2 / alpha;
    d.theta = -a2;
    d.phi = [alpha, a1](cplx u) { return u * (u + a1) / (u + alpha); };
    d.phi_real = [alpha, a1](double u) { return u * (u + a1) / (u + alpha); };
    double c = std::lgamma(1.0 + alpha) - std::lgamma(1.0 + a1);
    d.log_w_phi = [alpha, a1, c](cplx z) { return lgamma(z) + lgamma(z + a1) - lgamma(z + alpha) + c; };
    d.phi_at_zero = 0.0;
    d.mu_bar_zero = a1 - alpha;
    d.psi_hp = [alpha](const HPReal& u) {
        const HPReal s = boost::multiprecision::sqrt(HPReal(alpha) * alpha + 4);
        return u * (u + (alpha + s) / 2) * (u + (alpha - s) / 2) / (u + alpha);
    };
    return LaplaceExponent::closed_form("hypergeometric_1f2", {{"alpha", alpha}}, d);
}

LaplaceExponent power_gamma(double alpha, double gamma)
{
    require(alpha > 0.0 && alpha < 1.0 && gamma >= 0.0, "power_gamma requires 0 < alpha < 1 and gamma >= 0");
    ClosedFormData d;
    d.psi = [alpha, gamma](cplx u) { return u * std::pow(u + gamma, alpha); };
    d.psi_real = [alpha, gamma](double u) { return u * std::pow(u + gamma, alpha); };
    d.psi_prime_zero = std::pow(gamma, alpha);
    d.theta = 0.0;
    d.phi = [alpha, gamma](cplx u) { return std::pow(u + gamma, alpha); };
    d.phi_real = [alpha, gamma](double u) { return std::pow(u + gamma, alpha); };
    double c = std::lgamma(1.0 + gamma);
    d.log_w_phi = [alpha, gamma, c](cplx z) { return alpha * (lgamma(z + gamma) - c); };
    d.phi_at_zero = std::pow(gamma, alpha);
    d.mu_bar_zero = kInf;
    d.psi_hp = [alpha, gamma](const HPReal& u) { return u * boost::multiprecision::pow(u + gamma, HPReal(alpha)); };
    return LaplaceExponent::closed_form("power_gamma", {{"alpha", alpha}, {"gamma", gamma}}, d);
}

LaplaceExponent cosine_exponent()
{
    ClosedFormData d;
    d.psi = [](cplx u) { return 2.0 * u * (2.0 * u - 1.0); };
    d.psi_real = [](double u) { return 2.0 * u * (2.0 * u - 1.0); };
    d.sigma2 = 8.0;
    d.psi_prime_zero = -2.0;
    d.theta = 0.5;
    d.phi = [](cplx u) { return 4.0 * u; };
    d.phi_real = [](double u) { return 4.0 * u; };
    const double l4 = std::log(4.0);
    d.log_w_phi = [l4](cplx z) { return (z - 1.0) * l4 + lgamma(z); };
    d.phi_at_zero = 0.0;
    d.mu_bar_zero = 0.0;
    d.psi_hp = [](const HPReal& u) { return 2 * u * (2 * u - 1); };
    return LaplaceExponent::closed_form("cosine", {}, d);
}

LaplaceExponent sinc_exponent()
{
    ClosedFormData d;
    d.psi = [](cplx u) { return 2.0 * u * (2.0 * u + 1.0); };
    d.psi_real = [](double u) { return 2.0 * u * (2.0 * u + 1.0); };
    d.sigma2 = 8.0;
    d.psi_prime_zero = 2.0;
    d.theta = 0.0;
    d.phi = [](cplx u) { return 4.0 * u + 2.0; };
    d.phi_real = [](double u) { return 4.0 * u + 2.0; };
    const double l4 = std::log(4.0);
    const double c = std::lgamma(1.5);
    d.log_w_phi = [l4, c](cplx z) { return (z - 1.0) * l4 + lgamma(z + 0.5) - c; };
    d.phi_at_zero = 2.0;
    d.mu_bar_zero = 0.0;
    d.psi_hp = [](const HPReal& u) { return 2 * u * (2 * u + 1); };
    return LaplaceExponent::closed_form("sinc", {}, d);
}

LaplaceExponent make_catalog(const std::string& name, const std::map<std::string, double>& p)
{
    const CatalogEntryInfo* info = nullptr;
    for (const auto& e : catalog_entries()) {
        if (e.name == name) {
            info = &e;
        }
    }
    if (!info) {
        throw std::invalid_argument("unknown catalog entry: " + name);
    }
    for (const auto& [k, v] : p) {
        bool known = false;
        for (const auto& pn : info->param_names) {
            known = known || pn == k;
        }
        if (!known) {
            throw std::invalid_argument("unknown parameter '" + k + "' for " + name);
        }
    }
    auto g = [&](const char* k) { return get(p, k, info->defaults.at(k)); };
    if (name == "bessel") return bessel(g("nu"));
    if (name == "confluent_1f1") return confluent_1f1(g("a"), g("b"));
    if (name == "fox_wright") return fox_wright(g("alpha"), g("beta"));
    if (name == "mittag_leffler") return mittag_leffler(g("alpha"), g("beta"));
    if (name == "barnes_hypergeometric") return barnes_hypergeometric(g("alpha"), g("rho"));
    if (name == "hypergeometric_1f2") return hypergeometric_1f2(g("alpha"));
    if (name == "power_gamma") return power_gamma(g("alpha"), g("gamma"));
    if (name == "cosine") return cosine_exponent();
    return sinc_exponent();
}

} // namespace vdlab
