#include "vdlab/levy.hpp"

#include "vdlab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vdlab {

struct LaplaceExponent::Impl {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    std::function<cplx(cplx)> psi_c;
    std::function<double(double)> psi_r;
    double kappa = 0.0;
    double a = std::numeric_limits<double>::quiet_NaN();
    double sigma2 = 0.0;
    double psi0prime = 0.0;
    double theta = 0.0;
    LevyMeasureSpec measure;
    std::function<cplx(cplx)> phi_c;
    std::function<double(double)> phi_r;
    std::function<cplx(cplx)> log_w_phi;
    double phi0 = 0.0;
    double mubar0 = 0.0;
    std::function<HPReal(const HPReal&)> psi_hp;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - e^{-x} - x with the small-argument series.
cplx compensated_kernel(cplx x)
{
    if (std::abs(x) < 0.5) {
        cplx term = x * x * 0.5;
        cplx s = -term;
        for (int k = 3; k < 40; ++k) {
            term *= -x / double(k);
            s -= term;
            if (std::abs(term) < 1e-18 * std::abs(s)) {
                break;
            }
        }
        return s;
    }
    return 1.0 - std::exp(-x) - x;
}

// 1 - e^{-x}
cplx one_minus_exp(cplx x)
{
    if (std::abs(x) < 0.5) {
        return compensated_kernel(x) + x;
    }
    return 1.0 - std::exp(-x);
}

double quad_tol(cplx u) { return 1e-14 * (1.0 + std::norm(u)); }

// Beyond |log r| = 700 the substitution r = e^{+-y} overflows or underflows;
// the integrability conditions make the remaining contribution negligible.
constexpr double kLogRange = 700.0;

// Weighted density deep in a tail (|log r| > 30) may overflow (r^{-1-alpha}
// at r ~ 1e-300) although the weighted value tends to zero there.
template <class T>
T tail_value(T v, double y)
{
    if (y > 30.0 && !std::isfinite(std::abs(v))) {
        return T{};
    }
    return v;
}

void validate_measure(const LevyMeasureSpec& m)
{
    if (m.kind == MeasureKind::Atoms) {
        for (const auto& at : m.atoms) {
            if (!(at.r > 0.0) || !(at.mass > 0.0) || !std::isfinite(at.r) || !std::isfinite(at.mass)) {
                throw std::invalid_argument("atoms need r > 0 and mass > 0");
            }
        }
    } else if (m.kind == MeasureKind::NumericDensity) {
        if (!m.numeric.density) {
            throw std::invalid_argument("numeric measure without density");
        }
        if (!(m.numeric.exponent_at_zero > -3.0)) {
            throw std::invalid_argument("measure violates int min(1,r^2) mu(dr) < inf near 0");
        }
        if (!(m.numeric.exponent_at_infinity < -1.0)) {
            throw std::invalid_argument("measure violates int min(1,r^2) mu(dr) < inf at infinity");
        }
    }
}

double int_r_small(const LevyMeasureSpec& m)
{
    // int_0^1 r mu(dr)
    if (m.kind == MeasureKind::Atoms) {
        double s = 0.0;
        for (const auto& at : m.atoms) {
            if (at.r < 1.0) {
                s += at.r * at.mass;
            }
        }
        return s;
    }
    if (m.kind == MeasureKind::NumericDensity) {
        if (m.numeric.exponent_at_zero <= -2.0) {
            return kInf;
        }
        auto f = [&](double y) {
            if (y > kLogRange) {
                return 0.0;
            }
            double r = std::exp(-y);
            return tail_value(m.numeric.density(r) * r * r, y);
        };
        return integrate_to_infinity<double>(f, 0.0, 1e-13);
    }
    return 0.0;
}

double int_min1r(const LevyMeasureSpec& m)
{
    if (m.kind == MeasureKind::Atoms) {
        double s = 0.0;
        for (const auto& at : m.atoms) {
            s += std::min(1.0, at.r) * at.mass;
        }
        return s;
    }
    if (m.kind == MeasureKind::NumericDensity) {
        if (m.numeric.exponent_at_zero <= -2.0) {
            return kInf;
        }
        auto g = [&](double y) {
            if (y > kLogRange) {
                return 0.0;
            }
            double r = std::exp(y);
            return tail_value(m.numeric.density(r) * r, y);
        };
        return int_r_small(m) + integrate_to_infinity<double>(g, 0.0, 1e-13);
    }
    return 0.0;
}

double int_r_large(const LevyMeasureSpec& m)
{
    // int_1^inf r mu(dr)
    if (m.kind == MeasureKind::Atoms) {
        double s = 0.0;
        for (const auto& at : m.atoms) {
            if (at.r >= 1.0) {
                s += at.r * at.mass;
            }
        }
        return s;
    }
    if (m.kind == MeasureKind::NumericDensity) {
        if (m.numeric.exponent_at_infinity >= -2.0) {
            return kInf;
        }
        auto g = [&](double y) {
            if (y > kLogRange) {
                return 0.0;
            }
            double r = std::exp(y);
            return tail_value(m.numeric.density(r) * r * r, y);
        };
        return integrate_to_infinity<double>(g, 0.0, 1e-13);
    }
    return 0.0;
}

double bisect_root(const std::function<double(double)>& f)
{
    double hi = 1.0;
    int guard = 0;
    while (!(f(hi) > 0.0)) {
        hi *= 2.0;
        if (++guard > 80) {
            throw std::runtime_error("exponent does not become positive");
        }
    }
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string fmt_param(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

cplx levy_integral(const LevyMeasureSpec& m, cplx u)
{
    if (m.kind == MeasureKind::Atoms) {
        cplx s = 0.0;
        for (const auto& at : m.atoms) {
            cplx x = u * at.r;
            s += at.mass * (at.r < 1.0 ? compensated_kernel(x) : one_minus_exp(x));
        }
        return s;
    }
    if (m.kind == MeasureKind::NumericDensity) {
        const auto& dens = m.numeric.density;
        auto small = [&](double y) -> cplx {
            if (y > kLogRange) {
                return 0.0;
            }
            double r = std::exp(-y);
            return tail_value(compensated_kernel(u * r) * (dens(r) * r), y);
        };
        auto large = [&](double y) -> cplx {
            if (y > kLogRange) {
                return 0.0;
            }
            double r = std::exp(y);
            return tail_value(one_minus_exp(u * r) * (dens(r) * r), y);
        };
        double tol = quad_tol(u);
        return integrate_to_infinity<cplx>(small, 0.0, tol, 50)
             + integrate_to_infinity<cplx>(large, 0.0, tol, 50);
    }
    return 0.0;
}

LaplaceExponent LaplaceExponent::triplet(double kappa, double a, double sigma2, LevyMeasureSpec measure)
{
    if (!(kappa >= 0.0) || !(sigma2 >= 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("need kappa >= 0, sigma2 >= 0 and finite drift");
    }
    if (measure.kind == MeasureKind::ClosedForm) {
        throw std::invalid_argument("closed-form measures go through catalog constructors");
    }
    validate_measure(measure);
    if (sigma2 == 0.0) {
        double m1 = int_min1r(measure);
        if (std::isfinite(m1) && a + int_r_small(measure) <= 0.0) {
            throw std::invalid_argument(
                "degenerate exponent: sigma = 0, finite variation and non-positive effective drift");
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->name = "triplet";
    impl->params = {{"kappa", kappa}, {"a", a}, {"sigma2", sigma2}};
    impl->kappa = kappa;
    impl->a = a;
    impl->sigma2 = sigma2;
    impl->measure = measure;
    impl->psi_c = [kappa, a, sigma2, measure](cplx u) {
        return -kappa + a * u + 0.5 * sigma2 * u * u - levy_integral(measure, u);
    };
    impl->psi_r = [f = impl->psi_c](double u) { return f(cplx(u, 0.0)).real(); };
    impl->psi0prime = a - int_r_large(measure);
    if (kappa == 0.0 && impl->psi0prime >= 0.0) {
        impl->theta = 0.0;
    } else {
        impl->theta = bisect_root(impl->psi_r);
    }
    double th = impl->theta;
    if (measure.kind == MeasureKind::Atoms) {
        double s = 0.0;
        for (const auto& at : measure.atoms) {
            s += at.mass * std::exp(-th * at.r);
        }
        impl->mubar0 = s;
    } else if (measure.kind == MeasureKind::NumericDensity) {
        impl->mubar0 = kInf;
    }
    impl->phi0 = th > 0.0 ? kappa / th : impl->psi0prime;
    return LaplaceExponent(impl);
}

LaplaceExponent LaplaceExponent::closed_form(std::string name,
                                             std::vector<std::pair<std::string, double>> params,
                                             ClosedFormData data)
{
    if (!data.psi) {
        throw std::invalid_argument("closed form requires a complex Psi");
    }
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->params = std::move(params);
    impl->psi_c = data.psi;
    impl->psi_r = data.psi_real ? data.psi_real
                                : std::function<double(double)>([f = data.psi](double u) {
                                      return f(cplx(u, 0.0)).real();
                                  });
    impl->kappa = data.kappa;
    impl->sigma2 = data.sigma2;
    impl->psi0prime = data.psi_prime_zero;
    impl->measure.kind = MeasureKind::ClosedForm;
    impl->measure.catalog = impl->name;
    impl->measure.params = impl->params;
    impl->phi_c = data.phi;
    impl->phi_r = data.phi_real;
    impl->log_w_phi = data.log_w_phi;
    impl->phi0 = data.phi_at_zero;
    impl->mubar0 = data.mu_bar_zero;
    impl->psi_hp = data.psi_hp;
    if (data.theta >= 0.0) {
        impl->theta = data.theta;
    } else if (impl->kappa == 0.0 && impl->psi0prime >= 0.0) {
        impl->theta = 0.0;
    } else {
        impl->theta = bisect_root(impl->psi_r);
    }
    return LaplaceExponent(impl);
}

double LaplaceExponent::operator()(double u) const { return impl_->psi_r(u); }
cplx LaplaceExponent::operator()(cplx u) const { return impl_->psi_c(u); }
double LaplaceExponent::theta() const { return impl_->theta; }
double LaplaceExponent::kappa() const { return impl_->kappa; }
double LaplaceExponent::drift() const { return impl_->a; }
double LaplaceExponent::sigma2() const { return impl_->sigma2; }
double LaplaceExponent::psi_prime_at_zero() const { return impl_->psi0prime; }
const LevyMeasureSpec& LaplaceExponent::measure() const { return impl_->measure; }
const std::string& LaplaceExponent::name() const { return impl_->name; }
const std::vector<std::pair<std::string, double>>& LaplaceExponent::params() const
{
    return impl_->params;
}

std::string LaplaceExponent::describe() const
{
    std::string s = impl_->name + "(";
    for (std::size_t i = 0; i < impl_->params.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += impl_->params[i].first + "=" + fmt_param(impl_->params[i].second);
    }
    return s + ")";
}

bool LaplaceExponent::has_psi_hp() const { return static_cast<bool>(impl_->psi_hp); }
HPReal LaplaceExponent::psi_hp(const HPReal& u) const { return impl_->psi_hp(u); }

bool LaplaceExponent::has_closed_phi() const { return static_cast<bool>(impl_->phi_c); }
cplx LaplaceExponent::closed_phi(cplx u) const { return impl_->phi_c(u); }
double LaplaceExponent::closed_phi(double u) const
{
    return impl_->phi_r ? impl_->phi_r(u) : impl_->phi_c(cplx(u, 0.0)).real();
}
bool LaplaceExponent::has_closed_log_w_phi() const { return static_cast<bool>(impl_->log_w_phi); }
cplx LaplaceExponent::closed_log_w_phi(cplx z) const { return impl_->log_w_phi(z); }
double LaplaceExponent::phi_at_zero() const { return impl_->phi0; }
double LaplaceExponent::mu_bar_zero() const { return impl_->mubar0; }

double eval_psi(const LaplaceExponent& psi, double u)
{
    if (!(u >= 0.0)) {
        throw std::domain_error("eval_psi requires u >= 0");
    }
    return psi(u);
}

cplx eval_psi(const LaplaceExponent& psi, cplx u)
{
    if (u.real() < 0.0) {
        throw std::domain_error("eval_psi requires Re u >= 0");
    }
    return psi(u);
}

double psi_derivative_at_zero(const LaplaceExponent& psi) { return psi.psi_prime_at_zero(); }

double largest_root_theta(const LaplaceExponent& psi)
{
    if (psi.kappa() == 0.0 && psi.psi_prime_at_zero() >= 0.0) {
        return 0.0;
    }
    return bisect_root([&](double u) { return psi(u); });
}

ExponentClassification classify(const LaplaceExponent& psi)
{
    ExponentClassification c;
    c.theta = psi.theta();
    c.psi_prime_at_zero = psi.psi_prime_at_zero();
    c.psi_at_half = psi(0.5);
    bool ok = true;
    double p0 = psi(0.0);
    if (!(p0 <= 1e-14)) {
        ok = false;
        c.reason = "Psi(0) > 0";
    }
    // convexity and growth on a geometric grid
    std::vector<double> us;
    for (double u = 1.0 / 64.0; u <= 4096.0; u *= 1.25) {
        us.push_back(u);
    }
    std::vector<double> vs;
    for (double u : us) {
        vs.push_back(psi(u));
    }
    for (std::size_t i = 1; ok && i + 1 < us.size(); ++i) {
        double lam = (us[i] - us[i - 1]) / (us[i + 1] - us[i - 1]);
        double interp = (1.0 - lam) * vs[i - 1] + lam * vs[i + 1];
        if (vs[i] > interp + 1e-10 * (1.0 + std::abs(interp))) {
            ok = false;
            c.reason = "Psi not convex";
        }
    }
    if (ok && !(vs.back() > 0.0 && vs.back() > vs[vs.size() - 2])) {
        ok = false;
        c.reason = "Psi does not grow to infinity";
    }
    c.in_N = ok;
    double tol = 1e-14 * std::max(1.0, std::abs(psi(0.75) - psi(0.25)));
    c.in_N_D = ok && c.psi_at_half >= -tol;
    if (ok && !c.in_N_D) {
        c.reason = "Psi(1/2) < 0 (theta > 1/2)";
    }
    return c;
}

LaplaceExponent tbeta_map(const LaplaceExponent& psi, double beta)
{
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("tbeta_map requires beta >= 0");
    }
    if (beta == 0.0) {
        return psi;
    }
    auto impl = std::make_shared<LaplaceExponent::Impl>();
    impl->name = "tbeta";
    impl->params = psi.params();
    impl->params.emplace_back("beta", beta);
    impl->name = "tbeta[" + psi.describe() + "]";
    impl->psi_c = [psi, beta](cplx u) { return u / (u + beta) * psi(u + beta); };
    impl->psi_r = [psi, beta](double u) { return u / (u + beta) * psi(u + beta); };
    if (psi.has_psi_hp()) {
        impl->psi_hp = [psi, beta](const HPReal& u) { return u / (u + beta) * psi.psi_hp(u + beta); };
    }
    impl->kappa = 0.0;
    impl->sigma2 = psi.sigma2();
    impl->psi0prime = psi(beta) / beta;
    impl->theta = std::max(psi.theta() - beta, 0.0);
    impl->measure.kind = MeasureKind::ClosedForm;
    impl->measure.catalog = impl->name;
    impl->phi0 = std::numeric_limits<double>::quiet_NaN();
    impl->mubar0 = std::numeric_limits<double>::quiet_NaN();
    return LaplaceExponent(impl);
}

LaplaceExponent tbar_map(const LaplaceExponent& psi, double beta)
{
    if (!(beta >= psi.theta() - 1e-12)) {
        throw std::invalid_argument("tbar_map requires beta >= theta");
    }
    auto impl = std::make_shared<LaplaceExponent::Impl>();
    impl->params = psi.params();
    impl->params.emplace_back("beta", beta);
    impl->name = "tbar[" + psi.describe() + "]";
    impl->psi_c = [psi, beta](cplx u) { return (u - beta) / (u + beta) * psi(u + beta); };
    impl->psi_r = [psi, beta](double u) { return (u - beta) / (u + beta) * psi(u + beta); };
    if (psi.has_psi_hp()) {
        impl->psi_hp = [psi, beta](const HPReal& u) { return (u - beta) / (u + beta) * psi.psi_hp(u + beta); };
    }
    double pb = psi(beta);
    impl->kappa = std::max(pb, 0.0);
    impl->sigma2 = psi.sigma2();
    impl->psi0prime = beta > 0.0 ? 2.0 * pb / beta - complex_step_derivative(psi, beta)
                                 : psi.psi_prime_at_zero();
    impl->theta = beta;
    impl->measure.kind = MeasureKind::ClosedForm;
    impl->measure.catalog = impl->name;
    impl->phi0 = std::numeric_limits<double>::quiet_NaN();
    impl->mubar0 = std::numeric_limits<double>::quiet_NaN();
    return LaplaceExponent(impl);
}

double mu_bar_theta(const LaplaceExponent& psi, double r)
{
    const auto& m = psi.measure();
    double th = psi.theta();
    if (m.kind == MeasureKind::Atoms) {
        double s = 0.0;
        for (const auto& at : m.atoms) {
            if (at.r >= r) {
                s += at.mass * std::exp(th * (r - at.r));
            }
        }
        return s;
    }
    if (m.kind == MeasureKind::NumericDensity) {
        auto f = [&](double y) { double s = r + y; return std::exp(-th * y) * m.numeric.density(s); };
        return integrate_to_infinity<double>(f, 0.0, 1e-13);
    }
    throw std::invalid_argument("mu_bar_theta needs an Atoms or NumericDensity measure");
}

} // namespace vdlab
