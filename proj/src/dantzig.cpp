#include "vdlab/dantzig.hpp"

#include "vdlab/quadrature.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <optional>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace vdlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_half(double theta) { return std::abs(theta - 0.5) < 1e-12; }

void add_panels(DensityGrid& g, const std::vector<double>& edges, int n,
                const std::function<double(double)>& f)
{
    const GaussRule& r = gauss_legendre(n);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double c = 0.5 * (edges[p] + edges[p + 1]);
        double h = 0.5 * (edges[p + 1] - edges[p]);
        for (int j = 0; j < n; ++j) {
            double x = c + h * r.x[j];
            g.x.push_back(x);
            g.w.push_back(h * r.w[j]);
            g.f.push_back(f(x));
        }
    }
}

void finish_grid(DensityGrid& g)
{
    g.min_value = g.f.empty() ? 0.0 : *std::min_element(g.f.begin(), g.f.end());
    g.normalization_residual = std::abs(g.total_mass() - 1.0);
}

} // namespace

double arcsine_density(double theta, double x)
{
    if (!(theta >= 0.0 && theta < 0.5)) {
        throw std::domain_error("arcsine density needs 0 <= theta < 1/2 (theta = 1/2 is atomic)");
    }
    if (std::abs(x) >= 2.0) {
        return 0.0;
    }
    double c = std::pow(4.0, theta) * std::tgamma(1.0 - theta) / (std::sqrt(kPi) * std::tgamma(0.5 - theta));
    return c * std::pow(4.0 - x * x, -theta - 0.5);
}

double arcsine_moment(double theta, int n)
{
    if (n < 0) {
        throw std::invalid_argument("moment order must be >= 0");
    }
    if (is_half(theta)) {
        return std::ldexp(1.0, 2 * n);
    }
    return std::exp(std::lgamma(1.0 - theta) + std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0 - theta)
                    - std::lgamma(n + 1.0));
}

double moment_D(const LaplaceExponent& psi, int n)
{
    auto [theta, phi] = wiener_hopf(psi);
    return arcsine_moment(theta, n) * moments_exp_functional(phi, n);
}

std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::MellinBarnes: return "MellinBarnes";
    case Provenance::FourierInversion: return "FourierInversion";
    default: return "ClosedForm";
    }
}

double DensityGrid::expect(const std::function<double(double)>& g) const
{
    CompensatedSum<double> s;
    for (const auto& a : atoms) {
        s.add(a.mass * g(a.r));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = symmetric ? g(x[i]) + g(-x[i]) : g(x[i]);
        s.add(w[i] * f[i] * v);
    }
    return s.value();
}

double DensityGrid::total_mass() const
{
    return expect([](double) { return 1.0; });
}

double DensityGrid::moment(int k) const
{
    return expect([k](double x) { return std::pow(x, k); });
}

double DensityGrid::cf(double t) const
{
    return expect([t](double x) { return std::cos(t * x); });
}

DensityGrid density_grid_from_function(const std::function<double(double)>& density, double lo, double hi,
                                       int panels, bool symmetric, Provenance prov)
{
    DensityGrid g;
    g.symmetric = symmetric;
    g.provenance = prov;
    g.support_lo = symmetric ? -hi : lo;
    g.support_hi = hi;
    std::vector<double> edges;
    for (int p = 0; p <= panels; ++p) {
        edges.push_back(lo + (hi - lo) * p / panels);
    }
    add_panels(g, edges, 16, density);
    finish_grid(g);
    return g;
}

// ---------------------------------------------------------------------------
// Mellin-Barnes density

struct MellinDensity::Impl {
    LaplaceExponent psi;
    int order = 0;
    double a = 1.0;
    double theta = 0.0;
    double sigma2 = 0.0;
    double pref = 0.0;  // (-1)^n Gamma(1-theta)/pi
    std::unique_ptr<BernsteinGammaEvaluator> w;
    bool atomic = false;
    double atom = 0.0;
    double limit0 = 0.0;
    double omega0 = 0.0;  // log(8/sigma^2)
    double edge = kInf;
    double q = 0.0;
    // sigma = 0 tabulation
    std::vector<double> nodes, weights;
    std::vector<cplx> values;
    // sigma > 0
    mutable std::mutex ooura_mu;
    std::unique_ptr<boost::math::quadrature::ooura_fourier_cos<double>> ocos;
    std::unique_ptr<boost::math::quadrature::ooura_fourier_sin<double>> osin;
    double delta0 = 0.0;
    int basis = 0;  // 0: {d^{q-1}, 1, d^q}; 1: {1, d, d^2}
    double coef[3] = {0.0, 0.0, 0.0};
    std::vector<std::string> warnings;

    cplx log_g(cplx z) const
    {
        const int n = order;
        cplx zn = z - double(n);
        cplx v = lgamma(2.0 * zn - 1.0) - w->log_w(zn) - lgamma(zn - theta);
        for (int k = 1; k <= n; ++k) {
            v += std::log(z - double(k));
        }
        return v;
    }

    cplx amplitude(double b) const
    {
        cplx lg = log_g(cplx(a, b));
        return std::exp(lg - cplx(0.0, omega0 * b));
    }

    double raw(double x) const
    {
        if (sigma2 > 0.0) {
            double om = omega0 - 2.0 * std::log(x);
            double ic, is;
            {
                std::lock_guard<std::mutex> lock(ooura_mu);
                auto fr = [this](double b) { return amplitude(b).real(); };
                auto fi = [this](double b) { return amplitude(b).imag(); };
                if (om == 0.0) {
                    throw std::domain_error("Mellin integral diverges at the support edge");
                }
                ic = ocos->integrate(fr, std::abs(om)).first;
                is = osin->integrate(fi, std::abs(om)).first;
            }
            double s = om > 0.0 ? ic - is : ic + is;
            return pref * std::pow(x, 1.0 - 2.0 * a) * s;
        }
        double lx = std::log(x);
        double s = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            cplx e = std::polar(1.0, -2.0 * nodes[j] * lx);
            s += weights[j] * (values[j] * e).real();
        }
        return pref * std::pow(x, 1.0 - 2.0 * a) * s;
    }

    double model(double d) const
    {
        if (basis == 1) {
            return coef[0] + coef[1] * d + coef[2] * d * d;
        }
        return coef[0] * std::pow(d, q - 1.0) + coef[1] + coef[2] * std::pow(d, q);
    }
};

MellinDensity::MellinDensity(const LaplaceExponent& psi, int order, MellinContour contour)
    : impl_(std::make_unique<Impl>())
{
    Impl& m = *impl_;
    if (order < 0) {
        throw std::invalid_argument("derivative order must be >= 0");
    }
    auto cls = classify(psi);
    if (!cls.in_N_D) {
        throw std::domain_error("exponent is not in class N_D: " + cls.reason);
    }
    m.psi = psi;
    m.order = order;
    m.theta = psi.theta();
    m.sigma2 = psi.sigma2();
    m.a = contour.a > 0.0 ? contour.a : 1.0 + order;
    if (!(m.a > 0.5 + order)) {
        throw std::invalid_argument("Mellin abscissa must exceed 1/2 + order");
    }
    m.pref = (order % 2 ? -1.0 : 1.0) * std::tgamma(1.0 - m.theta) / kPi;
    auto [th, phi] = wiener_hopf(psi);
    m.w = std::make_unique<BernsteinGammaEvaluator>(phi);

    if (is_half(m.theta)) {
        double m2 = moment_D(psi, 1), m4 = moment_D(psi, 2);
        if (std::abs(m4 - m2 * m2) < 1e-12 * m4) {
            m.atomic = true;
            m.atom = std::sqrt(m2);
            return;
        }
    }
    m.limit0 = std::tgamma(1.0 - m.theta) * rgamma(0.5 - m.theta) / (2.0 * std::exp(m.w->log_w(0.5).real()));

    // smoothness cutoff: orders beyond ceil(q - 1) are refused when sigma > 0
    // and the Levy measure of phi is finite
    double phi0 = psi.phi_at_zero(), mb0 = psi.mu_bar_zero();
    bool q_known = m.sigma2 > 0.0 && std::isfinite(phi0) && std::isfinite(mb0);
    if (m.sigma2 > 0.0) {
        m.omega0 = std::log(8.0 / m.sigma2);
        m.edge = 2.0 * std::sqrt(2.0) / std::sqrt(m.sigma2);
        namespace bq = boost::math::quadrature;
        m.ocos = std::make_unique<bq::ooura_fourier_cos<double>>(1e-10, 5);
        m.osin = std::make_unique<bq::ooura_fourier_sin<double>>(1e-10, 5);
        if (q_known) {
            m.q = 2.0 / m.sigma2 * (mb0 + phi0) - m.theta + 0.5;
        } else {
            double b = phi.has_closed_log_w() ? 1e5 : 200.0;
            auto slope = [&](double bb) {
                return -(std::log(std::abs(m.amplitude(2.0 * bb))) - std::log(std::abs(m.amplitude(bb))))
                       / std::log(2.0);
            };
            double q1 = slope(b), q2 = slope(2.0 * b);
            m.q = 2.0 * q2 - q1 + order;
        }
        if (q_known && order > 0 && order > std::ceil(m.q - 1.0)) {
            throw std::domain_error("derivative order exceeds the smoothness of the density");
        }
        if (order == 0) {
            m.delta0 = (phi.has_closed_log_w() ? 1e-4 : 1e-3) * m.edge;
            double fr = std::abs(m.q - std::round(m.q));
            m.basis = (m.q >= 1.0 && fr < 1e-9) ? 1 : 0;
            double d[3] = {m.delta0, 2.0 * m.delta0, 4.0 * m.delta0};
            Eigen::Matrix3d A;
            Eigen::Vector3d rhs;
            for (int i = 0; i < 3; ++i) {
                rhs[i] = m.raw(m.edge - d[i]);
                if (m.basis == 1) {
                    A(i, 0) = 1.0;
                    A(i, 1) = d[i];
                    A(i, 2) = d[i] * d[i];
                } else {
                    A(i, 0) = std::pow(d[i], m.q - 1.0);
                    A(i, 1) = 1.0;
                    A(i, 2) = std::pow(d[i], m.q);
                }
            }
            Eigen::Vector3d c = A.fullPivLu().solve(rhs);
            for (int i = 0; i < 3; ++i) {
                m.coef[i] = c[i];
            }
        }
        return;
    }

    // sigma = 0: exponential decay; tabulate along the contour
    double peak = std::abs(std::exp(m.log_g(cplx(m.a, 0.0))));
    double B = contour.cutoff;
    if (B > 0.0) {
        double tail = std::abs(std::exp(m.log_g(cplx(m.a, B))));
        if (tail > 1e-12 * peak) {
            throw std::runtime_error("Mellin integrand not decayed at the cutoff; increase the cutoff");
        }
    } else {
        double b = 1.0;
        for (;; b += 1.0) {
            double v = std::abs(std::exp(m.log_g(cplx(m.a, b))));
            peak = std::max(peak, v);
            if (v * b < 1e-17 * peak) {
                break;
            }
            if (b > 4000.0) {
                throw std::runtime_error("Mellin integrand decays too slowly; increase the cutoff");
            }
        }
        B = b;
        double v1 = std::abs(std::exp(m.log_g(cplx(m.a, 0.5 * B))));
        double v2 = std::abs(std::exp(m.log_g(cplx(m.a, B))));
        if (std::log(v1 / v2) / std::log(2.0) < 1.5) {
            m.warnings.push_back("integrand decays slower than |b|^-1.5 at the cutoff");
        }
    }
    double h = contour.step > 0.0 ? contour.step : 0.2;
    int panels = int(std::ceil(B / h));
    const GaussRule& r = gauss_legendre(16);
    for (int p = 0; p < panels; ++p) {
        double lo = p * h, hi = std::min(B, (p + 1) * h);
        double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
        for (int j = 0; j < 16; ++j) {
            double b = c + hw * r.x[j];
            m.nodes.push_back(b);
            m.weights.push_back(hw * r.w[j]);
            m.values.push_back(std::exp(m.log_g(cplx(m.a, b))));
        }
    }
}

MellinDensity::~MellinDensity() = default;
MellinDensity::MellinDensity(MellinDensity&&) noexcept = default;
MellinDensity& MellinDensity::operator=(MellinDensity&&) noexcept = default;

double MellinDensity::integral_value(double x) const
{
    if (impl_->atomic) {
        throw std::domain_error("the law is atomic; no density");
    }
    if (!(x > 0.0)) {
        throw std::domain_error("contour integral needs x > 0");
    }
    return impl_->raw(x);
}

double MellinDensity::operator()(double x) const
{
    const Impl& m = *impl_;
    if (m.atomic) {
        throw std::domain_error("the law is atomic; no density");
    }
    if (m.order == 0) {
        x = std::abs(x);
        if (x == 0.0) {
            return m.limit0;
        }
    } else if (!(x > 0.0)) {
        throw std::domain_error("derivative formula needs x > 0");
    }
    if (x >= m.edge) {
        return 0.0;
    }
    if (m.order == 0 && m.sigma2 > 0.0 && m.edge - x < m.delta0) {
        return m.model(m.edge - x);
    }
    return m.raw(x);
}

double MellinDensity::limit_at_zero() const { return impl_->limit0; }
double MellinDensity::support_edge() const { return impl_->edge; }
double MellinDensity::edge_exponent() const { return impl_->q; }
bool MellinDensity::atomic() const { return impl_->atomic; }
double MellinDensity::atom_location() const { return impl_->atom; }
double MellinDensity::model_switch() const { return impl_->delta0; }
double MellinDensity::model_value(double delta) const { return impl_->model(delta); }
const std::vector<std::string>& MellinDensity::warnings() const { return impl_->warnings; }

double density_D_mellin(const LaplaceExponent& psi, double x, int order, MellinContour contour)
{
    MellinDensity d(psi, order, contour);
    return d(x);
}

DensityGrid density_D_grid(const LaplaceExponent& psi, DensityGridOptions opt)
{
    MellinDensity md(psi);
    DensityGrid g;
    g.provenance = Provenance::MellinBarnes;
    g.symmetric = true;
    if (md.atomic()) {
        g.atoms = {{-md.atom_location(), 0.5}, {md.atom_location(), 0.5}};
        g.symmetric = false;
        g.support_lo = -md.atom_location();
        g.support_hi = md.atom_location();
        g.notes.push_back("two-point law");
        finish_grid(g);
        return g;
    }
    g.notes = md.warnings();
    const int n = opt.nodes_per_panel;
    const double f0 = md.limit_at_zero();
    auto f = [&](double x) { return md(x); };
    if (std::isfinite(md.support_edge())) {
        const double X = md.support_edge();
        const double xmin = 1e-6 * X;
        add_panels(g, {0.0, xmin}, n, [f0](double) { return f0; });
        std::vector<double> edges{xmin};
        while (edges.back() * 4.0 < 0.05 * X) {
            edges.push_back(edges.back() * 4.0);
        }
        for (int p = 0; p <= 6; ++p) {
            edges.push_back(0.05 * X + (0.5 - 0.05) * X * p / 6.0);
        }
        double d = 0.5 * X;
        const double d0 = md.model_switch();
        while (d / 2.0 > d0) {
            d /= 2.0;
            edges.push_back(X - d);
        }
        edges.push_back(X - d0);
        add_panels(g, edges, n, f);
        // model region: delta = d0 s^{1/q} absorbs the delta^{q-1} singularity
        const double q = md.edge_exponent();
        const GaussRule& r = gauss_legendre(n);
        for (int j = 0; j < n; ++j) {
            double s = 0.5 * (1.0 + r.x[j]);
            double ws = 0.5 * r.w[j];
            double delta, wd;
            if (q < 1.0) {
                delta = d0 * std::pow(s, 1.0 / q);
                wd = d0 / q * std::pow(s, 1.0 / q - 1.0) * ws;
            } else {
                delta = d0 * s;
                wd = d0 * ws;
            }
            g.x.push_back(X - delta);
            g.w.push_back(wd);
            g.f.push_back(md.model_value(delta));
        }
        g.support_lo = -X;
        g.support_hi = X;
    } else {
        // truncation from the moment bound: the mass beyond X contributes at
        // most min_n E[D^{2n}] / X^{2n-8} to E[D^8]
        const double m8 = moment_D(psi, 4);
        std::vector<double> logm;
        for (int k = 4; k <= 40; ++k) {
            double mk = moment_D(psi, k);
            if (!std::isfinite(mk)) {
                break;
            }
            logm.push_back(std::log(mk));
        }
        auto tail_bound = [&](double x) {
            double best = kInf;
            for (std::size_t i = 1; i < logm.size(); ++i) {
                int k = 4 + int(i);
                best = std::min(best, logm[i] - (2.0 * k - 8.0) * std::log(x));
            }
            return best;
        };
        double X = 1.0;
        while (X < 1024.0 && tail_bound(X) > std::log(1e-10 * m8)) {
            X *= 1.1;
        }
        const double xmin = 1e-6;
        add_panels(g, {0.0, xmin}, n, [f0](double) { return f0; });
        std::vector<double> edges{xmin};
        while (edges.back() * 4.0 < 0.1) {
            edges.push_back(edges.back() * 4.0);
        }
        edges.push_back(0.1);
        int panels = std::max(8, int(std::ceil((X - 0.1) / 0.25)));
        for (int p = 1; p <= panels; ++p) {
            edges.push_back(0.1 + (X - 0.1) * p / panels);
        }
        add_panels(g, edges, n, f);
        g.support_lo = -kInf;
        g.support_hi = kInf;
        g.notes.push_back("grid truncated at |x| = " + std::to_string(X));
    }
    finish_grid(g);
    return g;
}

// ---------------------------------------------------------------------------
// Fourier inversion of 1/I_Psi

DensityGrid density_Dbar_fourier(const LaplaceExponent& psi, FourierGridSpec spec)
{
    auto cls = classify(psi);
    if (!cls.in_N_D) {
        throw std::domain_error("exponent is not in class N_D: " + cls.reason);
    }
    EntirePair pair(psi);
    auto inv_i = [&](double t) { return std::exp(-log_eval_I(pair, t)); };
    // cutoff T with 1/I(T) < 1e-16
    double T = 1.0;
    while (inv_i(T) > 1e-16) {
        T *= 1.25;
        if (T > 1e4) {
            throw std::runtime_error("1/I_Psi decays too slowly for Fourier inversion");
        }
    }
    auto density_at = [&](const std::vector<double>& invs, double h, double x) {
        CompensatedSum<double> s;
        s.add(0.5);
        for (std::size_t k = 1; k < invs.size(); ++k) {
            s.add(std::cos(k * h * x) * invs[k]);
        }
        return h / kPi * s.value();
    };
    auto table = [&](double h) {
        std::vector<double> v;
        for (int k = 0; k * h <= T; ++k) {
            v.push_back(inv_i(k * h));
        }
        return v;
    };
    double X = spec.x_max;
    if (!(X > 0.0)) {
        // exponential tail; grow X until the density is negligible
        X = 8.0;
        for (;;) {
            double h = 2.0 * kPi / (4.0 * X + 10.0);
            auto invs = table(h);
            if (std::abs(density_at(invs, h, X)) < 1e-15 || X > 200.0) {
                break;
            }
            X *= 1.5;
        }
    }
    DensityGrid g;
    g.provenance = Provenance::FourierInversion;
    g.symmetric = true;
    g.support_lo = -X;
    g.support_hi = X;
    int panels = std::max(1, int(std::ceil(X / spec.panel_width)));
    std::vector<double> edges;
    for (int p = 0; p <= panels; ++p) {
        edges.push_back(X * p / panels);
    }
    double h = 2.0 * kPi / (2.0 * X + 10.0);
    std::vector<double> prev;
    for (int it = 0; it < 8; ++it, h *= 0.5) {
        auto invs = table(h);
        DensityGrid cur = g;
        add_panels(cur, edges, spec.nodes_per_panel, [&](double x) { return density_at(invs, h, x); });
        double change = kInf;
        if (!prev.empty()) {
            change = 0.0;
            for (std::size_t i = 0; i < prev.size(); ++i) {
                change = std::max(change, std::abs(prev[i] - cur.f[i]));
            }
        }
        prev = cur.f;
        if (change < 1e-7) {
            finish_grid(cur);
            cur.notes.push_back("trapezoid step " + std::to_string(h) + ", cutoff T = " + std::to_string(T));
            return cur;
        }
        if (it == 7) {
            finish_grid(cur);
            cur.notes.push_back("step halving did not settle below 1e-7");
            return cur;
        }
    }
    return g;
}

double markov_mult_operator(const DensityGrid& law, const std::function<double(double)>& f, double t)
{
    return law.expect([&](double x) { return f(x * t); });
}

double markov_mult_operator(const std::vector<Atom>& law, const std::function<double(double)>& f, double t)
{
    double s = 0.0;
    for (const auto& a : law) {
        s += a.mass * f(a.r * t);
    }
    return s;
}

double bochner_psd_test(const std::function<double(double)>& cf, const std::vector<double>& grid)
{
    const int n = int(grid.size());
    Eigen::MatrixXd G(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k <= j; ++k) {
            double v = cf(grid[j] - grid[k]);
            G(j, k) = v;
            G(k, j) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool PairReport::all_pass() const
{
    if (!in_N_D || checks.empty()) {
        return false;
    }
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

CheckResult make_check(std::string name, double residual, double tol, std::string detail = {})
{
    return {std::move(name), residual, tol, residual <= tol, std::move(detail)};
}

template <class F>
void guarded(PairReport& rep, const std::string& name, F&& body)
{
    try {
        body();
    } catch (const std::exception& e) {
        rep.checks.push_back({name, kInf, 0.0, false, std::string("error: ") + e.what()});
    }
}

} // namespace

PairReport verify_pair(const LaplaceExponent& psi, PairGrids grids, PairTolerances tol)
{
    PairReport rep;
    rep.exponent = psi.describe();
    auto cls = classify(psi);
    rep.in_N_D = cls.in_N_D;
    if (!cls.in_N_D) {
        rep.reason = cls.reason.empty() ? "not in class N_D" : cls.reason;
        rep.checks.push_back({"classification", kInf, 0.0, false, rep.reason});
        return rep;
    }
    EntirePair pair(psi);

    guarded(rep, "structural_identity", [&] {
        double worst = 0.0;
        for (int i = 0; i <= 50; ++i) {
            double t = grids.structural_t_max * i / 50.0;
            double iv = eval_I(pair, t);
            double jv = std::abs(eval_J(pair, cplx(0.0, t)) - iv) / iv;
            worst = std::max(worst, jv);
        }
        rep.checks.push_back(make_check("structural_identity", worst, tol.structural));
    });

    std::mt19937_64 rng(grids.seed);
    std::uniform_real_distribution<double> unif(-grids.psd_half_width, grids.psd_half_width);
    std::vector<double> pts(grids.psd_points);
    for (auto& p : pts) {
        p = unif(rng);
    }
    // the D grid doubles as the characteristic function J where the series
    // loses its digits to cancellation
    std::optional<DensityGrid> grid_D;
    std::string grid_error;
    try {
        grid_D = density_D_grid(psi);
    } catch (const std::exception& e) {
        grid_error = e.what();
    }
    guarded(rep, "psd_J", [&] {
        int from_grid = 0;
        auto j = [&](double t) {
            SeriesValue sv = eval_J_full(pair, cplx(t, 0.0));
            if (sv.cancellation && grid_D) {
                ++from_grid;
                return grid_D->cf(t);
            }
            return sv.value.real();
        };
        double me = bochner_psd_test(j, pts);
        std::string detail = "min eigenvalue " + std::to_string(me);
        if (from_grid > 0) {
            detail += "; " + std::to_string(from_grid) + " entries from the D grid (series cancellation)";
        }
        rep.checks.push_back(make_check("psd_J", std::max(0.0, -me), tol.psd, detail));
    });
    guarded(rep, "psd_inverse_I", [&] {
        double me = bochner_psd_test([&](double t) { return 1.0 / eval_I(pair, t); }, pts);
        rep.checks.push_back(
            make_check("psd_inverse_I", std::max(0.0, -me), tol.psd, "min eigenvalue " + std::to_string(me)));
    });

    guarded(rep, "density_D", [&] {
        if (!grid_D) {
            throw std::runtime_error(grid_error);
        }
        const DensityGrid& g = *grid_D;
        std::string kind = g.atoms.empty() ? "Mellin-Barnes grid" : "two-point law";
        rep.checks.push_back(make_check("nonnegativity_D", std::max(0.0, -g.min_value), tol.nonnegativity, kind));
        rep.checks.push_back(make_check("normalization_D", g.normalization_residual, tol.normalization, kind));
        double worst = 0.0;
        for (int n = 1; n <= grids.max_moment; ++n) {
            double exact = moment_D(psi, n);
            worst = std::max(worst, std::abs(g.moment(2 * n) - exact) / exact);
        }
        rep.checks.push_back(make_check("moments_D", worst, tol.moments, kind));
        double rt = 0.0;
        for (int i = 0; i <= 30; ++i) {
            double t = grids.roundtrip_t_max * i / 30.0;
            rt = std::max(rt, std::abs(g.cf(t) - eval_J(pair, t)));
        }
        rep.checks.push_back(make_check("fourier_roundtrip_D", rt, tol.roundtrip, kind));
        if (g.atoms.empty() && psi.sigma2() > 0.0) {
            MellinDensity md(psi);
            double X = md.support_edge();
            double worst_out = 0.0;
            for (double s : {1.05, 1.2, 1.5}) {
                worst_out = std::max(worst_out, std::abs(md.integral_value(s * X)));
            }
            rep.checks.push_back(make_check("support_D", worst_out, tol.support,
                                            "edge " + std::to_string(X)));
        }
    });

    guarded(rep, "density_Dbar", [&] {
        DensityGrid g = density_Dbar_fourier(psi);
        rep.checks.push_back(make_check("nonnegativity_Dbar", std::max(0.0, -g.min_value), tol.nonnegativity));
        rep.checks.push_back(make_check("normalization_Dbar", g.normalization_residual, tol.normalization));
        double rt = 0.0;
        for (int i = 0; i <= 30; ++i) {
            double t = grids.roundtrip_t_max * i / 30.0;
            rt = std::max(rt, std::abs(g.cf(t) - 1.0 / eval_I(pair, t)));
        }
        rep.checks.push_back(make_check("fourier_roundtrip_Dbar", rt, tol.roundtrip));
    });

    guarded(rep, "bernstein_phi_Psi", [&] {
        std::vector<double> v;
        for (int i = 0; i <= 100; ++i) {
            v.push_back(phi_psi(pair, 0.25 * i));
        }
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            worst = std::max(worst, -(v[i + 1] - v[i]));
        }
        for (std::size_t i = 0; i + 2 < v.size(); ++i) {
            worst = std::max(worst, v[i + 2] - 2.0 * v[i + 1] + v[i]);
        }
        rep.checks.push_back(make_check("bernstein_phi_Psi", std::max(0.0, worst), 1e-10));
    });
    return rep;
}

} // namespace vdlab
