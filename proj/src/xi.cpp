#include "vdlab/xi.hpp"

#include "vdlab/quadrature.hpp"
#include "vdlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace vdlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Upper end of the y-range for F: pi e^Y > 2000 makes the integrand negligible.
constexpr double kMomentY = 6.5;

// F(n) on panels of width h, 32 Gauss nodes, double-double accumulation.
DD moment_dd(int n, double h)
{
    const GaussRule& g = gauss_legendre(32);
    DD s;
    int panels = int(std::ceil(kMomentY / h));
    for (int p = 0; p < panels; ++p) {
        double a = p * h, b = std::min(kMomentY, (p + 1) * h);
        double c = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (int j = 0; j < 32; ++j) {
            double y = c + hw * g.x[j];
            double v = std::pow(y, n) * std::exp(0.25 * y) * theta0(std::exp(y));
            s = s + DD(v) * DD(hw * g.w[j]);
        }
    }
    return s;
}

double binom2(int m) { return 0.5 * m * (m - 1.0); }

// n!/(2n)!
double factorial_ratio(int n) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0)); }

} // namespace

double theta0(double x)
{
    if (!(x > 0.0)) {
        throw std::domain_error("theta_0 needs x > 0");
    }
    CompensatedSum<double> s;
    for (int n = 1;; ++n) {
        double term = std::exp(-kPi * n * n * x);
        s.add(term);
        if (term < 1e-18 * s.value() || term == 0.0) {
            break;
        }
    }
    return s.value();
}

double phi_capital(double x)
{
    const double e2 = std::exp(2.0 * x);
    const double a = std::exp(4.5 * x), b = std::exp(2.5 * x);
    CompensatedSum<double> s;
    for (int n = 1;; ++n) {
        double n2 = double(n) * n;
        double term = (4.0 * kPi * kPi * n2 * n2 * a - 6.0 * kPi * n2 * b) * std::exp(-kPi * n2 * e2);
        s.add(term);
        // terms are eventually decreasing once pi n^2 e^{2x} exceeds the polynomial growth
        if (kPi * n2 * e2 > 10.0 && std::abs(term) < 1e-18 * std::abs(s.value())) {
            break;
        }
        if (term == 0.0 && kPi * n2 * e2 > 10.0) {
            break;
        }
    }
    return s.value();
}

double log_phi_capital(double x)
{
    if (x < 0.0) {
        return std::log(phi_capital(x));
    }
    // every term is positive for x >= 0: log-sum-exp over log term_n
    const double e2 = std::exp(2.0 * x);
    std::vector<double> logs;
    for (int n = 1;; ++n) {
        double n2 = double(n) * n;
        logs.push_back(2.5 * x + std::log(n2 * (4.0 * kPi * kPi * n2 * e2 - 6.0 * kPi)) - kPi * n2 * e2);
        if (logs.back() < logs.front() - 45.0) {
            break;
        }
    }
    double top = logs.front(), s = 0.0;
    for (double l : logs) {
        s += std::exp(l - top);
    }
    return top + std::log(s);
}

double xi_fourier(double t, XiQuadrature q)
{
    auto f = [t](double x) { return std::cos(t * x) * phi_capital(x); };
    int panels = int(std::ceil(q.x_max / q.panel));
    std::vector<double> edges;
    for (int p = 0; p <= panels; ++p) {
        edges.push_back(q.x_max * p / panels);
    }
    return 2.0 * integrate_panels<double>(f, edges, q.nodes);
}

double xi_two_sided(double t, XiQuadrature q)
{
    auto f = [t](double x) { return std::cos(t * x) * phi_capital(x); };
    int panels = int(std::ceil(2.0 * q.x_max / q.panel));
    std::vector<double> edges;
    for (int p = 0; p <= panels; ++p) {
        edges.push_back(-q.x_max + 2.0 * q.x_max * p / panels);
    }
    return integrate_panels<double>(f, edges, q.nodes);
}

std::vector<double> xi_sign_changes(double a, double b, int steps)
{
    std::vector<double> roots;
    double prev_t = a, prev = xi_fourier(a);
    for (int i = 1; i <= steps; ++i) {
        double t = a + (b - a) * i / steps;
        double v = xi_fourier(t);
        if ((v < 0.0) != (prev < 0.0)) {
            double lo = prev_t, hi = t, flo = prev;
            for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = xi_fourier(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev = v;
    }
    return roots;
}

MomentValue f_moment(int n)
{
    if (n < 0 || n > 64) {
        throw std::invalid_argument("F(n) is provided for 0 <= n <= 64");
    }
    double fine = moment_dd(n, 0.125).value();
    double coarse = moment_dd(n, 0.25).value();
    return {fine, std::abs(fine - coarse)};
}

XiCoefficients xi_coefficients(int n_max, int threads)
{
    if (n_max < 1 || n_max > 30) {
        throw std::invalid_argument("xi coefficients need 1 <= n_max <= 30");
    }
    XiCoefficients c;
    c.n_max = n_max;
    const int m = 2 * n_max + 2;
    std::vector<DD> F(m + 1);
    c.F.assign(m + 1, 0.0);
    c.F_err.assign(m + 1, 0.0);
    unsigned workers = threads > 0 ? unsigned(threads) : std::max(1u, std::thread::hardware_concurrency());
    for (int start = 0; start <= m; start += int(workers)) {
        std::vector<std::future<std::pair<DD, double>>> jobs;
        for (int k = start; k <= std::min(m, start + int(workers) - 1); ++k) {
            jobs.push_back(std::async(std::launch::async, [k] {
                DD fine = moment_dd(k, 0.125);
                double coarse = moment_dd(k, 0.25).value();
                return std::make_pair(fine, std::abs(fine.value() - coarse));
            }));
        }
        for (int k = start; k <= std::min(m, start + int(workers) - 1); ++k) {
            auto [v, e] = jobs[k - start].get();
            F[k] = v;
            c.F[k] = v.value();
            c.F_err[k] = e;
        }
    }

    // G(2n), n = 0..n_max + 1 where the printed recursion reaches
    c.G.assign(n_max + 2, 0.0);
    for (int n = 0; n <= n_max + 1 && 2 * n <= m; ++n) {
        c.G[n] = n == 0 ? -1.0 : 64.0 * n * (2.0 * n - 1.0) * c.F[2 * n - 2] / c.F[2 * n] - 1.0;
    }

    c.gamma.assign(n_max + 1, 0.0);
    c.gamma_err.assign(n_max + 1, 0.0);
    c.gamma_cancellation.assign(n_max + 1, 1.0);
    c.gamma_printed.assign(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        DD a = n == 0 ? DD(0.0) : DD(32.0 * binom2(2 * n)) * F[2 * n - 2];
        DD diff = a - F[2 * n];
        double ea = n == 0 ? 0.0 : 32.0 * binom2(2 * n) * c.F_err[2 * n - 2];
        double scale = factorial_ratio(n);
        c.gamma_printed[n] = scale * std::ldexp(diff.value(), -(2 * n - 1));
        if (n == 0) {
            // the boundary term of the two integrations by parts equals 1/2
            c.gamma[0] = (DD(0.5) - DD(0.25) * F[0]).value();
            c.gamma_err[0] = 0.25 * c.F_err[0];
            continue;
        }
        double sign = n % 2 ? -1.0 : 1.0;
        c.gamma[n] = sign * scale * std::ldexp(diff.value(), -(2 * n + 2));
        c.gamma_err[n] = scale * std::ldexp(ea + c.F_err[2 * n], -(2 * n + 2));
        c.gamma_cancellation[n] = (a.value() + c.F[2 * n]) / std::abs(diff.value());
    }

    c.phi_derived.assign(n_max, 0.0);
    for (int n = 0; n < n_max; ++n) {
        c.phi_derived[n] = -c.gamma[n] / c.gamma[n + 1];
    }
    c.phi_printed.assign(n_max, 0.0);
    for (int n = 0; n < n_max; ++n) {
        c.phi_printed[n] = -c.G[n] / (8.0 * (n + 1.0) * c.G[n + 1]);
    }
    return c;
}

double theta_series(const XiCoefficients& c, double t, int N)
{
    if (N > c.n_max) {
        throw std::invalid_argument("series order exceeds the computed coefficients");
    }
    CompensatedSum<double> s;
    double p = 1.0;
    for (int n = 0; n <= N; ++n) {
        s.add(c.gamma[n] * p);
        p *= t * t / (n + 1.0);
    }
    return s.value();
}

RoundTrip candidate_round_trip(const XiCoefficients& c, const std::vector<double>& phi)
{
    RoundTrip r;
    r.reconstructed.push_back(c.gamma[0]);
    double inv_w = 1.0;
    const int n = std::min<int>(c.n_max, int(phi.size()));
    for (int k = 1; k <= n; ++k) {
        inv_w /= phi[k - 1];
        double g = c.gamma[0] * (k % 2 ? -1.0 : 1.0) * inv_w;
        r.reconstructed.push_back(g);
        r.max_relative_error = std::max(r.max_relative_error, std::abs(g - c.gamma[k]) / std::abs(c.gamma[k]));
    }
    return r;
}

bool BernsteinBattery::all_pass() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const BernsteinCondition& b) { return b.pass; });
}

BernsteinBattery necessary_bernstein_checks(const std::vector<double>& v)
{
    if (v.size() < 4) {
        throw std::invalid_argument("the battery needs phi(1..M) with M >= 4");
    }
    double scale = 0.0;
    for (double x : v) {
        scale = std::max(scale, std::abs(x));
    }
    const double slack = 1e-12 * scale;
    BernsteinBattery out;
    auto run = [&](const std::string& name, const std::vector<double>& vals) {
        BernsteinCondition c;
        c.name = name;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            c.worst = std::min(c.worst, vals[i]);
            if (vals[i] < -slack && c.pass) {
                c.pass = false;
                c.first_violation = int(i) + 1;
            }
        }
        out.conditions.push_back(c);
    };
    run("phi >= 0", v);
    std::vector<double> d = v;
    for (int j = 1; j <= 4; ++j) {
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            next.push_back(d[i + 1] - d[i]);
        }
        d = next;
        if (d.empty()) {
            break;
        }
        std::vector<double> signed_d = d;
        double s = j % 2 ? 1.0 : -1.0;  // (-1)^{j-1}
        for (double& x : signed_d) {
            x *= s;
        }
        run(j == 1 ? "Delta phi >= 0" : "(-1)^" + std::to_string(j - 1) + " Delta^" + std::to_string(j) + " phi >= 0",
            signed_d);
    }
    return out;
}

} // namespace vdlab
