#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vdlab {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending. Cached per n.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

/// Thrown when an adaptive rule cannot reach its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

namespace detail {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
T gk15(F& f, double a, double b, double& err)
{
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    T fc = f(c);
    T resk = fc * kWgk[7];
    T resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        T f1 = f(c - dx);
        T f2 = f(c + dx);
        resk += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) {
            resg += (f1 + f2) * kWg[j / 2];
        }
    }
    err = std::abs((resk - resg) * h);
    return resk * h;
}

template <class T, class F>
T adapt(F& f, double a, double b, double tol, int depth, double& err_total, bool& ok)
{
    double err = 0.0;
    T v = gk15<T>(f, a, b, err);
    if (!std::isfinite(err)) {
        // a non-finite sample cannot be cured by bisection
        ok = false;
        err_total = std::numeric_limits<double>::infinity();
        return v;
    }
    if (err <= tol || depth <= 0 || std::abs(b - a) < 1e-15 * (1.0 + std::abs(a))) {
        if (err > tol) {
            ok = false;
        }
        err_total += err;
        return v;
    }
    double m = 0.5 * (a + b);
    return adapt<T>(f, a, m, 0.5 * tol, depth - 1, err_total, ok)
         + adapt<T>(f, m, b, 0.5 * tol, depth - 1, err_total, ok);
}

} // namespace detail

/// Adaptive Gauss-Kronrod (7/15) on a finite interval. T is double or
/// std::complex<double>. Throws QuadratureError when the tolerance is not
/// met within max_depth bisections.
template <class T, class F>
T integrate(F f, double a, double b, double abs_tol, int max_depth = 40, double* err_out = nullptr)
{
    double err = 0.0;
    bool ok = true;
    T v = detail::adapt<T>(f, a, b, abs_tol, max_depth, err, ok);
    if (err_out) {
        *err_out = err;
    }
    if (!ok && err > 10.0 * abs_tol) {
        throw QuadratureError("adaptive quadrature did not converge", err);
    }
    return v;
}

/// Integral over [a, inf) via the map x = a + s/(1-s).
template <class T, class F>
T integrate_to_infinity(F f, double a, double abs_tol, int max_depth = 40, double* err_out = nullptr)
{
    auto g = [&](double s) -> T {
        if (s >= 1.0) {
            return T{};
        }
        double d = 1.0 - s;
        return f(a + s / d) * (1.0 / (d * d));
    };
    return integrate<T>(g, 0.0, 1.0, abs_tol, max_depth, err_out);
}

/// Composite Gauss-Legendre over panel boundaries.
template <class T, class F>
T integrate_panels(F f, const std::vector<double>& edges, int n)
{
    const GaussRule& g = gauss_legendre(n);
    T s{};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double c = 0.5 * (edges[p] + edges[p + 1]);
        double h = 0.5 * (edges[p + 1] - edges[p]);
        for (int j = 0; j < n; ++j) {
            s += f(c + h * g.x[j]) * (h * g.w[j]);
        }
    }
    return s;
}

} // namespace vdlab
