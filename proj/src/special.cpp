#include "vdlab/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace vdlab {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kLogPi = 1.1447298858494001741434273513531;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,          -1.0 / 360.0,           1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,           -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0,     43867.0 / 244188.0,
    -174611.0 / 125400.0};

cplx stirling(cplx w)
{
    cplx s = (w - 0.5) * std::log(w) - w + kHalfLog2Pi;
    cplx winv = 1.0 / w;
    cplx w2 = winv * winv;
    cplx p = winv;
    for (double c : kStirling) {
        s += c * p;
        p *= w2;
    }
    return s;
}

bool is_nonpositive_integer(cplx z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// log sin(pi z), stable for large |Im z|; branch irrelevant to callers.
cplx log_sin_pi(cplx z)
{
    const double pi = std::numbers::pi;
    if (z.imag() == 0.0) {
        return std::log(cplx(std::sin(pi * z.real()), 0.0));
    }
    bool flip = z.imag() < 0.0;
    cplx w = flip ? std::conj(z) : z;
    cplx i(0.0, 1.0);
    cplx e = std::exp(2.0 * pi * i * w);
    cplx r = -i * pi * w + std::log(e - 1.0) - std::log(2.0) - i * (pi / 2.0);
    return flip ? std::conj(r) : r;
}

cplx lgamma_right(cplx z)
{
    int n = 0;
    while (std::abs(z + double(n)) < 15.0) {
        ++n;
    }
    if (n == 0) {
        return stirling(z);
    }
    cplx prod(1.0, 0.0);
    double arg = 0.0;
    for (int k = 0; k < n; ++k) {
        cplx f = z + double(k);
        prod *= f;
        arg += std::atan2(f.imag(), f.real());
    }
    return stirling(z + double(n)) - cplx(std::log(std::abs(prod)), arg);
}

} // namespace

cplx lgamma(cplx z)
{
    if (z.real() > 0.0) {
        return lgamma_right(z);
    }
    if (is_nonpositive_integer(z)) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return kLogPi - log_sin_pi(z) - lgamma_right(1.0 - z);
}

cplx rgamma(cplx z)
{
    if (is_nonpositive_integer(z)) {
        return {0.0, 0.0};
    }
    if (z.real() > 0.0) {
        return std::exp(-lgamma_right(z));
    }
    const double pi = std::numbers::pi;
    return std::sin(pi * z) / pi * std::exp(lgamma_right(1.0 - z));
}

double rgamma(double x)
{
    if (x <= 0.0 && std::floor(x) == x) {
        return 0.0;
    }
    if (x > 170.0) {
        return std::exp(-std::lgamma(x));
    }
    return 1.0 / std::tgamma(x);
}

double gamma_ratio(double x, double y)
{
    if (x > 0.0 && y > 0.0) {
        return boost::math::tgamma_ratio(x, y);
    }
    double ry = rgamma(y);
    if (ry == 0.0) {
        return 0.0;
    }
    if (x <= 0.0 && std::floor(x) == x) {
        return std::numeric_limits<double>::infinity();
    }
    if (x < 170.0 && y < 170.0) {
        return std::tgamma(x) * ry;
    }
    double sx = std::tgamma(x) < 0 ? -1.0 : 1.0;
    double sy = ry < 0 ? -1.0 : 1.0;
    return sx * sy * std::exp(std::lgamma(x) - std::lgamma(y));
}

cplx gamma_ratio(cplx x, cplx y)
{
    if (is_nonpositive_integer(y)) {
        return {0.0, 0.0};
    }
    if (x.real() > 0.0 && y.real() > 0.0) {
        return std::exp(lgamma_right(x) - lgamma_right(y));
    }
    if (is_nonpositive_integer(x)) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::exp(lgamma(x)) * rgamma(y);
}

namespace {

inline DD two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace

DD operator+(DD a, DD b)
{
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

DD operator-(DD a) { return {-a.hi, -a.lo}; }

DD operator-(DD a, DD b) { return a + (-b); }

DD operator*(DD a, DD b)
{
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

DD operator/(DD a, DD b)
{
    double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD(q3);
}

CDD operator+(const CDD& a, const CDD& b) { return {a.re + b.re, a.im + b.im}; }

CDD operator*(const CDD& a, const CDD& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CDD operator*(const CDD& a, DD s) { return {a.re * s, a.im * s}; }

CDD operator/(const CDD& a, DD s) { return {a.re / s, a.im / s}; }

} // namespace vdlab
