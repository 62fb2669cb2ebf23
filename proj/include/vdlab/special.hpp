#pragma once

#include <cmath>
#include <complex>

namespace vdlab {

using cplx = std::complex<double>;

/// Log-gamma on the complex plane. For Re z > 0 the branch is the analytic
/// continuation from the positive axis; elsewhere reflection is used and
/// the imaginary part is only meaningful modulo 2 pi.
cplx lgamma(cplx z);

/// 1/Gamma(z), entire, exact zeros at the non-positive integers.
cplx rgamma(cplx z);

/// Gamma(x)/Gamma(y) without intermediate overflow.
cplx gamma_ratio(cplx x, cplx y);
double gamma_ratio(double x, double y);

/// Real 1/Gamma.
double rgamma(double x);

/// Derivative of an analytic, real-on-real function at a real point
/// by the complex-step rule.
template <class F>
double complex_step_derivative(F&& f, double x, double h = 1e-20)
{
    return std::imag(f(cplx(x, h))) / h;
}

/// Double-double number (unevaluated sum hi + lo).
struct DD {
    double hi = 0.0;
    double lo = 0.0;
    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}
    double value() const { return hi + lo; }
};

DD operator+(DD a, DD b);
DD operator-(DD a, DD b);
DD operator*(DD a, DD b);
DD operator/(DD a, DD b);
DD operator-(DD a);

/// Complex double-double.
struct CDD {
    DD re, im;
    CDD() = default;
    CDD(DD r, DD i) : re(r), im(i) {}
    explicit CDD(cplx z) : re(z.real()), im(z.imag()) {}
    cplx value() const { return {re.value(), im.value()}; }
};

CDD operator+(const CDD& a, const CDD& b);
CDD operator*(const CDD& a, const CDD& b);
CDD operator*(const CDD& a, DD s);
CDD operator/(const CDD& a, DD s);

/// Neumaier compensated accumulator.
template <class T>
class CompensatedSum {
public:
    void add(T x)
    {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <>
inline void CompensatedSum<cplx>::add(cplx x)
{
    auto step = [](double& s, double& c, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    };
    double sr = sum_.real(), si = sum_.imag();
    double cr = comp_.real(), ci = comp_.imag();
    step(sr, cr, x.real());
    step(si, ci, x.imag());
    sum_ = {sr, si};
    comp_ = {cr, ci};
}

} // namespace vdlab
