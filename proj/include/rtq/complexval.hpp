#pragma once

#include <cmath>
#include <utility>

#include "rtq/double_double.hpp"
#include "rtq/rational.hpp"

namespace rtq {

// Backend operations for the two scalar types. Everything downstream is
// templated over Real in {double, DoubleDouble}.
template <typename Real>
struct real_ops;

template <>
struct real_ops<double> {
    static double from_ll(long long v) { return static_cast<double>(v); }
    static double from_rational(const Rational& r) {
        return static_cast<double>(r.num()) / static_cast<double>(r.den());
    }
    static double pi() { return 3.14159265358979323846; }
    static double sqrt(double v) { return std::sqrt(v); }
    static double sin_kernel(double x) { return std::sin(x); }
    static double cos_kernel(double x) { return std::cos(x); }
    static double abs(double v) { return std::fabs(v); }
    static double to_double(double v) { return v; }
    static constexpr const char* name() { return "double"; }
};

template <>
struct real_ops<DoubleDouble> {
    static dd from_ll(long long v) { return dd::from_ll(v); }
    static dd from_rational(const Rational& r) { return dd::from_ll(r.num()) / dd::from_ll(r.den()); }
    static dd pi() { return dd_pi(); }
    static dd sqrt(const dd& v) { return dd_sqrt(v); }
    static dd sin_kernel(const dd& x) { return dd_sin_kernel(x); }
    static dd cos_kernel(const dd& x) { return dd_cos_kernel(x); }
    static dd abs(const dd& v) { return rtq::abs(v); }
    static double to_double(const dd& v) { return v.to_double(); }
    static constexpr const char* name() { return "high"; }
};

// cos(pi*t), sin(pi*t) for exact rational t. The reduction into [0,1/4] is
// done on the rational, so the kernel always sees a small, well-conditioned
// argument; this is where argument exactness pays off.
template <typename Real>
std::pair<Real, Real> cospi_sinpi(Rational t) {
    using ops = real_ops<Real>;
    t = t.mod(2);
    Real sign(1.0);
    if (t >= Rational(1)) {
        t -= Rational(1);
        sign = -sign;
    }
    bool flip_cos = false;
    if (t > Rational(1, 2)) {
        t = Rational(1) - t;
        flip_cos = true; // cos(pi t) = -cos(pi(1-t)), sin unchanged
    }
    bool swap = false;
    if (t > Rational(1, 4)) {
        t = Rational(1, 2) - t;
        swap = true; // cos(pi t) = sin(pi t'), sin(pi t) = cos(pi t')
    }
    Real x = ops::pi() * ops::from_rational(t);
    Real c = ops::cos_kernel(x);
    Real s = ops::sin_kernel(x);
    if (swap) std::swap(c, s);
    if (flip_cos) c = -c;
    return {sign * c, sign * s};
}

template <typename Real>
Real sinpi(const Rational& t) {
    return cospi_sinpi<Real>(t).second;
}

template <typename Real>
Real cospi(const Rational& t) {
    return cospi_sinpi<Real>(t).first;
}

template <typename Real>
struct Complex {
    Real re{};
    Real im{};

    Complex() = default;
    Complex(Real r) : re(r) {}
    Complex(Real r, Real i) : re(r), im(i) {}

    Complex operator-() const { return {-re, -im}; }
    Complex conj() const { return {re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real n = b.re * b.re + b.im * b.im;
        Complex p = a * b.conj();
        return {p.re / n, p.im / n};
    }

    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    Real norm() const { return re * re + im * im; }
    Real abs() const { return real_ops<Real>::sqrt(norm()); }
};

// exp(i*pi*t) for exact rational t.
template <typename Real>
Complex<Real> unit_phase(const Rational& t) {
    auto [c, s] = cospi_sinpi<Real>(t);
    return {c, s};
}

template <typename Real>
Real ipow(Real base, long long e) {
    bool inv = e < 0;
    unsigned long long n = inv ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Real acc(1.0);
    Real b = base;
    while (n) {
        if (n & 1) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return inv ? Real(1.0) / acc : acc;
}

template <typename Real>
Complex<Real> cpow_int(Complex<Real> base, long long e) {
    bool inv = e < 0;
    unsigned long long n = inv ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Complex<Real> acc(Real(1.0));
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return inv ? Complex<Real>(Real(1.0)) / acc : acc;
}

// r^(k/2) for integer k and positive real r.
template <typename Real>
Real half_int_pow(Real base, long long k) {
    Real root = real_ops<Real>::sqrt(base);
    return ipow(root, k);
}

// Neumaier compensated accumulation. The representation sums cancel massively;
// tracking the error term costs little next to the exponential evaluations.
template <typename Real>
class NeumaierSum {
public:
    void add(const Real& v) {
        Real t = sum_ + v;
        if (real_ops<Real>::abs(sum_) >= real_ops<Real>::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

private:
    Real sum_{};
    Real comp_{};
};

template <typename Real>
class ComplexSum {
public:
    void add(const Complex<Real>& v) {
        re_.add(v.re);
        im_.add(v.im);
    }
    Complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum<Real> re_;
    NeumaierSum<Real> im_;
};

} // namespace rtq
