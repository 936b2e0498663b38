#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace rtq {

// Unevaluated sum of two doubles giving ~32 significant decimal digits.
// This is the "high" precision backend: the invariant sums cancel heavily,
// and double-double keeps the noise floor near 1e-30 for large-r sweeps.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    DoubleDouble(double h) : hi(h), lo(0.0) {}
    DoubleDouble(double h, double l) : hi(h), lo(l) {}

    static DoubleDouble from_ll(long long x);

    double to_double() const { return hi + lo; }
    bool is_zero() const { return hi == 0.0 && lo == 0.0; }

    DoubleDouble operator-() const { return {-hi, -lo}; }
};

using dd = DoubleDouble;

namespace ddops {

inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

} // namespace ddops

inline dd operator+(const dd& a, const dd& b) {
    double s1, s2, t1, t2;
    ddops::two_sum(a.hi, b.hi, s1, s2);
    ddops::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    ddops::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    ddops::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    double p1, p2;
    ddops::two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    double s, e;
    ddops::quick_two_sum(p1, p2, s, e);
    return {s, e};
}

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    double s, e;
    ddops::quick_two_sum(q1, q2, s, e);
    return dd(s, e) + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline dd abs(const dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

dd dd_sqrt(const dd& a);

// sin/cos kernels for |x| <= pi/4, full double-double accuracy.
dd dd_sin_kernel(const dd& x);
dd dd_cos_kernel(const dd& x);

inline const dd& dd_pi() {
    static const dd pi(3.141592653589793116e+00, 1.224646799147353207e-16);
    return pi;
}

std::string to_string(const dd& a, int digits = 32);

} // namespace rtq
