#include "rtq/double_double.hpp"

#include <cstdio>

namespace rtq {

dd DoubleDouble::from_ll(long long x) {
    // Split so every intermediate is exactly representable; |x| can exceed 2^53.
    long long h = x / (1LL << 32);
    long long l = x % (1LL << 32);
    return dd(static_cast<double>(h)) * dd(4294967296.0) + dd(static_cast<double>(l));
}

dd dd_sqrt(const dd& a) {
    if (a.is_zero()) return dd(0.0);
    // One Karp iteration from a double seed reaches full dd precision.
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd err = a - dd(ax) * dd(ax);
    double s, e;
    ddops::quick_two_sum(ax, err.hi * (x * 0.5), s, e);
    return {s, e};
}

// Taylor expansion; |x| <= pi/4 so 16 terms reach below the dd noise floor.
dd dd_sin_kernel(const dd& x) {
    dd x2 = x * x;
    dd term = x;
    dd sum = x;
    for (int k = 1; k <= 17; ++k) {
        term = term * x2 / dd(static_cast<double>(2 * k) * static_cast<double>(2 * k + 1));
        sum = (k % 2 == 1) ? sum - term : sum + term;
        if (std::abs(term.hi) < 1e-36) break;
    }
    return sum;
}

dd dd_cos_kernel(const dd& x) {
    dd x2 = x * x;
    dd term(1.0);
    dd sum(1.0);
    for (int k = 1; k <= 17; ++k) {
        term = term * x2 / dd(static_cast<double>(2 * k - 1) * static_cast<double>(2 * k));
        sum = (k % 2 == 1) ? sum - term : sum + term;
        if (std::abs(term.hi) < 1e-36) break;
    }
    return sum;
}

std::string to_string(const dd& a, int digits) {
    // hi carries ~16 digits, lo the rest; print via long double goes only to
    // ~19, so assemble decimal digits manually.
    if (a.is_zero()) return "0";
    dd v = abs(a);
    std::string out = a.hi < 0 ? "-" : "";
    int exp10 = static_cast<int>(std::floor(std::log10(std::abs(v.hi))));
    // Normalize v into [1, 10).
    dd scale(1.0);
    for (int i = 0; i < std::abs(exp10); ++i) scale = scale * dd(10.0);
    v = exp10 >= 0 ? v / scale : v * scale;
    if (v.hi >= 10.0) {
        v = v / dd(10.0);
        ++exp10;
    }
    if (v.hi < 1.0) {
        v = v * dd(10.0);
        --exp10;
    }
    for (int i = 0; i < digits; ++i) {
        int digit = static_cast<int>(v.hi);
        if (digit < 0) digit = 0;
        if (digit > 9) digit = 9;
        out += static_cast<char>('0' + digit);
        if (i == 0) out += '.';
        v = (v - dd(static_cast<double>(digit))) * dd(10.0);
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "e%+03d", exp10);
    return out + buf;
}

} // namespace rtq
