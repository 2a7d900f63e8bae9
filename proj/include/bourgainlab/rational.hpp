#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "bourgainlab/common.hpp"

namespace bourgainlab {

// Exact rational on int64 with int128 intermediates. Radii, densities and
// thresholds are kept rational so that set membership never depends on a
// float rounding at a boundary. Values that enter from floating point are
// snapped to denominator <= 2^32.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        require(den != 0, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

namespace detail {
using i128 = __int128;

// Reduce n/d (128-bit) to an int64 rational; snap by rounding if it does not fit.
inline Rational reduce128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { i128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    const i128 lim = static_cast<i128>(INT64_MAX);
    if (n <= lim && n >= -lim && d <= lim) {
        return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    // Snap: round to denominator 2^32. Only reachable through long chains of
    // products; all radius-bearing callers tolerate a 2^-32 perturbation.
    const i128 target = i128(1) << 32;
    i128 scaled = (n * target + (n >= 0 ? d / 2 : -d / 2)) / d;
    return Rational(static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(target));
}
}  // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
    return detail::reduce128(detail::i128(a.num) * b.den + detail::i128(b.num) * a.den,
                             detail::i128(a.den) * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
    return detail::reduce128(detail::i128(a.num) * b.den - detail::i128(b.num) * a.den,
                             detail::i128(a.den) * b.den);
}
inline Rational operator*(const Rational& a, const Rational& b) {
    return detail::reduce128(detail::i128(a.num) * b.num, detail::i128(a.den) * b.den);
}
inline Rational operator/(const Rational& a, const Rational& b) {
    require(b.num != 0, "rational division by zero");
    return detail::reduce128(detail::i128(a.num) * b.den, detail::i128(a.den) * b.num);
}
inline Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }

inline bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
inline bool operator<(const Rational& a, const Rational& b) {
    return detail::i128(a.num) * b.den < detail::i128(b.num) * a.den;
}
inline bool operator<=(const Rational& a, const Rational& b) {
    return detail::i128(a.num) * b.den <= detail::i128(b.num) * a.den;
}
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

inline std::int64_t floor_div(std::int64_t n, std::int64_t d) {
    std::int64_t q = n / d, r = n % d;
    return (r != 0 && ((r < 0) != (d < 0))) ? q - 1 : q;
}

inline std::int64_t rational_floor(const Rational& a) { return floor_div(a.num, a.den); }

inline Rational rational_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rational_abs(const Rational& a) { return a.num < 0 ? -a : a; }

// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational rational_from_double(double x, std::int64_t max_den = (std::int64_t(1) << 32)) {
    require(std::isfinite(x), "rational_from_double: non-finite input");
    bool neg = x < 0;
    double v = neg ? -x : x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        std::int64_t a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || p2 < 0 || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return neg ? -r : r;
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace bourgainlab
