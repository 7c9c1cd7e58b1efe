#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace rmtori {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// Floor division, exact for all sign combinations. b must be nonzero.
inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: division by zero");
    Int q = a / b;          // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// a mod b with result in [0, |b|).
inline Int floor_mod(const Int& a, const Int& b) {
    Int r = a - floor_div(a, b) * b;
    return r;
}

/// num/den as an exact rational; unlike the Rat two-argument constructor this
/// accepts negative denominators.
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rat(std::move(num), std::move(den));
}

inline Int rat_floor(const Rat& r) { return floor_div(numerator(r), denominator(r)); }
inline Int rat_ceil(const Rat& r) { return -floor_div(-numerator(r), denominator(r)); }

/// Largest s with s*s <= n. n must be nonnegative.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    Int s = isqrt(n);
    return s * s == n;
}

/// Trial-division squarefreeness check, intended for desk-scale radicands.
inline bool is_squarefree(std::int64_t n) {
    if (n <= 0) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Kronecker symbol (a|p) for prime p.
inline int kronecker_prime(const Int& a, std::int64_t p) {
    if (p == 2) {
        Int r = floor_mod(a, 8);
        if (r % 2 == 0) return 0;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    Int ip(p);
    Int r = floor_mod(a, ip);
    if (r == 0) return 0;
    Int e = boost::multiprecision::powm(r, Int((p - 1) / 2), ip);
    return e == 1 ? 1 : -1;
}

/// Exact rational as "p" or "p/q"; the canonical wire form used everywhere.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

/// Iteration safety bound for continued-fraction and reduction loops.
/// Overridable through the RMTORI_MAX_STEPS environment variable.
inline std::uint64_t max_steps_limit() {
    static const std::uint64_t limit = [] {
        if (const char* env = std::getenv("RMTORI_MAX_STEPS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(1000000);
    }();
    return limit;
}

/// Splits n = s^2 * f with f squarefree. Returns (s, f). n must be positive.
inline std::pair<Int, Int> square_part(const Int& n) {
    if (n <= 0) throw std::domain_error("square_part: argument must be positive");
    Int s = 1, f = n;
    for (Int p = 2; p * p <= f; ++p) {
        while (f % (p * p) == 0) {
            f /= p * p;
            s *= p;
        }
    }
    return {s, f};
}

}  // namespace rmtori
