#pragma once

#include "rmtori/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace rmtori {

/// Indefinite binary quadratic form A*x^2 + B*x*y + C*y^2 of positive
/// nonsquare discriminant B^2 - 4AC. Used as an independent cross-check of
/// the narrow class number; deliberately knows nothing about ideals.
struct BQF {
    Int A, B, C;

    Int discriminant() const { return B * B - 4 * A * C; }

    /// Reduced iff 0 < B < sqrt(D) and sqrt(D) - B < 2|A| < sqrt(D) + B,
    /// decided by exact squaring.
    bool is_reduced() const {
        Int D = discriminant();
        if (B <= 0 || B * B >= D) return false;
        Int t = 2 * abs(A);
        if ((t + B) * (t + B) <= D) return false;  // need sqrt(D) < 2|A| + B
        Int u = t - B;
        return u <= 0 || u * u < D;  // need 2|A| - B < sqrt(D)
    }

    bool operator==(const BQF& o) const { return A == o.A && B == o.B && C == o.C; }
    bool operator<(const BQF& o) const {
        return std::tie(A, B, C) < std::tie(o.A, o.B, o.C);
    }
};

namespace detail {

/// Largest r = target (mod 2m) with r <= floor(sqrt(D)); the canonical
/// residue for the reduction neighbor step.
inline Int windowed_residue(const Int& target, const Int& m, const Int& sqrtD) {
    Int two_m = 2 * m;
    Int r = floor_mod(target, two_m);
    return r + two_m * floor_div(sqrtD - r, two_m);
}

}  // namespace detail

/// Reduction neighbor step rho: (A, B, C) -> (C, r, (r^2-D)/(4C)) with
/// r = -B (mod 2|C|) chosen in the window (sqrt(D) - 2|C|, sqrt(D)).
/// Preserves the discriminant exactly and walks reduced forms along their
/// cycle.
inline BQF rho(const BQF& f) {
    Int D = f.discriminant();
    Int r = detail::windowed_residue(-f.B, abs(f.C), isqrt(D));
    return BQF{f.C, r, (r * r - D) / (4 * f.C)};
}

inline void validate_form_discriminant(const Int& D) {
    if (D <= 0) throw std::invalid_argument("discriminant must be positive");
    if (is_square(D)) throw std::invalid_argument("discriminant must not be a square");
    Int m = floor_mod(D, 4);
    if (m != 0 && m != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
}

/// All reduced forms of discriminant D, enumerated exhaustively: B runs over
/// the residue class of D mod 2 below sqrt(D), and A over the divisor pairs
/// of (B^2 - D)/4 passing the reduced inequalities.
inline std::vector<BQF> reduced_forms(const Int& D) {
    validate_form_discriminant(D);
    std::set<BQF> out;
    Int s = isqrt(D);
    for (Int B = floor_mod(D, 2) == 0 ? Int(2) : Int(1); B <= s; B += 2) {
        Int prod4 = B * B - D;  // = 4*A*C < 0
        if (prod4 % 4 != 0) continue;
        Int n = -prod4 / 4;  // = |A*C|
        for (Int a = 1; a * a <= n; ++a) {
            if (n % a != 0) continue;
            for (const Int& absA : {a, n / a}) {
                for (int sign : {1, -1}) {
                    BQF f{sign * absA, B, -(n / absA) * sign};
                    if (f.is_reduced()) out.insert(f);
                }
            }
        }
    }
    return std::vector<BQF>(out.begin(), out.end());
}

/// Cycles of reduced forms under rho.
inline std::vector<std::vector<BQF>> form_cycles(const Int& D) {
    std::vector<BQF> forms = reduced_forms(D);
    std::set<BQF> seen;
    std::vector<std::vector<BQF>> cycles;
    for (const BQF& f : forms) {
        if (seen.count(f)) continue;
        std::vector<BQF> cycle;
        BQF g = f;
        do {
            if (!g.is_reduced()) throw std::runtime_error("rho left the reduced set");
            if (seen.count(g)) throw std::runtime_error("rho merged two cycles");
            seen.insert(g);
            cycle.push_back(g);
            g = rho(g);
        } while (!(g == f));
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

/// Number of rho-cycles of reduced forms = narrow class number for the
/// field of the same fundamental discriminant.
inline Int form_class_count(const Int& D) {
    return Int(form_cycles(D).size());
}

}  // namespace rmtori
