#pragma once

#include "rmtori/continued_fraction.hpp"
#include "rmtori/field.hpp"
#include "rmtori/ideal.hpp"
#include "rmtori/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rmtori {

/// Fundamental unit data: epsilon > 1 generating the units mod {+-1}, its
/// norm, and the index [O_F^* : F^+ \cap O_F^*] (4 when N(eps) = -1, else 2).
struct UnitInfo {
    QuadElem epsilon;
    int unit_norm;
    int tp_index;
};

inline UnitInfo fundamental_unit(const FieldContext& ctx) {
    QuadElem eps = principal_cycle(ctx).unit;
    int n = eps.norm() == 1 ? 1 : -1;
    return {eps, n, n == -1 ? 4 : 2};
}

/// An ideal class (ordinary or narrow), held by its canonical representative:
/// the reduced ideal of smallest norm in the class, ties broken by HNF order.
class IdealClass {
public:
    static IdealClass of(const FractionalIdeal& A, bool narrow = false) {
        return IdealClass(narrow ? canonical_narrow_rep(A) : canonical_class_rep(A), narrow);
    }

    static IdealClass identity(const FieldContext& ctx, bool narrow = false) {
        return of(FractionalIdeal::unit_ideal(ctx), narrow);
    }

    const FractionalIdeal& rep() const { return rep_; }
    bool narrow() const { return narrow_; }
    const FieldContext& context() const { return rep_.context(); }

    IdealClass operator*(const IdealClass& o) const {
        if (narrow_ != o.narrow_) throw std::invalid_argument("mixed class kinds");
        return of(rep_ * o.rep_, narrow_);
    }

    IdealClass inverse() const { return of(rep_.inverse(), narrow_); }

    bool is_identity() const { return *this == identity(context(), narrow_); }

    bool operator==(const IdealClass& o) const {
        return narrow_ == o.narrow_ && rep_ == o.rep_;
    }
    bool operator!=(const IdealClass& o) const { return !(*this == o); }
    bool operator<(const IdealClass& o) const {
        return std::make_pair(rep_.norm(), rep_.module().key()) <
               std::make_pair(o.rep_.norm(), o.rep_.module().key());
    }

    std::string str() const { return "[" + rep_.str() + "]"; }

private:
    IdealClass(FractionalIdeal rep, bool narrow) : rep_(std::move(rep)), narrow_(narrow) {}

    FractionalIdeal rep_;
    bool narrow_;
};

/// The prime ideal above p with norm p, when p is not inert: (p, (B+sqrt D)/2)
/// with B^2 = D mod 4p. Returns nothing for inert p.
inline std::optional<FractionalIdeal> prime_ideal_above(const FieldContext& ctx,
                                                        std::int64_t p) {
    Int D(ctx.discriminant());
    if (kronecker_prime(D, p) < 0) return std::nullopt;
    for (Int B = floor_mod(D, 2); B < 2 * p; B += 2) {
        if ((B * B - D) % (4 * p) == 0) {
            QuadElem gamma(ctx, make_rat(B, 2), Rat(ctx.half_generator() ? 1 : 2, 2));
            FractionalIdeal P = FractionalIdeal::from_z_basis(ctx, QuadElem(ctx, Rat(p), 0), gamma);
            if (P.norm() != Rat(p))
                throw std::runtime_error("prime ideal construction failed (internal error)");
            return P;
        }
    }
    throw std::runtime_error("no square root of D mod 4p (internal error)");
}

/// Class group data. `structure` lists the invariant factors d1 | d2 | ...
/// of the finite abelian group (empty for the trivial group).
struct ClassGroup {
    FieldContext ctx;
    bool narrow;
    Int h;
    std::vector<IdealClass> reps;
    std::vector<Int> structure;

    const IdealClass& identity() const { return reps.front(); }
};

namespace detail {

/// Invariant factors of a finite abelian group given by a multiplication
/// table: repeatedly split off a cyclic factor of maximal order.
inline std::vector<Int> abelian_invariants(std::vector<std::vector<std::size_t>> mul,
                                           std::size_t id) {
    std::vector<Int> out;
    while (mul.size() > 1) {
        std::size_t n = mul.size();
        auto order_of = [&](std::size_t i) {
            std::size_t x = i, k = 1;
            while (x != id) {
                x = mul[x][i];
                ++k;
            }
            return k;
        };
        std::size_t best = id, best_ord = 1;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t o = order_of(i);
            if (o > best_ord) {
                best = i;
                best_ord = o;
            }
        }
        // cosets of <best>, keyed by their minimal member
        std::vector<std::size_t> subgroup;
        for (std::size_t x = best;; x = mul[x][best]) {
            subgroup.push_back(x);
            if (x == id) break;
        }
        std::vector<std::size_t> coset_key(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t key = x;
            for (std::size_t h : subgroup) key = std::min(key, mul[x][h]);
            coset_key[x] = key;
        }
        std::vector<std::size_t> keys;
        for (std::size_t x = 0; x < n; ++x)
            if (coset_key[x] == x) keys.push_back(x);
        std::vector<std::size_t> index_of(n);
        for (std::size_t i = 0; i < keys.size(); ++i) index_of[keys[i]] = i;
        std::vector<std::vector<std::size_t>> qmul(keys.size(),
                                                   std::vector<std::size_t>(keys.size()));
        for (std::size_t i = 0; i < keys.size(); ++i)
            for (std::size_t j = 0; j < keys.size(); ++j)
                qmul[i][j] = index_of[coset_key[mul[keys[i]][keys[j]]]];
        std::size_t qid = index_of[coset_key[id]];
        out.insert(out.begin(), Int(best_ord));
        mul = std::move(qmul);
        id = qid;
    }
    return out;  // ascending divisibility chain d1 | d2 | ... | dk
}

/// Closure of the subgroup generated by the given classes, with identity
/// first and the remaining classes in canonical order.
inline std::vector<IdealClass> close_under_multiplication(const IdealClass& id,
                                                          std::vector<IdealClass> gens) {
    std::vector<IdealClass> classes = {id};
    std::deque<IdealClass> queue(classes.begin(), classes.end());
    auto known = [&](const IdealClass& c) {
        return std::find(classes.begin(), classes.end(), c) != classes.end();
    };
    while (!queue.empty()) {
        IdealClass cur = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            IdealClass next = cur * g;
            if (!known(next)) {
                classes.push_back(next);
                queue.push_back(next);
            }
        }
    }
    std::sort(classes.begin() + 1, classes.end());
    return classes;
}

inline std::vector<Int> structure_of(const std::vector<IdealClass>& classes) {
    std::size_t n = classes.size();
    std::vector<std::vector<std::size_t>> mul(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IdealClass p = classes[i] * classes[j];
            auto it = std::find(classes.begin(), classes.end(), p);
            if (it == classes.end())
                throw std::runtime_error("class set not closed (internal error)");
            mul[i][j] = static_cast<std::size_t>(it - classes.begin());
        }
    return abelian_invariants(std::move(mul), 0);
}

}  // namespace detail

/// The class group C(F): prime ideals of norm up to the Minkowski bound
/// sqrt(D)/2 generate it; closure happens modulo principality.
inline ClassGroup class_group(const FieldContext& ctx) {
    std::vector<IdealClass> gens;
    Int D(ctx.discriminant());
    for (std::int64_t p = 2; Int(4) * p * p <= D; ++p) {
        if (!is_prime(p)) continue;
        if (auto P = prime_ideal_above(ctx, p)) gens.push_back(IdealClass::of(*P, false));
    }
    auto classes =
        detail::close_under_multiplication(IdealClass::identity(ctx, false), std::move(gens));
    ClassGroup out{ctx, false, Int(classes.size()), classes, detail::structure_of(classes)};
    return out;
}

struct NarrowClassGroupResult {
    ClassGroup group;
    /// Direct enumeration agrees with the class-field-theoretic count
    /// 4*h / [O_F^* : F^+ \cap O_F^*].
    bool formula_check;
    /// The narrow-class action on RM torus classes is faithful exactly when
    /// the unit index is 4, i.e. N(eps) = -1.
    bool faithful;
};

/// The narrow class group C(F)^+, computed directly with the narrow
/// principality test and cross-checked against the unit-index formula.
inline NarrowClassGroupResult narrow_class_group(const FieldContext& ctx) {
    std::vector<IdealClass> gens;
    Int D(ctx.discriminant());
    for (std::int64_t p = 2; Int(4) * p * p <= D; ++p) {
        if (!is_prime(p)) continue;
        if (auto P = prime_ideal_above(ctx, p)) gens.push_back(IdealClass::of(*P, true));
    }
    // The kernel of C(F)+ -> C(F) is hit by the principal ideal (sqrt d).
    gens.push_back(IdealClass::of(FractionalIdeal::principal(QuadElem(ctx, 0, 1)), true));
    auto classes =
        detail::close_under_multiplication(IdealClass::identity(ctx, true), std::move(gens));
    ClassGroup group{ctx, true, Int(classes.size()), classes, detail::structure_of(classes)};

    UnitInfo u = fundamental_unit(ctx);
    Int h = class_group(ctx).h;
    bool formula = (group.h * u.tp_index == 4 * h);
    return {std::move(group), formula, u.tp_index == 4};
}

}  // namespace rmtori
