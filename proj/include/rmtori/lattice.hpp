#pragma once

#include "rmtori/field.hpp"
#include "rmtori/ideal.hpp"
#include "rmtori/numeric.hpp"
#include "rmtori/zmodule.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmtori {

/// An order Z + f*O_F of a real quadratic field, named by its conductor.
/// f = 1 is the maximal order O_F.
struct Order {
    FieldContext ctx;
    Int conductor;

    bool is_maximal() const { return conductor == 1; }

    /// The ring as a module: Z + Z*(f*omega).
    ZModule ring() const { return ZModule(ctx, 1, 1, 0, conductor); }

    bool operator==(const Order& o) const {
        return ctx.d() == o.ctx.d() && conductor == o.conductor;
    }
    bool operator!=(const Order& o) const { return !(*this == o); }
};

/// A pseudolattice Z*w1 + Z*w2 with generators in F and irrational ratio.
/// Generator pairs spanning the same group share the same normal form, which
/// is what equality compares.
class Pseudolattice {
public:
    Pseudolattice(const FieldContext& ctx, const QuadElem& w1, const QuadElem& w2)
        : w1_(w1), w2_(w2), hnf_(normal_basis(ctx, w1, w2)) {}

    explicit Pseudolattice(ZModule m)
        : w1_(m.basis_first()), w2_(m.basis_second()), hnf_(std::move(m)) {}

    static ZModule normal_basis(const FieldContext& ctx, const QuadElem& w1,
                                const QuadElem& w2) {
        if (w1.is_zero() || w2.is_zero()) throw std::invalid_argument("zero generator");
        if ((w2 / w1).y() == 0)
            throw std::invalid_argument("generator ratio is rational (span is not dense)");
        return ZModule::from_generators(ctx, {w1, w2});
    }

    const FieldContext& context() const { return hnf_.context(); }
    const QuadElem& w1() const { return w1_; }
    const QuadElem& w2() const { return w2_; }
    const ZModule& hnf() const { return hnf_; }

    bool contains(const QuadElem& a) const { return hnf_.contains(a); }

    Pseudolattice scaled(const QuadElem& lambda) const {
        return Pseudolattice(hnf_.scaled(lambda));
    }

    bool operator==(const Pseudolattice& o) const { return hnf_ == o.hnf_; }
    bool operator!=(const Pseudolattice& o) const { return hnf_ != o.hnf_; }

    std::string str() const { return hnf_.str(); }

private:
    QuadElem w1_, w2_;
    ZModule hnf_;
};

/// Integer matrix of one multiplier: alpha*w1 = a*w1 + b*w2 and
/// alpha*w2 = c*w1 + d*w2. alpha is then a root of
/// X^2 - (a+d)X + (ad - bc), and w1/w2 a root of cX^2 + (d-a)X - b.
struct MultiplierWitness {
    QuadElem alpha;
    Int a, b, c, d;
};

struct EndOrderInfo {
    Order order;
    ZModule module;
    std::vector<MultiplierWitness> witnesses;
};

namespace detail {

/// Solves alpha*w_i = x*w1 + y*w2 exactly; throws when the coefficients are
/// not integers (i.e. alpha is not a multiplier of the lattice).
inline MultiplierWitness multiplier_matrix(const QuadElem& alpha, const QuadElem& w1,
                                           const QuadElem& w2) {
    auto [p, q] = w1.omega_coords();
    auto [r, s] = w2.omega_coords();
    Rat det = p * s - q * r;
    if (det == 0) throw std::invalid_argument("degenerate generator pair");
    auto solve = [&](const QuadElem& target) -> std::pair<Int, Int> {
        auto [t, u] = target.omega_coords();
        Rat x = (t * s - u * r) / det;
        Rat y = (p * u - q * t) / det;
        if (denominator(x) != 1 || denominator(y) != 1)
            throw std::invalid_argument("element is not a multiplier of the lattice");
        return {numerator(x), numerator(y)};
    };
    auto [a, b] = solve(alpha * w1);
    auto [c, d] = solve(alpha * w2);
    return {alpha, a, b, c, d};
}

}  // namespace detail

/// The multiplier ring { alpha in F : alpha*L <= L } as an order, together
/// with its module form and multiplier-matrix witnesses for the ring
/// generators {1, f*omega}.
inline EndOrderInfo end_order(const Pseudolattice& L) {
    ZModule R = colon(L.hnf(), L.hnf());
    // Every multiplier ring in F is an order Z + Z*f*omega; its HNF is forced.
    if (R.q() != 1 || R.a() != 1 || R.b() != 0)
        throw std::runtime_error("multiplier ring is not an order (internal error)");
    const FieldContext& ctx = L.context();
    Order order{ctx, R.c()};
    QuadElem fw = QuadElem::from_omega_coords(ctx, 0, Rat(R.c()));
    std::vector<MultiplierWitness> wit;
    wit.push_back(detail::multiplier_matrix(QuadElem(ctx, 1, 0), L.w1(), L.w2()));
    wit.push_back(detail::multiplier_matrix(fw, L.w1(), L.w2()));
    return {order, R, wit};
}

/// Hom(L, M) carrier: the colon module (M : L) = { alpha : alpha*L <= M }.
/// Morphisms in the positive-multiplier convention are its elements with
/// alpha > 0; positivity stays an attribute, the module is returned whole.
inline ZModule hom_module(const Pseudolattice& L, const Pseudolattice& M) {
    return colon(M.hnf(), L.hnf());
}

/// Is alpha a morphism L -> M under the positive-multiplier convention?
inline bool is_positive_morphism(const QuadElem& alpha, const Pseudolattice& L,
                                 const Pseudolattice& M) {
    return alpha.sign() == Sign::Positive && hom_module(L, M).contains(alpha);
}

namespace detail {

/// Smallest k >= 1 with unit^k inside the given order.
inline Int unit_power_in_order(const QuadElem& unit, const Order& order,
                               std::uint64_t max_steps = max_steps_limit()) {
    ZModule ring = order.ring();
    QuadElem p = unit;
    for (std::uint64_t k = 1; k <= max_steps; ++k) {
        if (ring.contains(p)) return Int(k);
        p = p * unit;
    }
    throw std::runtime_error("unit_power_in_order: bound exceeded (internal error)");
}

}  // namespace detail

/// Homothety test: a positive witness beta with beta*L = M, if one exists.
///
/// Decided through ideal-class machinery: the multiplier rings must agree;
/// for the maximal order the transporter (M : L) must be principal. For a
/// conductor f > 1 the test runs on the O_F-closures and then scans the unit
/// orbit of the candidate, since only units of the smaller order fix L.
inline std::optional<QuadElem> is_homothetic(const Pseudolattice& L, const Pseudolattice& M) {
    const FieldContext& ctx = L.context();
    if (ctx.d() != M.context().d()) throw std::invalid_argument("lattices in different fields");
    EndOrderInfo eL = end_order(L), eM = end_order(M);
    if (eL.order != eM.order) return std::nullopt;

    auto positive = [](QuadElem b) {
        return b.sign() == Sign::Negative ? -b : b;
    };

    if (eL.order.is_maximal()) {
        // L and M are themselves fractional ideals; beta*L = M iff beta
        // generates the invertible transporter M*L^{-1} = (M : L).
        FractionalIdeal T(hom_module(L, M));
        auto g = is_principal(T);
        if (!g) return std::nullopt;
        return positive(*g);
    }

    // Conductor f > 1: compare O_F-closures first.
    ZModule unit_mod = FractionalIdeal::unit_ideal(ctx).module();
    FractionalIdeal Lc(product(L.hnf(), unit_mod));
    FractionalIdeal Mc(product(M.hnf(), unit_mod));
    FractionalIdeal T = Mc * Lc.inverse();
    auto g = is_principal(T);
    if (!g) return std::nullopt;
    QuadElem eps = principal_cycle(ctx).unit;
    Int m = detail::unit_power_in_order(eps, eL.order);
    QuadElem cand = *g;
    for (Int k = 0; k < m; ++k) {
        if (L.hnf().scaled(cand) == M.hnf()) return positive(cand);
        cand = cand * eps;
    }
    return std::nullopt;
}

}  // namespace rmtori
