#pragma once

#include "rmtori/continued_fraction.hpp"
#include "rmtori/field.hpp"
#include "rmtori/numeric.hpp"
#include "rmtori/zmodule.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmtori {

/// Fractional ideal of the maximal order O_F, kept as a rank-2 module in
/// Hermite normal form. Construction rejects modules that are not closed
/// under multiplication by omega; it never silently fixes them.
class FractionalIdeal {
public:
    explicit FractionalIdeal(ZModule m) : m_(std::move(m)) {
        if (!m_.is_omega_closed())
            throw std::invalid_argument("module is not an O_F-module (not omega-closed)");
    }

    /// O_F-module generated by the given elements (the principal ideal for a
    /// single generator). At least one generator must be nonzero.
    static FractionalIdeal generated_by(const FieldContext& ctx,
                                        const std::vector<QuadElem>& gens) {
        std::vector<QuadElem> span;
        QuadElem w = ctx.omega();
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            span.push_back(g);
            span.push_back(g * w);
        }
        if (span.empty()) throw std::invalid_argument("all generators are zero");
        return FractionalIdeal(ZModule::from_generators(ctx, span));
    }

    static FractionalIdeal principal(const QuadElem& alpha) {
        return generated_by(alpha.context(), {alpha});
    }

    static FractionalIdeal unit_ideal(const FieldContext& ctx) {
        return FractionalIdeal(ZModule(ctx, 1, 1, 0, 1));
    }

    /// Z-span of two explicit basis elements; must already be omega-closed.
    static FractionalIdeal from_z_basis(const FieldContext& ctx, const QuadElem& e1,
                                        const QuadElem& e2) {
        return FractionalIdeal(ZModule::from_generators(ctx, {e1, e2}));
    }

    const ZModule& module() const { return m_; }
    const FieldContext& context() const { return m_.context(); }

    /// Module index [O_F : A], extended multiplicatively to fractional ideals.
    Rat norm() const { return m_.covolume(); }

    bool contains(const QuadElem& e) const { return m_.contains(e); }

    friend FractionalIdeal operator*(const FractionalIdeal& A, const FractionalIdeal& B) {
        return FractionalIdeal(product(A.m_, B.m_));
    }

    FractionalIdeal conj_ideal() const { return FractionalIdeal(m_.conj_module()); }

    /// Inverse in the ideal group, via the conjugate: A^{-1} = conj(A)/N(A).
    FractionalIdeal inverse() const {
        Rat n = norm();
        ZModule c = m_.conj_module();
        QuadElem scale = QuadElem(context(), Rat(1) / n, 0);
        return FractionalIdeal(c.scaled(scale));
    }

    FractionalIdeal scaled(const QuadElem& lambda) const {
        return FractionalIdeal(m_.scaled(lambda));
    }

    /// Largest rational s with A = s * (integral primitive ideal).
    Rat content() const { return Rat(m_.c(), m_.q()); }

    /// The integral primitive ideal P with A = content() * P.
    FractionalIdeal primitive_part() const {
        const FieldContext& ctx = context();
        Int a = m_.a() / m_.c();
        Int b = m_.b() / m_.c();
        if (a * m_.c() != m_.a() || b * m_.c() != m_.b())
            throw std::runtime_error("ideal HNF lacks divisibility (internal error)");
        return FractionalIdeal(ZModule(ctx, 1, a, floor_mod(b, a), 1));
    }

    bool is_integral() const { return m_.q() == 1; }
    bool is_primitive() const { return m_.q() == 1 && m_.c() == 1; }

    /// Standard form (a, B) of a primitive integral ideal:
    /// A = Z*a + Z*(B + sqrt(D))/2 with B matching the parity of D,
    /// normalized into the window sqrt(D) - 2a < B < sqrt(D).
    std::pair<Int, Int> standard_form() const {
        if (!is_primitive()) throw std::invalid_argument("standard form needs a primitive ideal");
        const FieldContext& ctx = context();
        Int a = m_.a();
        Int B = 2 * m_.b();
        if (ctx.half_generator()) B += 1;
        Int s = isqrt(Int(ctx.discriminant()));
        B = B + 2 * a * floor_div(s - B, 2 * a);  // largest B' = B mod 2a with B' <= floor(sqrt D)
        return {a, B};
    }

    /// Reduced in the classical sense: the primitive part contains no nonzero
    /// element smaller than its norm in both embeddings. Decided by exact
    /// inequalities on the standard form.
    bool is_reduced() const {
        auto [a, B] = primitive_part().standard_form();
        Int D(context().discriminant());
        if (B <= 0) return false;
        Int t = 2 * a - B;
        return t <= 0 || t * t < D;
    }

    bool operator==(const FractionalIdeal& o) const { return m_ == o.m_; }
    bool operator!=(const FractionalIdeal& o) const { return m_ != o.m_; }
    bool operator<(const FractionalIdeal& o) const { return m_ < o.m_; }

    std::string str() const { return m_.str(); }

private:
    ZModule m_;
};

/// One station of a reduction walk: A = lambda * ideal, ideal integral
/// primitive.
struct ReductionStep {
    FractionalIdeal ideal;
    QuadElem lambda;
};

namespace detail {

/// Shared walker: starting from A, iterates the surd step, yielding the
/// current primitive ideal and the exact multiplier relating it to A.
class IdealWalker {
public:
    explicit IdealWalker(const FractionalIdeal& A)
        : ctx_(A.context()),
          it_(make_iterator(A)),
          lambda_(QuadElem(ctx_, A.content(), 0)) {
        // A = lambda * primitive(A) at the start; steps keep A = lambda * current.
    }

    const FieldContext& context() const { return ctx_; }
    std::pair<Int, Int> key() const { return it_.key(); }
    bool at_reduced() const { return it_.is_reduced(); }
    const QuadElem& lambda() const { return lambda_; }

    FractionalIdeal current_ideal() const {
        Int a = abs(it_.Q()) / 2;
        QuadElem e1(ctx_, Rat(a), 0);
        QuadElem e2(ctx_, Rat(it_.P(), 2), Rat(ctx_.half_generator() ? 1 : 2, 2));
        return FractionalIdeal::from_z_basis(ctx_, e1, e2);
    }

    void step() {
        Int q_old = it_.Q();
        QuadElem theta = it_.value();
        Int q = it_.step();
        QuadElem frac = theta - QuadElem(ctx_, Rat(q), 0);
        lambda_ = lambda_ * frac * make_rat(q_old, it_.Q());
    }

private:
    static SurdIterator make_iterator(const FractionalIdeal& A) {
        FractionalIdeal P = A.primitive_part();
        Int a = P.module().a();
        const FieldContext& ctx = A.context();
        Int B = 2 * P.module().b();
        if (ctx.half_generator()) B += 1;
        Int scale = ctx.half_generator() ? 1 : 2;
        return SurdIterator(ctx, B, 2 * a, scale);
    }

    FieldContext ctx_;
    SurdIterator it_;
    QuadElem lambda_;
};

}  // namespace detail

/// Reduces A to an equivalent reduced primitive integral ideal R with
/// A = lambda * R, lambda tracked exactly through the walk.
inline ReductionStep reduce_ideal(const FractionalIdeal& A,
                                  std::uint64_t max_steps = max_steps_limit()) {
    detail::IdealWalker w(A);
    for (std::uint64_t i = 0; i < max_steps; ++i) {
        if (w.at_reduced()) return {w.current_ideal(), w.lambda()};
        w.step();
    }
    throw std::runtime_error("reduce_ideal: step bound exceeded (internal error)");
}

/// The full cycle of reduced ideals equivalent to A, each with its exact
/// multiplier (A = lambda_i * I_i). The cycle starts at the reduction
/// endpoint of A and closes after one full period.
inline std::vector<ReductionStep> reduced_cycle(const FractionalIdeal& A,
                                                std::uint64_t max_steps = max_steps_limit()) {
    detail::IdealWalker w(A);
    std::uint64_t i = 0;
    for (; i < max_steps && !w.at_reduced(); ++i) w.step();
    if (!w.at_reduced()) throw std::runtime_error("reduced_cycle: no reduced ideal found");
    auto start = w.key();
    std::vector<ReductionStep> cycle;
    for (; i < max_steps; ++i) {
        cycle.push_back({w.current_ideal(), w.lambda()});
        w.step();
        if (w.key() == start) return cycle;
    }
    throw std::runtime_error("reduced_cycle: step bound exceeded (internal error)");
}

/// The cycle of reduced principal ideals, each paired with an exact
/// generator, plus the fundamental unit (> 1) accumulated around one period.
struct PrincipalCycle {
    std::vector<std::pair<FractionalIdeal, QuadElem>> members;
    QuadElem unit;

    const QuadElem* generator_of(const FractionalIdeal& R) const {
        for (const auto& [ideal, gen] : members)
            if (ideal == R) return &gen;
        return nullptr;
    }
};

inline PrincipalCycle principal_cycle(const FieldContext& ctx,
                                      std::uint64_t max_steps = max_steps_limit()) {
    detail::IdealWalker w(FractionalIdeal::unit_ideal(ctx));
    std::uint64_t i = 0;
    for (; i < max_steps && !w.at_reduced(); ++i) w.step();
    if (!w.at_reduced()) throw std::runtime_error("principal_cycle: no reduced ideal found");
    auto start = w.key();
    QuadElem lambda_start = w.lambda();
    PrincipalCycle pc;
    pc.unit = QuadElem(ctx, 1, 0);
    for (; i < max_steps; ++i) {
        // O_F = lambda * R, so R = (1/lambda).
        pc.members.emplace_back(w.current_ideal(), w.lambda().inverse());
        w.step();
        if (w.key() == start) {
            QuadElem u = lambda_start / w.lambda();
            if (u == QuadElem(ctx, 1, 0) || u == QuadElem(ctx, -1, 0))
                throw std::runtime_error("principal_cycle: trivial unit (internal error)");
            // Normalize to the generator > 1 of the unit group mod {+-1}.
            if (u.sign() == Sign::Negative) u = -u;
            if (u < QuadElem(ctx, 1, 0)) u = u.inverse();
            pc.unit = u;
            return pc;
        }
    }
    throw std::runtime_error("principal_cycle: step bound exceeded (internal error)");
}

/// Principality test through the reduced-ideal cycle. Returns an exact
/// generator (normalized positive) when A is principal. With narrow = true
/// the generator must be totally positive; the unit orbit +-eps^k * alpha is
/// searched for one.
inline std::optional<QuadElem> is_principal(const FractionalIdeal& A, bool narrow = false) {
    const FieldContext& ctx = A.context();
    ReductionStep red = reduce_ideal(A);
    PrincipalCycle pc = principal_cycle(ctx);
    const QuadElem* g = pc.generator_of(red.ideal);
    if (!g) return std::nullopt;
    QuadElem alpha = red.lambda * (*g);
    if (FractionalIdeal::principal(alpha) != A)
        throw std::runtime_error("is_principal: generator check failed (internal error)");
    if (!narrow) {
        if (alpha.sign() == Sign::Negative) alpha = -alpha;
        return alpha;
    }
    // Any generator is +-eps^k * alpha; a totally positive one exists iff
    // some orbit member has positive norm, and k in {0, 1} already decides.
    for (const QuadElem& cand : {alpha, pc.unit * alpha}) {
        if (cand.is_totally_positive()) return cand;
        if ((-cand).is_totally_positive()) return -cand;
    }
    return std::nullopt;
}

/// Canonical representative of the ideal class of A: the reduced ideal of
/// smallest norm in the class, ties broken by lexicographic HNF.
inline FractionalIdeal canonical_class_rep(const FractionalIdeal& A) {
    auto cycle = reduced_cycle(A);
    const FractionalIdeal* best = nullptr;
    for (const auto& step : cycle) {
        if (!best || std::make_pair(step.ideal.norm(), step.ideal.module().key()) <
                         std::make_pair(best->norm(), best->module().key()))
            best = &step.ideal;
    }
    return *best;
}

/// Canonical representative of the narrow class of A. Cycle members I_i with
/// A = lambda_i * I_i are narrowly equivalent to A exactly when lambda_i can
/// be adjusted by a unit to be totally positive, i.e. when N(lambda_i) > 0 or
/// the fundamental unit has norm -1.
inline FractionalIdeal canonical_narrow_rep(const FractionalIdeal& A) {
    const FieldContext& ctx = A.context();
    PrincipalCycle pc = principal_cycle(ctx);
    bool unit_norm_negative = (pc.unit.norm() == -1);
    auto cycle = reduced_cycle(A);
    const FractionalIdeal* best = nullptr;
    for (const auto& step : cycle) {
        if (!unit_norm_negative && step.lambda.norm() < 0) continue;
        if (!best || std::make_pair(step.ideal.norm(), step.ideal.module().key()) <
                         std::make_pair(best->norm(), best->module().key()))
            best = &step.ideal;
    }
    if (!best) throw std::runtime_error("canonical_narrow_rep: empty selection (internal error)");
    return *best;
}

}  // namespace rmtori
