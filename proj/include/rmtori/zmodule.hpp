#pragma once

#include "rmtori/field.hpp"
#include "rmtori/numeric.hpp"

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rmtori {

namespace detail {

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        Int q = a / b;  // truncated is fine here; any Bezout pair works
        Int r = a - q * b;
        a = b;
        b = r;
        Int s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    return {a, s0, t0};
}

}  // namespace detail

/// Rank-2 Z-module in F in canonical Hermite normal form
///
///     M = (1/q) * ( Z*a  +  Z*(b + c*omega) )
///
/// with q > 0, a > 0, c > 0, 0 <= b < a and gcd(a, b, c, q) = 1. The tuple
/// (q, a, b, c) is uniquely determined by the module, so equality and
/// ordering are structural.
class ZModule {
public:
    ZModule(const FieldContext& ctx, Int q, Int a, Int b, Int c)
        : ctx_(ctx), q_(std::move(q)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (q_ <= 0 || a_ <= 0 || c_ <= 0 || b_ < 0 || b_ >= a_)
            throw std::invalid_argument("ZModule: not in normal form");
        Int g = gcd_int(gcd_int(a_, b_), gcd_int(c_, q_));
        if (g != 1) throw std::invalid_argument("ZModule: not in normal form (common factor)");
    }

    /// Z-span of the given field elements; must have rank 2.
    static ZModule from_generators(const FieldContext& ctx, const std::vector<QuadElem>& gens) {
        std::vector<std::pair<Rat, Rat>> coords;
        coords.reserve(gens.size());
        for (const auto& g : gens) {
            if (g.d() != ctx.d()) throw std::invalid_argument("generator from a different field");
            coords.push_back(g.omega_coords());
        }
        return from_coords(ctx, coords);
    }

    /// Z-span of coordinate vectors (u, v) standing for u + v*omega.
    static ZModule from_coords(const FieldContext& ctx,
                               const std::vector<std::pair<Rat, Rat>>& coords) {
        Int q = 1;
        for (const auto& [u, v] : coords) q = lcm_int(q, lcm_int(denominator(u), denominator(v)));
        std::vector<std::pair<Int, Int>> vecs;
        vecs.reserve(coords.size());
        for (const auto& [u, v] : coords) {
            Rat su = u * q, sv = v * q;
            vecs.emplace_back(numerator(su), numerator(sv));
        }
        return from_int_coords(ctx, vecs, q);
    }

    const FieldContext& context() const { return ctx_; }
    const Int& q() const { return q_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    /// First basis element a/q.
    QuadElem basis_first() const {
        return QuadElem::from_omega_coords(ctx_, Rat(a_, q_), 0);
    }
    /// Second basis element (b + c*omega)/q.
    QuadElem basis_second() const {
        return QuadElem::from_omega_coords(ctx_, Rat(b_, q_), Rat(c_, q_));
    }

    bool contains(const QuadElem& e) const {
        if (e.d() != ctx_.d()) return false;
        auto [u, v] = e.omega_coords();
        Rat qu = u * q_, qv = v * q_;
        if (denominator(qu) != 1 || denominator(qv) != 1) return false;
        Int iu = numerator(qu), iv = numerator(qv);
        if (iv % c_ != 0) return false;
        Int n = iv / c_;
        return (iu - n * b_) % a_ == 0;
    }

    /// Covolume relative to the lattice Z + Z*omega (the HNF determinant).
    Rat covolume() const { return Rat(a_ * c_, q_ * q_); }

    ZModule scaled(const QuadElem& lambda) const {
        if (lambda.is_zero()) throw std::invalid_argument("scaling by zero");
        return from_generators(ctx_, {lambda * basis_first(), lambda * basis_second()});
    }

    ZModule conj_module() const {
        return from_generators(ctx_, {basis_first().conj(), basis_second().conj()});
    }

    friend ZModule sum(const ZModule& A, const ZModule& B) {
        A.check_same(B);
        return from_generators(A.ctx_, {A.basis_first(), A.basis_second(), B.basis_first(),
                                        B.basis_second()});
    }

    /// Module generated by all pairwise products of basis elements.
    friend ZModule product(const ZModule& A, const ZModule& B) {
        A.check_same(B);
        QuadElem a1 = A.basis_first(), a2 = A.basis_second();
        QuadElem b1 = B.basis_first(), b2 = B.basis_second();
        return from_generators(A.ctx_, {a1 * b1, a1 * b2, a2 * b1, a2 * b2});
    }

    /// Dual lattice under the coordinate dot product; an involution that
    /// swaps sums and intersections.
    ZModule dual() const {
        Rat u1(a_, q_), v1(0), u2(b_, q_), v2(c_, q_);
        Rat det = u1 * v2 - u2 * v1;
        std::vector<std::pair<Rat, Rat>> rows = {{v2 / det, -u2 / det}, {-v1 / det, u1 / det}};
        return from_coords(ctx_, rows);
    }

    friend ZModule intersect(const ZModule& A, const ZModule& B) {
        A.check_same(B);
        return sum(A.dual(), B.dual()).dual();
    }

    /// Colon module (M : L) = { x in F : x*L is contained in M }.
    friend ZModule colon(const ZModule& M, const ZModule& L) {
        M.check_same(L);
        ZModule s1 = M.scaled(L.basis_first().inverse());
        ZModule s2 = M.scaled(L.basis_second().inverse());
        return intersect(s1, s2);
    }

    bool is_omega_closed() const {
        QuadElem w = ctx_.omega();
        return contains(basis_first() * w) && contains(basis_second() * w);
    }

    bool operator==(const ZModule& o) const {
        return ctx_.d() == o.ctx_.d() && q_ == o.q_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }
    bool operator!=(const ZModule& o) const { return !(*this == o); }

    /// Deterministic ordering key.
    std::tuple<Int, Int, Int, Int> key() const { return {q_, a_, b_, c_}; }
    bool operator<(const ZModule& o) const { return key() < o.key(); }

    std::string str() const {
        std::string s = "<" + a_.str() + ", " + b_.str() + "+" + c_.str() + "*w>";
        if (q_ != 1) s += "/" + q_.str();
        return s;
    }

private:
    static ZModule from_int_coords(const FieldContext& ctx,
                                   const std::vector<std::pair<Int, Int>>& vecs, Int q) {
        bool have_pivot = false;
        Int px = 0, py = 0;
        std::vector<Int> xs;
        for (const auto& [x, y] : vecs) {
            if (y == 0) {
                if (x != 0) xs.push_back(x);
                continue;
            }
            if (!have_pivot) {
                px = x;
                py = y;
                if (py < 0) {
                    px = -px;
                    py = -py;
                }
                have_pivot = true;
                continue;
            }
            auto [g, s, t] = detail::ext_gcd(py, y);
            Int comp = (y / g) * px - (py / g) * x;  // unimodular complement, omega-part 0
            if (comp != 0) xs.push_back(comp);
            px = s * px + t * x;
            py = g;
        }
        if (!have_pivot) throw std::invalid_argument("module has rank < 2 (no irrational part)");
        Int a = 0;
        for (const Int& x : xs) a = gcd_int(a, x);
        if (a == 0) throw std::invalid_argument("module has rank < 2");
        if (a < 0) a = -a;
        Int b = floor_mod(px, a);
        Int c = py;
        Int g = gcd_int(gcd_int(a, b), gcd_int(c, q));
        return ZModule(ctx, q / g, a / g, b / g, c / g);
    }

    void check_same(const ZModule& o) const {
        if (ctx_.d() != o.ctx_.d()) throw std::invalid_argument("modules in different fields");
    }

    FieldContext ctx_;
    Int q_, a_, b_, c_;
};

}  // namespace rmtori
