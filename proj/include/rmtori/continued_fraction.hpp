#pragma once

#include "rmtori/field.hpp"
#include "rmtori/numeric.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rmtori {

/// Eventually periodic continued fraction of a quadratic irrational.
/// The period is nonempty for every irrational input (Lagrange).
struct CFExpansion {
    std::vector<Int> preperiod;
    std::vector<Int> period;

    bool operator==(const CFExpansion& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
};

/// Exact state machine for the surd iteration on (P + sqrt(N))/Q.
///
/// Invariants: N > 0 nonsquare, Q != 0, Q divides N - P^2. A step emits the
/// partial quotient q = floor((P + sqrt(N))/Q) and moves to the complete
/// quotient 1/(value - q). Never uses floating point.
class SurdIterator {
public:
    /// Builds the state for an irrational a = x + y*sqrt(d).
    explicit SurdIterator(const QuadElem& a) : ctx_(a.d()) {
        if (a.y() == 0) throw std::invalid_argument("surd iteration requires an irrational input");
        Int xn = numerator(a.x()), xd = denominator(a.x());
        Int yn = numerator(a.y()), yd = denominator(a.y());
        Int m = lcm_int(xd, yd);
        Int u = xn * (m / xd);
        Int v = yn * (m / yd);
        // Fold the sign of v into P and Q so the radical coefficient is +1.
        if (v > 0) {
            P_ = u;
            Q_ = m;
        } else {
            P_ = -u;
            Q_ = -m;
            v = -v;
        }
        N_ = v * v * Int(ctx_.d());
        scale_ = v;
        if ((N_ - P_ * P_) % Q_ != 0) {
            P_ *= abs(Q_);
            N_ *= Q_ * Q_;
            scale_ *= abs(Q_);
            Q_ *= abs(Q_);
        }
        sqrtN_ = isqrt(N_);
    }

    /// State for (P + sqrt(N))/Q directly, N = scale^2 * d.
    SurdIterator(const FieldContext& ctx, Int P, Int Q, Int scale)
        : ctx_(ctx), P_(std::move(P)), Q_(std::move(Q)), scale_(std::move(scale)) {
        N_ = scale_ * scale_ * Int(ctx_.d());
        if (Q_ == 0) throw std::invalid_argument("zero denominator");
        if ((N_ - P_ * P_) % Q_ != 0) throw std::invalid_argument("invalid surd state");
        sqrtN_ = isqrt(N_);
    }

    const Int& P() const { return P_; }
    const Int& Q() const { return Q_; }
    const Int& N() const { return N_; }

    std::pair<Int, Int> key() const { return {P_, Q_}; }

    /// floor((P + sqrt(N))/Q), exact. Uses floor(sqrt(N)) and relies on
    /// sqrt(N) being irrational.
    Int floor_value() const {
        if (Q_ > 0) return floor_div(P_ + sqrtN_, Q_);
        return floor_div(-P_ - sqrtN_ - 1, -Q_);
    }

    /// Current complete quotient as a field element.
    QuadElem value() const { return QuadElem(ctx_, make_rat(P_, Q_), make_rat(scale_, Q_)); }

    /// Advances to the next complete quotient; returns the emitted partial
    /// quotient.
    Int step() {
        Int q = floor_value();
        Int Pn = q * Q_ - P_;
        Int Qn = (N_ - Pn * Pn) / Q_;
        P_ = Pn;
        Q_ = Qn;
        return q;
    }

    /// Purely periodic position: value > 1 and conjugate in (-1, 0).
    bool is_reduced() const {
        QuadElem v = value();
        QuadElem one(ctx_, 1, 0);
        QuadElem c = v.conj();
        return v > one && c.sign() == Sign::Negative && c > -one;
    }

private:
    FieldContext ctx_;
    Int P_, Q_, N_;
    Int scale_;  // sqrt(N) = scale * sqrt(d)
    Int sqrtN_;
};

/// Continued fraction of an irrational quadratic a, with the period detected
/// by recurrence of the exact (P, Q) state.
inline CFExpansion cf_expand(const QuadElem& a, std::uint64_t max_steps = max_steps_limit()) {
    if (a.y() == 0) throw std::invalid_argument("cf_expand: rational input");
    SurdIterator it(a);
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::vector<Int> terms;
    for (std::uint64_t i = 0; i < max_steps; ++i) {
        auto k = it.key();
        auto pos = seen.find(k);
        if (pos != seen.end()) {
            CFExpansion out;
            out.preperiod.assign(terms.begin(), terms.begin() + pos->second);
            out.period.assign(terms.begin() + pos->second, terms.end());
            return out;
        }
        seen.emplace(k, terms.size());
        terms.push_back(it.step());
    }
    throw std::runtime_error("cf_expand: step bound exceeded (internal error)");
}

}  // namespace rmtori
