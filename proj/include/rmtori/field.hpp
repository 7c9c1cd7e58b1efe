#pragma once

#include "rmtori/numeric.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace rmtori {

class QuadElem;

/// A fixed real quadratic field Q(sqrt(d)), d squarefree and > 1.
///
/// Carries the discriminant D (= d for d = 1 mod 4, else 4d) and the
/// canonical integral generator omega ((1+sqrt(d))/2 resp. sqrt(d)),
/// so that {1, omega} is a Z-basis of the ring of integers.
class FieldContext {
public:
    explicit FieldContext(std::int64_t d) : d_(d) {
        if (d <= 1) throw std::invalid_argument("radicand must be > 1");
        if (!is_squarefree(d)) throw std::invalid_argument("radicand must be squarefree");
        half_ = (d % 4 == 1);
        D_ = half_ ? d : 4 * d;
    }

    std::int64_t d() const { return d_; }
    std::int64_t discriminant() const { return D_; }
    /// True when omega = (1+sqrt(d))/2, i.e. d = 1 mod 4.
    bool half_generator() const { return half_; }

    QuadElem omega() const;
    /// sqrt(D) as an element of the field (= sqrt(d) or 2*sqrt(d)).
    QuadElem sqrt_disc() const;

    bool operator==(const FieldContext& o) const { return d_ == o.d_; }
    bool operator!=(const FieldContext& o) const { return d_ != o.d_; }

private:
    std::int64_t d_;
    std::int64_t D_;
    bool half_;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

/// Exact element x + y*sqrt(d) of a real quadratic field.
///
/// Components are arbitrary-precision rationals kept in lowest terms with
/// positive denominators, so equality is structural.
class QuadElem {
public:
    QuadElem() : d_(0), x_(0), y_(0) {}  // usable only as a placeholder
    QuadElem(const FieldContext& ctx, Rat x, Rat y)
        : d_(ctx.d()), x_(std::move(x)), y_(std::move(y)) {}

    std::int64_t d() const { return d_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    FieldContext context() const { return FieldContext(d_); }

    QuadElem operator-() const { return QuadElem(d_, -x_, -y_); }

    QuadElem operator+(const QuadElem& o) const {
        check_same_field(o);
        return QuadElem(d_, x_ + o.x_, y_ + o.y_);
    }
    QuadElem operator-(const QuadElem& o) const {
        check_same_field(o);
        return QuadElem(d_, x_ - o.x_, y_ - o.y_);
    }
    QuadElem operator*(const QuadElem& o) const {
        check_same_field(o);
        return QuadElem(d_, x_ * o.x_ + Rat(d_) * y_ * o.y_, x_ * o.y_ + y_ * o.x_);
    }
    QuadElem operator/(const QuadElem& o) const {
        check_same_field(o);
        return *this * o.inverse();
    }

    QuadElem operator*(const Rat& r) const { return QuadElem(d_, x_ * r, y_ * r); }
    QuadElem operator/(const Rat& r) const {
        if (r == 0) throw std::domain_error("division by zero");
        return QuadElem(d_, x_ / r, y_ / r);
    }

    /// Galois conjugate x - y*sqrt(d).
    QuadElem conj() const { return QuadElem(d_, x_, -y_); }

    /// Field norm x^2 - d*y^2 (= a * conj(a)).
    Rat norm() const { return x_ * x_ - Rat(d_) * y_ * y_; }

    /// Field trace 2x.
    Rat trace() const { return 2 * x_; }

    QuadElem inverse() const {
        Rat n = norm();
        if (n == 0) throw std::domain_error("division by zero");
        return QuadElem(d_, x_ / n, -y_ / n);
    }

    /// Exact sign under the real embedding with sqrt(d) > 0.
    ///
    /// No floating point: the radical is isolated and both sides squared,
    /// with a case split on the component signs.
    Sign sign() const {
        int sx = sign_of(x_), sy = sign_of(y_);
        if (sy == 0) return static_cast<Sign>(sx);
        if (sx == 0) return static_cast<Sign>(sy);
        if (sx == sy) return static_cast<Sign>(sx);
        // Mixed signs: x + y*sqrt(d) has the sign of the larger magnitude,
        // decided by comparing x^2 against d*y^2.
        Rat lhs = x_ * x_, rhs = Rat(d_) * y_ * y_;
        if (lhs == rhs) return Sign::Zero;  // impossible for irrational sqrt(d)
        return (lhs > rhs) ? static_cast<Sign>(sx) : static_cast<Sign>(sy);
    }

    bool is_positive() const { return sign() == Sign::Positive; }

    /// Positive in both real embeddings.
    bool is_totally_positive() const {
        return sign() == Sign::Positive && conj().sign() == Sign::Positive;
    }

    bool operator==(const QuadElem& o) const { return d_ == o.d_ && x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    bool operator<(const QuadElem& o) const { return (*this - o).sign() == Sign::Negative; }
    bool operator>(const QuadElem& o) const { return (*this - o).sign() == Sign::Positive; }
    bool operator<=(const QuadElem& o) const { return !(*this > o); }
    bool operator>=(const QuadElem& o) const { return !(*this < o); }

    /// Coordinates (u, v) with *this = u + v*omega.
    std::pair<Rat, Rat> omega_coords() const {
        if (d_ % 4 == 1) return {x_ - y_, 2 * y_};
        return {x_, y_};
    }

    static QuadElem from_omega_coords(const FieldContext& ctx, const Rat& u, const Rat& v) {
        if (ctx.half_generator()) return QuadElem(ctx, u + v / 2, v / 2);
        return QuadElem(ctx, u, v);
    }

    std::string str() const {
        if (y_ == 0) return rat_to_string(x_);
        std::string s;
        if (x_ != 0) s = rat_to_string(x_);
        if (y_ == 1) {
            s += (x_ != 0 ? "+" : "");
        } else if (y_ == -1) {
            s += "-";
        } else {
            if (x_ != 0 && y_ > 0) s += "+";
            s += rat_to_string(y_);
            s += "*";
        }
        s += "sqrt(" + std::to_string(d_) + ")";
        return s;
    }

private:
    QuadElem(std::int64_t d, Rat x, Rat y) : d_(d), x_(std::move(x)), y_(std::move(y)) {}

    static int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

    void check_same_field(const QuadElem& o) const {
        if (d_ != o.d_) throw std::invalid_argument("operands lie in different fields");
    }

    std::int64_t d_;
    Rat x_, y_;

    friend class FieldContext;
};

inline QuadElem FieldContext::omega() const {
    return half_ ? QuadElem(*this, Rat(1, 2), Rat(1, 2)) : QuadElem(*this, 0, 1);
}

inline QuadElem FieldContext::sqrt_disc() const {
    return half_ ? QuadElem(*this, 0, 1) : QuadElem(*this, 0, 2);
}

inline QuadElem operator*(const Rat& r, const QuadElem& a) { return a * r; }

/// Three-way ordering key for deterministic sorts.
inline std::tuple<Rat, Rat> structural_key(const QuadElem& a) { return {a.x(), a.y()}; }

}  // namespace rmtori
