#pragma once

#include <string>
#include <utility>

#include "viikit/rational.hpp"

namespace viikit {

struct MixedRadicand : Error {
    using Error::Error;
};

struct ZeroLeadingCoefficient : Error {
    using Error::Error;
};

struct ComplexRoots : Error {
    explicit ComplexRoots(Rational disc)
        : Error("negative discriminant " + disc.str()), discriminant(std::move(disc)) {}
    Rational discriminant;
};

// Element a + b*sqrt(d) of a real quadratic extension. Canonical form:
//   - d is a non-negative integer radicand with small square factors removed
//     (rational radicands are rescaled into b; perfect squares fold to b = 0);
//   - b = 0 implies d = 0 (pure rationals all look alike).
// Values carry their radicand; arithmetic across genuinely different radicands
// is refused rather than coerced into a bigger field.
class QuadraticNumber {
public:
    QuadraticNumber() : a_(0), b_(0), d_(0) {}
    QuadraticNumber(Rational rational_value)  // NOLINT: implicit by design
        : a_(std::move(rational_value)), b_(0), d_(0) {}
    QuadraticNumber(long long n) : a_(n), b_(0), d_(0) {}  // NOLINT: implicit by design
    QuadraticNumber(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)) {
        if (d.sign() < 0) throw ComplexRoots(d);
        if (b_.is_zero()) {
            d_ = 0;
            return;
        }
        // Rescale a rational radicand p/q to the integer p*q, folding 1/q into b.
        b_ = b_ / Rational(d.den());
        BigInt radicand = d.num() * d.den();
        // Pull out small square factors so equal values share a representation.
        for (BigInt f = 2; f * f <= radicand && f < 4096; ++f) {
            while (radicand % (f * f) == 0) {
                radicand /= f * f;
                b_ = b_ * Rational(f);
            }
        }
        if (auto root = is_perfect_square(radicand)) {
            a_ = a_ + b_ * Rational(*root);
            b_ = 0;
            d_ = 0;
            return;
        }
        d_ = Rational(radicand);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& d() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    const Rational& as_rational() const {
        if (!is_rational()) throw Error("QuadraticNumber: irrational value " + str());
        return a_;
    }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    QuadraticNumber conjugate() const {
        QuadraticNumber r = *this;
        r.b_ = -r.b_;
        return r;
    }

    // a^2 - b^2 d, the field norm times-conjugate; always rational.
    Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

    // Exact sign under the real embedding sqrt(d) >= 0.
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: |a| vs |b| sqrt(d) decides; compare a^2 vs b^2 d.
        Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
        if (lhs == rhs) return 0;
        return (lhs > rhs) == (sa > 0) ? 1 : -1;
    }

    std::string str() const {
        if (is_rational()) return a_.str();
        return a_.str() + " + " + b_.str() + "*sqrt(" + d_.str() + ")";
    }

    friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
        auto [d, dr] = merged_radicand(x, y);
        return make(x.a_ + y.a_, x.b_ + y.b_, d, dr);
    }
    friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
        auto [d, dr] = merged_radicand(x, y);
        return make(x.a_ - y.a_, x.b_ - y.b_, d, dr);
    }
    friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
        auto [d, dr] = merged_radicand(x, y);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d, dr);
    }
    friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
        if (y.is_zero()) throw Error("QuadraticNumber: division by zero");
        auto [d, dr] = merged_radicand(x, y);
        (void)d;
        (void)dr;
        Rational n = y.norm();
        QuadraticNumber yc = y.conjugate();
        QuadraticNumber p = x * yc;
        return make(p.a_ / n, p.b_ / n, p.d_, !p.b_.is_zero());
    }
    QuadraticNumber operator-() const {
        QuadraticNumber r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }
    QuadraticNumber inverse() const { return QuadraticNumber(Rational(1)) / *this; }

    friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
        if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
        if (x.is_rational() != y.is_rational()) return false;
        if (x.d_ != y.d_)
            throw MixedRadicand("comparing sqrt(" + x.d_.str() + ") with sqrt(" + y.d_.str() + ")");
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
        return (x - y).sign() < 0;
    }
    friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }
    friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(y < x); }
    friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x < y); }

private:
    static std::pair<Rational, bool> merged_radicand(const QuadraticNumber& x,
                                                     const QuadraticNumber& y) {
        if (x.is_rational()) return {y.d_, !y.is_rational()};
        if (y.is_rational()) return {x.d_, true};
        if (x.d_ != y.d_)
            throw MixedRadicand("mixing sqrt(" + x.d_.str() + ") with sqrt(" + y.d_.str() + ")");
        return {x.d_, true};
    }
    // Fast path for arithmetic results: the radicand is already canonical.
    static QuadraticNumber make(Rational a, Rational b, const Rational& d, bool irrational) {
        QuadraticNumber r;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.d_ = (irrational && !r.b_.is_zero()) ? d : Rational(0);
        if (r.b_.is_zero()) r.d_ = 0;
        return r;
    }

    Rational a_;
    Rational b_;
    Rational d_;  // integer radicand; 0 when the value is rational
};

struct RootPair {
    QuadraticNumber first;   // larger root under the real embedding
    QuadraticNumber second;  // smaller (or equal) root
};

// Exact roots of a x^2 + b x + c over Q(sqrt(b^2 - 4ac)).
inline RootPair quad_solve(const Rational& a, const Rational& b, const Rational& c) {
    if (a.is_zero()) throw ZeroLeadingCoefficient("quad_solve: a = 0");
    Rational disc = b * b - Rational(4) * a * c;
    if (disc.sign() < 0) throw ComplexRoots(disc);
    Rational half = Rational(1) / (Rational(2) * a);
    QuadraticNumber root_term(Rational(0), half, disc);
    QuadraticNumber base(-b * half);
    QuadraticNumber r1 = base + root_term;
    QuadraticNumber r2 = base - root_term;
    if (r1 < r2) std::swap(r1, r2);
    // Vieta, exactly; a failure here is a bug, not an input error.
    if (!((r1 + r2) == QuadraticNumber(-b / a)) || !((r1 * r2) == QuadraticNumber(c / a)))
        throw Error("quad_solve: Vieta verification failed");
    return RootPair{r1, r2};
}

}  // namespace viikit
