#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "viikit/germ.hpp"
#include "viikit/rational.hpp"

namespace viikit {

// Raised when a fixture's stated defining relation fails (e.g. a coefficient
// extraction that the relation promises to be exact leaves a remainder).
struct FixtureViolation : Error {
    using Error::Error;
};

// Truncated bivariate formal power series in (z, zeta) over Q. `order` is the
// validity bound: coefficients of total degree <= order are exact, higher ones
// are not stored. Dividing by a monomial loses that monomial's degree worth of
// validity; all other operations keep the minimum of their inputs.
class TruncatedSeries {
public:
    using Key = std::pair<int, int>;  // (z exponent, zeta exponent)

    explicit TruncatedSeries(int order = 0) : order_(order) {
        if (order < 0) throw Error("TruncatedSeries: negative order");
    }

    static TruncatedSeries constant(const Rational& c, int order);
    static TruncatedSeries variable_z(int order);
    static TruncatedSeries variable_zeta(int order);
    static TruncatedSeries monomial(const Rational& c, int ze, int ze2, int order);

    int order() const { return order_; }
    const std::map<Key, Rational>& coefficients() const { return c_; }
    Rational coeff(int a, int b) const;
    void set_coeff(int a, int b, const Rational& v);
    bool is_zero() const { return c_.empty(); }

    TruncatedSeries truncated(int new_order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y);
    friend TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y);
    friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y);
    TruncatedSeries operator-() const;

    // Multiplicative inverse of a unit (nonzero constant term); NonUnit
    // otherwise. Same validity order.
    TruncatedSeries invert_unit() const;

    // Exact division by the monomial z^a zeta^b: every stored term must be
    // divisible, otherwise FixtureViolation. Validity drops by a + b.
    TruncatedSeries divide_monomial(int a, int b) const;

    TruncatedSeries pow(long long e) const;  // negative e inverts a unit first

    std::string str() const;

private:
    int order_;
    std::map<Key, Rational> c_;
};

// --- tiny expression language ----------------------------------------------
// Grammar: sums/differences of terms; terms multiply/divide factors; a factor
// is a primary optionally raised to an integer power (negative powers invert
// units); primaries are parenthesized expressions, inv(expr), integer
// literals, or identifiers. Division is by units or by pure monomials (exact
// coefficient extraction). Identifiers resolve through an environment of
// named series (z, zeta, intermediates) and rational constants (assignment
// symbols such as lambda, c3).

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

ExprPtr parse_expression(const std::string& text);

struct SeriesEnv {
    std::map<std::string, TruncatedSeries> series;
    std::map<std::string, Rational> constants;
    bool polynomial_only = false;  // forbid inv, /, negative powers
    int order = 0;
};

TruncatedSeries eval_expression(const ExprPtr& expr, const SeriesEnv& env);

// A blow-up map (u, v) -> (first(u,v), second(u,v)), both components
// polynomial. Stored as parsed expressions over identifiers u, v.
struct PolyMap {
    std::string first_text;
    std::string second_text;
    ExprPtr first;
    ExprPtr second;

    static PolyMap parse(const std::string& first_text, const std::string& second_text);
    std::pair<TruncatedSeries, TruncatedSeries> apply(
        const std::pair<TruncatedSeries, TruncatedSeries>& in,
        const std::map<std::string, Rational>& constants) const;
};

// Applies maps outside-in: for maps = [M0, M1, ..., Mn] computes
// M0(M1(...Mn(inner)...)), truncating to `order` after each step. All inner
// components must carry validity order >= `order` (OrderMismatch otherwise).
std::pair<TruncatedSeries, TruncatedSeries> compose_chain(
    const std::vector<PolyMap>& maps, std::pair<TruncatedSeries, TruncatedSeries> inner,
    int order, const std::map<std::string, Rational>& constants = {});

// --- factorization fixtures -------------------------------------------------

struct NamedIntermediate {
    std::string name;
    std::string expr;  // defining expression, may divide by monomials
};

struct FactorizationChain {
    std::string name;
    std::vector<PolyMap> maps;
};

struct FactorizationFixture {
    Germ target;                                   // germ the chain must reproduce
    std::map<std::string, Rational> assignment;    // values for symbolic markers
    std::vector<NamedIntermediate> intermediates;  // evaluated in order
    std::pair<std::string, std::string> sigma;     // innermost map, as expressions
    std::vector<FactorizationChain> chains;
    bool require_all = true;  // false: at least one chain must verify
    int default_order = 10;
};

struct Mismatch {
    int component;  // 1 or 2
    int z_exp;
    int zeta_exp;
    Rational got;
    Rational want;
};

struct ChainVerdict {
    std::string chain;
    bool equal = false;
    int order = 0;
    std::optional<Mismatch> mismatch;
    std::optional<std::string> violation;  // fixture-relation failure
};

struct Verdict {
    std::vector<ChainVerdict> chains;
    bool require_all = true;
    int order = 0;
    bool pass() const {
        if (chains.empty()) return false;
        bool all = true, any = false;
        for (const auto& c : chains) {
            all = all && c.equal;
            any = any || c.equal;
        }
        return require_all ? all : any;
    }
};

// Expands the instantiated target germ to total degree N, evaluates sigma and
// the intermediates at a padded working order, composes each chain, and
// compares coefficientwise through total degree N. Mismatches are localized
// to the earliest differing monomial (total degree, then component, then z
// exponent). N must be >= 3.
Verdict verify_factorization(const FactorizationFixture& fixture, int order);

// First component of the instantiated germ expansion:
// lambda z zeta^s + sum c_p zeta^p + c_extra zeta^{sk/(k-1)}; second: zeta^k.
std::pair<TruncatedSeries, TruncatedSeries> expand_germ(
    const Germ& germ, const std::map<std::string, Rational>& assignment, int order);

}  // namespace viikit
