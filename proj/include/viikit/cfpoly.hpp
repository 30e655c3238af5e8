#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "viikit/rational.hpp"

namespace viikit {

// Sparse polynomial over Q with explicit exponent vectors. The exported
// continued-fraction family is multilinear (every exponent 0 or 1); the
// representation allows general exponents so that derivatives and products
// used by the identity probes stay in one type.
class SparsePolynomial {
public:
    using Monomial = std::vector<std::uint32_t>;

    explicit SparsePolynomial(int arity = 0) : arity_(arity) {}

    static SparsePolynomial constant(const Rational& c, int arity);
    static SparsePolynomial variable(int index, int arity);

    int arity() const { return arity_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_multilinear() const;

    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    Rational eval(const std::vector<Rational>& point) const;
    SparsePolynomial derivative(int var) const;

    friend SparsePolynomial operator+(const SparsePolynomial& x, const SparsePolynomial& y);
    friend SparsePolynomial operator-(const SparsePolynomial& x, const SparsePolynomial& y);
    friend SparsePolynomial operator*(const SparsePolynomial& x, const SparsePolynomial& y);
    SparsePolynomial operator-() const;
    friend bool operator==(const SparsePolynomial& x, const SparsePolynomial& y);

    std::string str(const std::string& var_prefix = "X") const;

private:
    int arity_;
    std::map<Monomial, Rational> terms_;
};

inline constexpr int kDefaultArityCap = 12;

// P_n at a rational point; P_0 = 1, P_1(x) = x,
// P_n(x_0..x_{n-1}) = x_0 * P_{n-1}(x_1..) - P_{n-2}(x_2..).
Rational eval_P(const std::vector<Rational>& x);
// Q_p = P_p(x_0..x_{p-1}) - P_{p-2}(x_1..x_{p-2}); invariant under rotation.
Rational eval_Q(const std::vector<Rational>& x);
// Delta_p = (P_p + P_{p-2})^2 - 4 P_{p-1}(x_0..x_{p-2}) P_{p-1}(x_1..x_{p-1});
// always computed through both closed forms (the other being Q_p^2 - 4) and
// cross-checked before returning.
Rational eval_Delta(const std::vector<Rational>& x);

SparsePolynomial expand_P(int n, int arity_cap = kDefaultArityCap);
SparsePolynomial expand_Q(int p, int arity_cap = kDefaultArityCap);
SparsePolynomial expand_Delta(int p, int arity_cap = kDefaultArityCap);

// --- identity suite -------------------------------------------------------

struct Counterexample {
    std::vector<Rational> point;
    std::string lhs;
    std::string rhs;
    int trial = -1;  // -1 for symbolic discoveries
};

struct IdentityResult {
    std::string identity;  // "i-reversal" .. "v-weighted-symmetric"
    int p = 0;
    bool symbolic_checked = false;
    bool symbolic_pass = false;
    int trials = 0;
    int numeric_failures = 0;
    std::optional<Counterexample> first_counterexample;
    bool pass() const {
        return (!symbolic_checked || symbolic_pass) && numeric_failures == 0;
    }
};

// Reported observations that are expected to disagree with their naive
// statement; they never fail the suite.
struct ProbeResult {
    std::string probe;     // "vi-derivative" or "q-closed-form"
    std::string instance;  // human-readable locus, e.g. "j=3 dX1"
    bool agrees = false;
    std::string detail;
};

struct IdentityReport {
    int p_max = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int symbolic_cap = 8;
    std::vector<IdentityResult> results;  // ordered by (p, identity)
    std::vector<ProbeResult> probes;
    bool all_identities_pass() const {
        for (const auto& r : results)
            if (!r.pass()) return false;
        return true;
    }
};

// Checks identities (i) reversal, (ii) cyclic invariance, (iii) the telescoped
// product P_p P_{p-2} - P_{p-1} P_{p-1} = -1, (iv) equality of the two Delta
// forms, (v) the weighted symmetric-function identity
//   sum_j (p+1-j) e_j(x) = prod(1+x_i) + sum_k prod_{i != k} (1+x_i),
// symbolically for p <= symbolic_cap and at `trials` seeded rational points
// for each p <= p_max. Also runs the two reported probes.
IdentityReport verify_identities(int p_max, int trials, std::uint64_t seed);

}  // namespace viikit
