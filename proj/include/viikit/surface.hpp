#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "viikit/config.hpp"
#include "viikit/cs.hpp"
#include "viikit/rational.hpp"

namespace viikit {

struct NotPerfectSquare : Error {
    explicit NotPerfectSquare(BigInt d)
        : Error("determinant " + d.str() + " is not a perfect square"), det(std::move(d)) {}
    BigInt det;
};

struct SingularMatrix : Error {
    using Error::Error;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

// Opposite intersection matrix (positive diagonal) with row labels, rows
// ordered cycle-first then branch curves in declaration order, top curve
// first within each branch.
struct IntersectionData {
    IntMatrix matrix;
    std::vector<std::string> labels;
};

struct AnticanonicalResult {
    std::vector<Rational> lambda;        // coefficients of the anticanonical divisor
    BigInt m;                            // least m >= 1 with m*lambda integral
    std::optional<BigInt> k;             // torsion, when det is a perfect square
};

IntersectionData intersection_matrix(const CurveConfiguration& config);

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);

// sqrt(det) + 1; throws NotPerfectSquare otherwise.
BigInt torsion_k(const IntMatrix& m);

// Adjunction right-hand side: b_j = -D_j^2 - 2 + 2 * nodes(D_j), over all
// curves in matrix row order.
std::vector<BigInt> adjunction_rhs(const CurveConfiguration& config);

// Exact solution of M x = b by rational Gaussian elimination.
std::vector<Rational> solve_linear(const IntMatrix& m, const std::vector<BigInt>& b);

AnticanonicalResult anticanonical(const CurveConfiguration& config);

// Full pipeline; stage failures are embedded as notes, never thrown.
struct AnalysisReport {
    CurveConfiguration config;
    IntersectionData intersection;
    BigInt det;
    std::optional<BigInt> k;
    std::optional<std::string> k_note;
    std::optional<AnticanonicalResult> anticanonical;
    std::optional<std::string> anticanonical_note;
    DeltaSystem system;
    std::vector<QuadraticEquation> equations;          // empty when p = 1 or degenerate
    std::optional<std::pair<CSSolution, CSSolution>> solutions;
    std::optional<std::string> cs_note;
    std::optional<Certificate> plus_certificate;
    std::optional<Certificate> minus_certificate;
    std::optional<bool> mu_plus_equals_k;  // reported, never asserted
};

AnalysisReport analyze(const CurveConfiguration& config);

}  // namespace viikit
