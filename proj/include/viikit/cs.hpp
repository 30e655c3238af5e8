#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "viikit/config.hpp"
#include "viikit/quadratic.hpp"
#include "viikit/rational.hpp"

namespace viikit {

struct DegenerateSystem : Error {
    DegenerateSystem(int idx, const std::string& what) : Error(what), index(idx) {}
    int index;
};

struct ForbiddenValue : Error {
    ForbiddenValue(int s, const std::string& what) : Error(what), step(s) {}
    int step;  // equation index whose denominator vanished
};

// The cyclic system (alpha_i + 1/alpha_{i+1} = delta_i), i mod p.
struct DeltaSystem {
    std::vector<Rational> delta;
    std::optional<CurveConfiguration> provenance;
    int p() const { return (int)delta.size(); }
};

// Equation satisfied by alpha_j: a x^2 + b x + c = 0 with window coefficients
//   a_j = P_{p-1}(delta_{j+1} .. delta_{j-1}),
//   c_j = P_{p-1}(delta_j .. delta_{j-2}),
//   b_j = -(P_p(delta_j .. delta_{j-1}) + P_{p-2}(delta_{j+1} .. delta_{j-2})).
struct QuadraticEquation {
    Rational a;
    Rational b;
    Rational c;
    int index = 0;
};

enum class BranchKind { plus_branch, minus_branch };

struct CSSolution {
    std::vector<QuadraticNumber> alpha;
    BranchKind branch = BranchKind::plus_branch;
    QuadraticNumber mu;     // product of the alpha_i
    Rational discriminant;  // Delta_p(delta)
};

struct Certificate {
    std::vector<int> signs;     // exact sign of each alpha_i
    bool all_negative_cs;       // all alpha_i > 0 (flipped-sign convention)
    bool mu_ge_1;
    QuadraticNumber mu;
};

QuadraticEquation coefficients(const DeltaSystem& system, int j);

// Solves (E_0) exactly and propagates both roots; the plus branch is the one
// whose torsion mu is >= 1 (the branches' mu multiply to 1 on regular data).
std::pair<CSSolution, CSSolution> solve_system(const DeltaSystem& system);

// Full alpha vector from a seed alpha_0, computed independently by the window
// closed form and by the sequential recurrence alpha_{i+1} = 1/(delta_i -
// alpha_i); the two routes must agree exactly.
std::vector<QuadraticNumber> propagate(const QuadraticNumber& alpha0, const DeltaSystem& system);

// Contribution t in (0,1) of a chain C_0..C_{k-1} (self-intersections, top
// first) to the delta entry of the cycle curve it meets: t = 1/beta_{k-1},
// beta_0 = -C_0^2, beta_{i+1} = -C_{i+1}^2 - 1/beta_i. Satisfies
// -1/C_{k-1}^2 <= t <= k/(k+1). Empty chain contributes 0.
Rational branch_contribution(const std::vector<long long>& chain);

// delta_j = -D_j^2 - branch_contribution(chain at j), in cycle order.
DeltaSystem build_delta(const CurveConfiguration& config);

QuadraticNumber torsion(const CSSolution& solution);

Certificate verify_negativity(const CSSolution& solution);

}  // namespace viikit
