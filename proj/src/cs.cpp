#include "viikit/cs.hpp"

#include <algorithm>

#include "viikit/cfpoly.hpp"

namespace viikit {

namespace {

// Window of `len` consecutive entries starting at `start`, wrapping cyclically.
std::vector<Rational> cyclic_window(const std::vector<Rational>& delta, int start, int len) {
    const int p = (int)delta.size();
    std::vector<Rational> w;
    w.reserve((size_t)std::max(len, 0));
    for (int i = 0; i < len; ++i) w.push_back(delta[(size_t)(((start + i) % p + p) % p)]);
    return w;
}

// Non-cyclic prefix window delta_from .. delta_{from+len-1}.
std::vector<Rational> prefix_window(const std::vector<Rational>& delta, int from, int len) {
    return std::vector<Rational>(delta.begin() + from, delta.begin() + from + len);
}

QuadraticNumber product_of(const std::vector<QuadraticNumber>& values) {
    QuadraticNumber out(Rational(1));
    for (const auto& v : values) out = out * v;
    return out;
}

}  // namespace

QuadraticEquation coefficients(const DeltaSystem& system, int j) {
    const int p = system.p();
    if (p == 0) throw Error("empty delta system");
    if (j < 0 || j >= p)
        throw IndexOutOfRange("equation index " + std::to_string(j) + " outside cycle of length " +
                              std::to_string(p));
    Rational a = eval_P(cyclic_window(system.delta, j + 1, p - 1));
    Rational c = eval_P(cyclic_window(system.delta, j, p - 1));
    Rational b_long = eval_P(cyclic_window(system.delta, j, p));
    Rational b_short = p >= 2 ? eval_P(cyclic_window(system.delta, j + 1, p - 2)) : Rational(0);
    if (c.is_zero())
        throw DegenerateSystem(j, "window continuant c_" + std::to_string(j) + " vanishes");
    if (a.is_zero())
        throw DegenerateSystem((j + 1) % p,
                               "window continuant c_" + std::to_string((j + 1) % p) + " vanishes");
    QuadraticEquation e;
    e.a = a;
    e.b = -(b_long + b_short);
    e.c = c;
    e.index = j;
    return e;
}

std::vector<QuadraticNumber> propagate(const QuadraticNumber& alpha0, const DeltaSystem& system) {
    const int p = system.p();
    if (p == 0) throw Error("empty delta system");

    // Route one: the sequential recurrence alpha_{i+1} = 1/(delta_i - alpha_i).
    std::vector<QuadraticNumber> seq;
    seq.reserve((size_t)p);
    seq.push_back(alpha0);
    for (int i = 0; i + 1 < p; ++i) {
        QuadraticNumber den = QuadraticNumber(system.delta[(size_t)i]) - seq.back();
        if (den.is_zero())
            throw ForbiddenValue(i, "denominator delta_" + std::to_string(i) + " - alpha_" +
                                        std::to_string(i) + " vanishes");
        seq.push_back(den.inverse());
    }

    // Route two: the window closed form. Composing the Moebius steps gives
    //   alpha_j = (P_{j-1}(d_0..d_{j-2}) - P_{j-2}(d_1..d_{j-2}) a_0)
    //           / (P_j(d_0..d_{j-1})   - P_{j-1}(d_1..d_{j-1}) a_0).
    for (int j = 1; j < p; ++j) {
        Rational top_lin = j >= 2 ? eval_P(prefix_window(system.delta, 1, j - 2)) : Rational(0);
        Rational top_const = eval_P(prefix_window(system.delta, 0, j - 1));
        Rational bot_lin = eval_P(prefix_window(system.delta, 1, j - 1));
        Rational bot_const = eval_P(prefix_window(system.delta, 0, j));
        QuadraticNumber num = QuadraticNumber(top_const) - QuadraticNumber(top_lin) * alpha0;
        QuadraticNumber den = QuadraticNumber(bot_const) - QuadraticNumber(bot_lin) * alpha0;
        if (den.is_zero()) throw Error("closed-form propagation denominator vanished");
        if (!(num / den == seq[(size_t)j])) throw Error("propagation routes disagree");
    }
    return seq;
}

std::pair<CSSolution, CSSolution> solve_system(const DeltaSystem& system) {
    const int p = system.p();
    if (p == 0) throw Error("empty delta system");
    QuadraticEquation e0 = coefficients(system, 0);
    Rational disc = e0.b * e0.b - Rational(4) * e0.a * e0.c;
    if (p >= 2 && disc != eval_Delta(system.delta))
        throw Error("equation discriminant disagrees with the Delta closed form");

    RootPair roots = quad_solve(e0.a, e0.b, e0.c);
    CSSolution first, second;
    first.alpha = propagate(roots.first, system);
    second.alpha = propagate(roots.second, system);
    first.mu = product_of(first.alpha);
    second.mu = product_of(second.alpha);
    first.discriminant = disc;
    second.discriminant = disc;

    bool first_is_plus = (first.mu - QuadraticNumber(Rational(1))).sign() >= 0;
    CSSolution plus = first_is_plus ? first : second;
    CSSolution minus = first_is_plus ? second : first;
    plus.branch = BranchKind::plus_branch;
    minus.branch = BranchKind::minus_branch;
    return {plus, minus};
}

Rational branch_contribution(const std::vector<long long>& chain) {
    if (chain.empty()) return Rational(0);
    Rational beta(0);
    for (size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] > -2)
            throw InvalidChain("chain curve " + std::to_string(i) + " has self-intersection " +
                               std::to_string(chain[i]) + " > -2");
        Rational negated(-chain[i]);
        beta = i == 0 ? negated : negated - beta.inverse();
    }
    return beta.inverse();
}

DeltaSystem build_delta(const CurveConfiguration& config) {
    config.validate();
    const int p = config.cycle_size();
    std::vector<Rational> contribution((size_t)p, Rational(0));
    for (const Branch& b : config.branches)
        contribution[(size_t)b.attach] += branch_contribution(b.chain);
    DeltaSystem s;
    s.delta.reserve((size_t)p);
    for (int j = 0; j < p; ++j) {
        Rational d = Rational(-config.cycle[(size_t)j].self) - contribution[(size_t)j];
        if (!(d > Rational(1)))
            throw InvalidConfiguration("delta_" + std::to_string(j) + " = " + d.str() +
                                       " does not exceed 1");
        s.delta.push_back(std::move(d));
    }
    s.provenance = config;
    return s;
}

QuadraticNumber torsion(const CSSolution& solution) { return product_of(solution.alpha); }

Certificate verify_negativity(const CSSolution& solution) {
    Certificate cert;
    cert.signs.reserve(solution.alpha.size());
    bool all_positive = true;
    for (const auto& a : solution.alpha) {
        int s = a.sign();
        cert.signs.push_back(s);
        all_positive = all_positive && s > 0;
    }
    cert.all_negative_cs = all_positive;
    cert.mu = solution.mu;
    cert.mu_ge_1 = (solution.mu - QuadraticNumber(Rational(1))).sign() >= 0;
    return cert;
}

}  // namespace viikit
