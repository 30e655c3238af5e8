#include "viikit/cfpoly.hpp"

#include <algorithm>
#include <sstream>

#include "viikit/rng.hpp"

namespace viikit {

SparsePolynomial SparsePolynomial::constant(const Rational& c, int arity) {
    SparsePolynomial p(arity);
    p.add_term(Monomial((size_t)arity, 0), c);
    return p;
}

SparsePolynomial SparsePolynomial::variable(int index, int arity) {
    if (index < 0 || index >= arity)
        throw IndexOutOfRange("variable " + std::to_string(index) + " outside arity " +
                              std::to_string(arity));
    SparsePolynomial p(arity);
    Monomial m((size_t)arity, 0);
    m[(size_t)index] = 1;
    p.add_term(m, Rational(1));
    return p;
}

bool SparsePolynomial::is_multilinear() const {
    for (const auto& [m, c] : terms_)
        for (std::uint32_t e : m)
            if (e > 1) return false;
    return true;
}

Rational SparsePolynomial::coefficient(const Monomial& m) const {
    if ((int)m.size() != arity_) throw Error("monomial arity mismatch");
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePolynomial::add_term(const Monomial& m, const Rational& c) {
    if ((int)m.size() != arity_) throw Error("monomial arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational SparsePolynomial::eval(const std::vector<Rational>& point) const {
    if ((int)point.size() != arity_) throw Error("evaluation point arity mismatch");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) term *= point[i];
        acc += term;
    }
    return acc;
}

SparsePolynomial SparsePolynomial::derivative(int var) const {
    if (var < 0 || var >= arity_)
        throw IndexOutOfRange("derivative variable " + std::to_string(var) + " outside arity " +
                              std::to_string(arity_));
    SparsePolynomial out(arity_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m[(size_t)var];
        if (e == 0) continue;
        Monomial d = m;
        d[(size_t)var] = e - 1;
        out.add_term(d, c * Rational((long long)e));
    }
    return out;
}

SparsePolynomial operator+(const SparsePolynomial& x, const SparsePolynomial& y) {
    if (x.arity_ != y.arity_) throw Error("polynomial arity mismatch");
    SparsePolynomial out = x;
    for (const auto& [m, c] : y.terms_) out.add_term(m, c);
    return out;
}

SparsePolynomial operator-(const SparsePolynomial& x, const SparsePolynomial& y) {
    return x + (-y);
}

SparsePolynomial operator*(const SparsePolynomial& x, const SparsePolynomial& y) {
    if (x.arity_ != y.arity_) throw Error("polynomial arity mismatch");
    SparsePolynomial out(x.arity_);
    for (const auto& [mx, cx] : x.terms_)
        for (const auto& [my, cy] : y.terms_) {
            SparsePolynomial::Monomial m = mx;
            for (size_t i = 0; i < m.size(); ++i) m[i] += my[i];
            out.add_term(m, cx * cy);
        }
    return out;
}

SparsePolynomial SparsePolynomial::operator-() const {
    SparsePolynomial out(arity_);
    for (const auto& [m, c] : terms_) out.add_term(m, -c);
    return out;
}

bool operator==(const SparsePolynomial& x, const SparsePolynomial& y) {
    return x.arity_ == y.arity_ && x.terms_ == y.terms_;
}

std::string SparsePolynomial::str(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Highest monomial first reads naturally ("X0*X1 - 1").
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        std::ostringstream vars;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (any_var) vars << "*";
            vars << var_prefix << i;
            if (m[i] > 1) vars << "^" << m[i];
            any_var = true;
        }
        if (!any_var) {
            out << a.str();
        } else {
            if (a != Rational(1)) out << a.str() << "*";
            out << vars.str();
        }
    }
    return out.str();
}

// --- continued-fraction family ------------------------------------------------

Rational eval_P(const std::vector<Rational>& x) {
    // Suffix recurrence T(a) = x_a T(a+1) - T(a+2), T(n) = 1, T(n+1) = 0.
    Rational t1(1), t2(0);
    for (size_t a = x.size(); a-- > 0;) {
        Rational t0 = x[a] * t1 - t2;
        t2 = t1;
        t1 = t0;
    }
    return t1;
}

static std::vector<Rational> slice(const std::vector<Rational>& x, size_t from, size_t to) {
    return std::vector<Rational>(x.begin() + (std::ptrdiff_t)from, x.begin() + (std::ptrdiff_t)to);
}

Rational eval_Q(const std::vector<Rational>& x) {
    if (x.size() < 2)
        throw ArityTooSmall("Q requires at least two entries, got " + std::to_string(x.size()));
    return eval_P(x) - eval_P(slice(x, 1, x.size() - 1));
}

Rational eval_Delta(const std::vector<Rational>& x) {
    if (x.size() < 2)
        throw ArityTooSmall("Delta requires at least two entries, got " + std::to_string(x.size()));
    size_t p = x.size();
    Rational pp = eval_P(x);
    Rational pmid = eval_P(slice(x, 1, p - 1));
    Rational left = eval_P(slice(x, 0, p - 1));
    Rational right = eval_P(slice(x, 1, p));
    Rational sum = pp + pmid;
    Rational via_product = sum * sum - Rational(4) * left * right;
    Rational q = pp - pmid;
    Rational via_q = q * q - Rational(4);
    if (via_product != via_q) throw Error("Delta closed forms disagree");
    return via_product;
}

// P over arbitrary polynomial entries (used for symbolic windows).
static SparsePolynomial P_over(const std::vector<SparsePolynomial>& xs, int arity) {
    SparsePolynomial t1 = SparsePolynomial::constant(Rational(1), arity);
    SparsePolynomial t2(arity);
    for (size_t a = xs.size(); a-- > 0;) {
        SparsePolynomial t0 = xs[a] * t1 - t2;
        t2 = t1;
        t1 = t0;
    }
    return t1;
}

static std::vector<SparsePolynomial> all_variables(int n) {
    std::vector<SparsePolynomial> vars;
    vars.reserve((size_t)n);
    for (int i = 0; i < n; ++i) vars.push_back(SparsePolynomial::variable(i, n));
    return vars;
}

template <typename T>
static std::vector<T> window(const std::vector<T>& xs, size_t from, size_t to) {
    return std::vector<T>(xs.begin() + (std::ptrdiff_t)from, xs.begin() + (std::ptrdiff_t)to);
}

SparsePolynomial expand_P(int n, int arity_cap) {
    if (n < 0) throw Error("negative arity");
    if (n > arity_cap)
        throw ArityCapExceeded("P_" + std::to_string(n) + " exceeds the arity cap " +
                               std::to_string(arity_cap));
    SparsePolynomial p = P_over(all_variables(n), n);
    if (!p.is_multilinear()) throw Error("P expansion lost multilinearity");
    return p;
}

SparsePolynomial expand_Q(int p, int arity_cap) {
    if (p < 2) throw ArityTooSmall("Q requires p >= 2");
    if (p > arity_cap)
        throw ArityCapExceeded("Q_" + std::to_string(p) + " exceeds the arity cap " +
                               std::to_string(arity_cap));
    std::vector<SparsePolynomial> vars = all_variables(p);
    SparsePolynomial q = P_over(vars, p) - P_over(window(vars, 1, (size_t)p - 1), p);
    if (!q.is_multilinear()) throw Error("Q expansion lost multilinearity");
    return q;
}

SparsePolynomial expand_Delta(int p, int arity_cap) {
    if (p < 2) throw ArityTooSmall("Delta requires p >= 2");
    if (p > arity_cap)
        throw ArityCapExceeded("Delta_" + std::to_string(p) + " exceeds the arity cap " +
                               std::to_string(arity_cap));
    std::vector<SparsePolynomial> vars = all_variables(p);
    SparsePolynomial pp = P_over(vars, p);
    SparsePolynomial pmid = P_over(window(vars, 1, (size_t)p - 1), p);
    SparsePolynomial left = P_over(window(vars, 0, (size_t)p - 1), p);
    SparsePolynomial right = P_over(window(vars, 1, (size_t)p), p);
    SparsePolynomial sum = pp + pmid;
    return sum * sum - SparsePolynomial::constant(Rational(4), p) * left * right;
}

// --- identity suite -----------------------------------------------------------

namespace {

struct SideValues {
    Rational lhs;
    Rational rhs;
};

// Elementary symmetric values e_0..e_p at a point.
std::vector<Rational> elementary(const std::vector<Rational>& x) {
    std::vector<Rational> e(x.size() + 1, Rational(0));
    e[0] = Rational(1);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = std::min(i + 1, x.size()); j >= 1; --j) e[j] += e[j - 1] * x[i];
    return e;
}

SideValues numeric_sides(const std::string& identity, const std::vector<Rational>& x) {
    size_t p = x.size();
    if (identity == "i-reversal") {
        std::vector<Rational> rev(x.rbegin(), x.rend());
        return {eval_P(x), eval_P(rev)};
    }
    if (identity == "ii-cyclic") {
        std::vector<Rational> rot(x.begin() + 1, x.end());
        rot.push_back(x[0]);
        return {eval_Q(x), eval_Q(rot)};
    }
    if (identity == "iii-telescoping") {
        Rational prod = eval_P(x) * eval_P(slice(x, 1, p - 1)) -
                        eval_P(slice(x, 0, p - 1)) * eval_P(slice(x, 1, p));
        return {prod, Rational(-1)};
    }
    if (identity == "iv-delta-forms") {
        Rational pp = eval_P(x);
        Rational pmid = eval_P(slice(x, 1, p - 1));
        Rational sum = pp + pmid;
        Rational via_product =
            sum * sum - Rational(4) * eval_P(slice(x, 0, p - 1)) * eval_P(slice(x, 1, p));
        Rational q = eval_Q(x);
        return {via_product, q * q - Rational(4)};
    }
    if (identity == "v-weighted-symmetric") {
        std::vector<Rational> e = elementary(x);
        Rational lhs(0);
        for (size_t j = 0; j <= p; ++j) lhs += Rational((long long)(p + 1 - j)) * e[j];
        Rational prod(1);
        for (const Rational& xi : x) prod *= Rational(1) + xi;
        Rational rhs = prod;
        for (size_t k = 0; k < p; ++k) {
            Rational partial(1);
            for (size_t i = 0; i < p; ++i)
                if (i != k) partial *= Rational(1) + x[i];
            rhs += partial;
        }
        return {lhs, rhs};
    }
    throw Error("unknown identity " + identity);
}

struct SymbolicSides {
    SparsePolynomial lhs;
    SparsePolynomial rhs;
};

SymbolicSides symbolic_sides(const std::string& identity, int p) {
    std::vector<SparsePolynomial> vars = all_variables(p);
    if (identity == "i-reversal") {
        std::vector<SparsePolynomial> rev(vars.rbegin(), vars.rend());
        return {P_over(vars, p), P_over(rev, p)};
    }
    if (identity == "ii-cyclic") {
        auto q_over = [p](const std::vector<SparsePolynomial>& xs) {
            return P_over(xs, p) - P_over(window(xs, 1, xs.size() - 1), p);
        };
        std::vector<SparsePolynomial> rot(vars.begin() + 1, vars.end());
        rot.push_back(vars[0]);
        return {q_over(vars), q_over(rot)};
    }
    if (identity == "iii-telescoping") {
        SparsePolynomial prod =
            P_over(vars, p) * P_over(window(vars, 1, (size_t)p - 1), p) -
            P_over(window(vars, 0, (size_t)p - 1), p) * P_over(window(vars, 1, (size_t)p), p);
        return {prod, SparsePolynomial::constant(Rational(-1), p)};
    }
    if (identity == "iv-delta-forms") {
        SparsePolynomial q = P_over(vars, p) - P_over(window(vars, 1, (size_t)p - 1), p);
        return {expand_Delta(p, std::max(p, kDefaultArityCap)),
                q * q - SparsePolynomial::constant(Rational(4), p)};
    }
    if (identity == "v-weighted-symmetric") {
        // e_j via the usual one-variable-at-a-time update.
        std::vector<SparsePolynomial> e((size_t)p + 1, SparsePolynomial(p));
        e[0] = SparsePolynomial::constant(Rational(1), p);
        for (int i = 0; i < p; ++i)
            for (size_t j = std::min((size_t)i + 1, (size_t)p); j >= 1; --j)
                e[j] = e[j] + e[j - 1] * vars[(size_t)i];
        SparsePolynomial lhs(p);
        for (size_t j = 0; j <= (size_t)p; ++j)
            lhs = lhs + SparsePolynomial::constant(Rational((long long)((size_t)p + 1 - j)), p) * e[j];
        SparsePolynomial one = SparsePolynomial::constant(Rational(1), p);
        SparsePolynomial prod = one;
        for (int i = 0; i < p; ++i) prod = prod * (one + vars[(size_t)i]);
        SparsePolynomial rhs = prod;
        for (int k = 0; k < p; ++k) {
            SparsePolynomial partial = one;
            for (int i = 0; i < p; ++i)
                if (i != k) partial = partial * (one + vars[(size_t)i]);
            rhs = rhs + partial;
        }
        return {lhs, rhs};
    }
    throw Error("unknown identity " + identity);
}

}  // namespace

IdentityReport verify_identities(int p_max, int trials, std::uint64_t seed) {
    if (p_max < 2) throw Error("p_max must be at least 2");
    if (trials < 0) throw Error("trials must be nonnegative");
    static const std::vector<std::string> kIdentities = {
        "i-reversal", "ii-cyclic", "iii-telescoping", "iv-delta-forms", "v-weighted-symmetric"};

    IdentityReport report;
    report.p_max = p_max;
    report.trials = trials;
    report.seed = seed;
    report.symbolic_cap = 8;

    Rng rng(seed);
    for (int p = 2; p <= p_max; ++p) {
        for (const std::string& identity : kIdentities) {
            IdentityResult res;
            res.identity = identity;
            res.p = p;
            res.trials = trials;
            if (p <= report.symbolic_cap) {
                res.symbolic_checked = true;
                SymbolicSides sides = symbolic_sides(identity, p);
                res.symbolic_pass = sides.lhs == sides.rhs;
                if (!res.symbolic_pass)
                    res.first_counterexample =
                        Counterexample{{}, sides.lhs.str(), sides.rhs.str(), -1};
            }
            for (int t = 0; t < trials; ++t) {
                std::vector<Rational> point;
                for (int i = 0; i < p; ++i) {
                    Rational r = rng.rational();
                    if (rng.integer(0, 1) == 1) r = -r;
                    point.push_back(r);
                }
                SideValues v = numeric_sides(identity, point);
                if (v.lhs != v.rhs) {
                    ++res.numeric_failures;
                    if (!res.first_counterexample)
                        res.first_counterexample = Counterexample{point, v.lhs.str(), v.rhs.str(), t};
                }
            }
            report.results.push_back(std::move(res));
        }
    }

    // Probe: the window claim for derivatives of P holds at the boundary
    // variable but misses the constant at an interior one.
    SparsePolynomial p3 = expand_P(3);
    {
        SparsePolynomial d0 = p3.derivative(0);
        SparsePolynomial win0 =
            P_over({SparsePolynomial::variable(1, 3), SparsePolynomial::variable(2, 3)}, 3);
        report.probes.push_back({"vi-derivative", "dP_3/dX_0", d0 == win0,
                                 "dP_3/dX_0 = " + d0.str() + "; window P_2(X1,X2) = " + win0.str()});
        SparsePolynomial d1 = p3.derivative(1);
        SparsePolynomial win1 =
            P_over({SparsePolynomial::variable(0, 3), SparsePolynomial::variable(2, 3)}, 3);
        report.probes.push_back({"vi-derivative", "dP_3/dX_1", d1 == win1,
                                 "dP_3/dX_1 = " + d1.str() + "; window P_2(X0,X2) = " + win1.str()});
    }
    // Probe: Q against the doubled product form at (3,3).
    {
        std::vector<Rational> x = {Rational(3), Rational(3)};
        Rational q = eval_Q(x);
        Rational closed = Rational(2) * (x[0] - Rational(1)) * (x[1] - Rational(1));
        report.probes.push_back({"q-closed-form", "p=2", q == closed,
                                 "Q_2(3,3) = " + q.str() + "; 2*prod(x_i - 1) = " + closed.str()});
    }
    return report;
}

}  // namespace viikit
