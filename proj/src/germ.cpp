#include "viikit/germ.hpp"

#include <numeric>

#include "viikit/surface.hpp"

namespace viikit {

bool scalar_is_zero(const GermScalar& s) {
    return std::holds_alternative<Rational>(s) && std::get<Rational>(s).is_zero();
}

bool scalar_is_one(const GermScalar& s) {
    return std::holds_alternative<Rational>(s) && std::get<Rational>(s) == Rational(1);
}

std::string scalar_str(const GermScalar& s) {
    if (std::holds_alternative<Rational>(s)) return std::get<Rational>(s).str();
    return std::get<std::string>(s);
}

GermScalar parse_scalar(const std::string& text) {
    if (text.empty()) throw ParseError("empty germ scalar");
    try {
        return Rational::parse(text);
    } catch (const ParseError&) {
        return text;  // a named symbolic coefficient
    }
}

std::vector<std::string> germ_violations(const Germ& g) {
    std::vector<std::string> out;
    if (g.k < 2) out.push_back("k = " + std::to_string(g.k) + " must be at least 2");
    if (g.s < 1) out.push_back("s = " + std::to_string(g.s) + " must be positive");
    if (g.j < 1) out.push_back("j = " + std::to_string(g.j) + " must be positive");
    if (g.j >= g.k)
        out.push_back("j = " + std::to_string(g.j) + " must be smaller than k = " +
                      std::to_string(g.k));
    if (g.j > g.s)
        out.push_back("j = " + std::to_string(g.j) + " must not exceed s = " +
                      std::to_string(g.s));
    if (scalar_is_zero(g.lambda)) out.push_back("lambda must be nonzero");

    auto leading = g.coeffs.find(g.j);
    if (leading == g.coeffs.end())
        out.push_back("the leading coefficient c_" + std::to_string(g.j) + " is missing");
    else if (!scalar_is_one(leading->second))
        out.push_back("the leading coefficient c_" + std::to_string(g.j) + " = " +
                      scalar_str(leading->second) + " must be 1");

    long long g_all = g.k;
    for (const auto& [p, c] : g.coeffs) {
        if (p < g.j || p > g.s)
            out.push_back("coefficient exponent " + std::to_string(p) + " outside [" +
                          std::to_string(g.j) + ", " + std::to_string(g.s) + "]");
        if (scalar_is_zero(c))
            out.push_back("coefficient c_" + std::to_string(p) + " is stored but zero");
        else
            g_all = std::gcd(g_all, p);
    }
    if (g_all != 1)
        out.push_back("gcd of k and the supported exponents is " + std::to_string(g_all) +
                      "; the normal form requires 1");

    if (!scalar_is_zero(g.c_extra)) {
        if (g.k >= 2 && (g.s * g.k) % (g.k - 1) != 0)
            out.push_back("extra coefficient requires (k-1) | s k, but " +
                          std::to_string(g.k - 1) + " does not divide " +
                          std::to_string(g.s * g.k));
        if (!scalar_is_one(g.lambda))
            out.push_back("extra coefficient requires lambda = 1, got " + scalar_str(g.lambda));
    }
    return out;
}

void validate(const Germ& g) {
    auto v = germ_violations(g);
    if (v.empty()) return;
    std::string msg = "invalid germ:";
    for (const auto& s : v) msg += "\n  - " + s;
    throw InvalidGerm(msg, std::move(v));
}

long long index_m(const Germ& g) {
    if (g.k < 2) throw Error("index of a germ with k < 2");
    return (g.k - 1) / std::gcd(g.k - 1, g.s);
}

Germ reduce(const Germ& g, long long q) {
    validate(g);
    if (q < 1) throw InvalidReduction("q = " + std::to_string(q) + " must be positive");
    if (q == 1) return g;
    if ((g.k - 1) % q != 0)
        throw InvalidReduction("q = " + std::to_string(q) + " does not divide k - 1 = " +
                               std::to_string(g.k - 1));
    if ((q * g.s) % (g.k - 1) != 0)
        throw InvalidReduction("k - 1 = " + std::to_string(g.k - 1) + " does not divide q s = " +
                               std::to_string(q * g.s));
    if (!scalar_is_zero(g.c_extra))
        throw InvalidReduction("a nonzero extra coefficient cannot pass a q >= 2 rewrite");

    const long long r = (q * g.j) / g.k;
    Germ out;
    out.k = g.k;
    out.lambda = g.lambda;
    out.s = q * g.s - r * (g.k - 1);
    out.j = q * g.j - r * g.k;
    for (const auto& [p, c] : g.coeffs) out.coeffs.emplace(q * p - r * g.k, c);
    out.c_extra = Rational(0);
    validate(out);  // the rewrite preserves the normal form; a failure is a bug
    return out;
}

ConsistencyReport cross_check(const CurveConfiguration& config, const Germ& germ) {
    validate(germ);
    ConsistencyReport report;
    report.germ_k = germ.k;
    report.germ_m = index_m(germ);

    IntersectionData data = intersection_matrix(config);
    BigInt det = determinant(data.matrix);
    if (det == 0) {
        report.config_k_note =
            "determinant is 0, so sqrt(det) + 1 degenerates; the torsion order is left undefined";
    } else {
        try {
            report.config_k = torsion_k(data.matrix);
        } catch (const NotPerfectSquare& e) {
            report.config_k_note = e.what();
        }
    }
    try {
        report.config_m = anticanonical(config).m;
    } catch (const SingularMatrix& e) {
        report.config_m_note = std::string("no anticanonical solution: ") + e.what();
    }

    report.k_match = report.config_k.has_value() && *report.config_k == BigInt(germ.k);
    report.m_match = report.config_m.has_value() && *report.config_m == BigInt(report.germ_m);
    return report;
}

}  // namespace viikit
