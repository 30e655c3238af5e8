#include "viikit/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace viikit {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const QuadraticNumber& q) {
    if (q.is_rational()) return q.a().str();
    Json j = Json::object();
    j["a"] = q.a().str();
    j["b"] = q.b().str();
    j["d"] = q.d().str();
    return j;
}

Json to_json(const CurveConfiguration& c) {
    Json cycle = Json::array();
    for (const CycleCurve& d : c.cycle) cycle.push_back(Json{{"self", d.self}, {"node", d.nodes}});
    Json branches = Json::array();
    for (const Branch& b : c.branches)
        branches.push_back(Json{{"attach", b.attach}, {"chain", b.chain}});
    return Json{{"cycle", cycle}, {"branches", branches}};
}

Json to_json(const IntersectionData& d) {
    Json rows = Json::array();
    for (const auto& row : d.matrix) {
        Json r = Json::array();
        for (const BigInt& v : row) r.push_back(v.convert_to<long long>());
        rows.push_back(r);
    }
    return Json{{"labels", d.labels}, {"matrix", rows}};
}

Json to_json(const AnticanonicalResult& r) {
    Json lambda = Json::array();
    for (const Rational& x : r.lambda) lambda.push_back(x.str());
    Json j{{"lambda", lambda}, {"m", r.m.str()}};
    if (r.k) j["k"] = r.k->str();
    return j;
}

Json to_json(const QuadraticEquation& e) {
    return Json{{"index", e.index}, {"a", e.a.str()}, {"b", e.b.str()}, {"c", e.c.str()}};
}

Json to_json(const CSSolution& s) {
    Json alpha = Json::array();
    for (const QuadraticNumber& a : s.alpha) alpha.push_back(to_json(a));
    return Json{{"branch", s.branch == BranchKind::plus_branch ? "plus" : "minus"},
                {"alpha", alpha},
                {"mu", to_json(s.mu)},
                {"discriminant", s.discriminant.str()}};
}

Json to_json(const Certificate& c) {
    return Json{{"signs", c.signs},
                {"all_negative_cs", c.all_negative_cs},
                {"mu_ge_1", c.mu_ge_1},
                {"mu", to_json(c.mu)}};
}

Json to_json(const AnalysisReport& r) {
    Json j;
    j["config"] = to_json(r.config);
    j["intersection"] = to_json(r.intersection);
    j["det"] = r.det.str();
    if (r.k) j["k"] = r.k->str();
    if (r.k_note) j["k_note"] = *r.k_note;
    if (r.anticanonical) j["anticanonical"] = to_json(*r.anticanonical);
    if (r.anticanonical_note) j["anticanonical_note"] = *r.anticanonical_note;
    Json delta = Json::array();
    for (const Rational& d : r.system.delta) delta.push_back(d.str());
    j["delta"] = delta;
    if (!r.equations.empty()) {
        Json eqs = Json::array();
        for (const QuadraticEquation& e : r.equations) eqs.push_back(to_json(e));
        j["equations"] = eqs;
    }
    if (r.solutions)
        j["solutions"] = Json{{"plus", to_json(r.solutions->first)},
                              {"minus", to_json(r.solutions->second)}};
    if (r.cs_note) j["cs_note"] = *r.cs_note;
    if (r.plus_certificate || r.minus_certificate) {
        Json certs = Json::object();
        if (r.plus_certificate) certs["plus"] = to_json(*r.plus_certificate);
        if (r.minus_certificate) certs["minus"] = to_json(*r.minus_certificate);
        j["certificates"] = certs;
    }
    if (r.mu_plus_equals_k) j["mu_plus_equals_k"] = *r.mu_plus_equals_k;
    return j;
}

Json to_json(const IdentityReport& r) {
    Json results = Json::array();
    for (const IdentityResult& x : r.results) {
        Json e{{"identity", x.identity},
               {"p", x.p},
               {"symbolic_checked", x.symbolic_checked},
               {"symbolic_pass", x.symbolic_pass},
               {"trials", x.trials},
               {"numeric_failures", x.numeric_failures},
               {"pass", x.pass()}};
        if (x.first_counterexample) {
            const Counterexample& c = *x.first_counterexample;
            Json point = Json::array();
            for (const Rational& v : c.point) point.push_back(v.str());
            e["counterexample"] =
                Json{{"point", point}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"trial", c.trial}};
        }
        results.push_back(e);
    }
    Json probes = Json::array();
    for (const ProbeResult& p : r.probes)
        probes.push_back(Json{{"probe", p.probe},
                              {"instance", p.instance},
                              {"agrees", p.agrees},
                              {"detail", p.detail}});
    return Json{{"p_max", r.p_max},      {"trials", r.trials},
                {"seed", r.seed},        {"symbolic_cap", r.symbolic_cap},
                {"pass", r.all_identities_pass()},
                {"results", results},    {"probes", probes}};
}

Json to_json(const Germ& g) {
    Json coeffs = Json::object();
    for (const auto& [p, c] : g.coeffs) coeffs[std::to_string(p)] = scalar_str(c);
    return Json{{"k", g.k},
                {"s", g.s},
                {"j", g.j},
                {"coeffs", coeffs},
                {"lambda", scalar_str(g.lambda)},
                {"c_extra", scalar_str(g.c_extra)}};
}

Json to_json(const ConsistencyReport& r) {
    Json j;
    if (r.config_k) j["config_k"] = r.config_k->str();
    if (r.config_k_note) j["config_k_note"] = *r.config_k_note;
    j["germ_k"] = r.germ_k;
    j["k_match"] = r.k_match;
    if (r.config_m) j["config_m"] = r.config_m->str();
    if (r.config_m_note) j["config_m_note"] = *r.config_m_note;
    j["germ_m"] = r.germ_m;
    j["m_match"] = r.m_match;
    j["pass"] = r.pass();
    return j;
}

Json to_json(const Verdict& v) {
    Json chains = Json::array();
    for (const ChainVerdict& c : v.chains) {
        Json jc{{"chain", c.chain}, {"equal", c.equal}, {"order", c.order}};
        if (c.mismatch)
            jc["mismatch"] = Json{{"component", c.mismatch->component},
                                  {"z", c.mismatch->z_exp},
                                  {"zeta", c.mismatch->zeta_exp},
                                  {"got", c.mismatch->got.str()},
                                  {"want", c.mismatch->want.str()}};
        if (c.violation) jc["violation"] = *c.violation;
        chains.push_back(jc);
    }
    return Json{
        {"pass", v.pass()}, {"require_all", v.require_all}, {"order", v.order}, {"chains", chains}};
}

Json to_json(const SearchMatch& m) {
    Json j{{"config", to_json(m.config)}, {"det", m.det.str()}};
    if (m.k) j["k"] = m.k->str();
    if (m.lambda) {
        Json lambda = Json::array();
        for (const Rational& x : *m.lambda) lambda.push_back(x.str());
        j["lambda"] = lambda;
    }
    if (m.m) j["m"] = m.m->str();
    return j;
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    throw Error("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

CurveConfiguration config_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("cycle") || !j["cycle"].is_array())
        throw Error("configuration document needs a 'cycle' array");
    CurveConfiguration c;
    for (const Json& e : j["cycle"]) {
        CycleCurve d;
        d.self = e.at("self").get<long long>();
        d.nodes = e.value("node", 0);
        c.cycle.push_back(d);
    }
    if (j.contains("branches"))
        for (const Json& e : j["branches"]) {
            Branch b;
            b.attach = e.at("attach").get<int>();
            for (const Json& s : e.at("chain")) b.chain.push_back(s.get<long long>());
            c.branches.push_back(b);
        }
    return c;
}

namespace {

GermScalar scalar_from_json(const Json& v) {
    if (v.is_string()) return parse_scalar(v.get<std::string>());
    if (v.is_number_integer()) return GermScalar(Rational(BigInt(v.get<long long>())));
    throw Error("germ scalar must be a string or an integer, got " + v.dump());
}

}  // namespace

Germ germ_from_json(const Json& j) {
    Germ g;
    g.k = j.at("k").get<long long>();
    g.s = j.at("s").get<long long>();
    g.j = j.at("j").get<long long>();
    g.coeffs.clear();
    if (j.contains("coeffs"))
        for (const auto& [key, value] : j["coeffs"].items())
            g.coeffs[std::stoll(key)] = scalar_from_json(value);
    if (j.contains("lambda")) g.lambda = scalar_from_json(j["lambda"]);
    if (j.contains("c_extra")) g.c_extra = scalar_from_json(j["c_extra"]);
    return g;
}

// --- fixtures -----------------------------------------------------------------

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open fixture file " + path);
    Json doc = Json::parse(in);
    Fixture f;
    f.path = path;
    f.payload = doc;
    f.name = doc.value("name", std::filesystem::path(path).stem().string());
    std::string kind = doc.value("kind", "configuration");
    if (kind == "configuration")
        f.kind = FixtureKind::configuration;
    else if (kind == "germ")
        f.kind = FixtureKind::germ;
    else if (kind == "factorization")
        f.kind = FixtureKind::factorization;
    else if (kind == "pairing")
        f.kind = FixtureKind::pairing;
    else
        throw Error("unknown fixture kind '" + kind + "' in " + path);
    return f;
}

std::vector<Fixture> load_fixture_dir(const std::string& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error("not a fixture directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<Fixture> out;
    out.reserve(paths.size());
    for (const std::string& p : paths) out.push_back(load_fixture(p));
    return out;
}

namespace {

// The fixture document wraps the subject under "payload"; raw documents (a
// bare configuration or germ) are accepted as their own payload.
const Json& payload_of(const Fixture& f) {
    return f.payload.contains("payload") ? f.payload["payload"] : f.payload;
}

// Dotted-path lookup into a report; array segments are numeric indices.
const Json* walk(const Json& root, const std::string& path) {
    const Json* cur = &root;
    size_t pos = 0;
    while (true) {
        size_t dot = path.find('.', pos);
        std::string seg = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (cur->is_array()) {
            size_t idx = 0;
            try {
                idx = std::stoul(seg);
            } catch (...) {
                return nullptr;
            }
            if (idx >= cur->size()) return nullptr;
            cur = &(*cur)[idx];
        } else if (cur->is_object()) {
            if (!cur->contains(seg)) return nullptr;
            cur = &(*cur)[seg];
        } else {
            return nullptr;
        }
        if (dot == std::string::npos) return cur;
        pos = dot + 1;
    }
}

std::vector<ExpectationCheck> evaluate_expectations(const Json& report, const Json& expectations) {
    std::vector<ExpectationCheck> out;
    if (!expectations.is_object()) return out;
    for (const auto& [key, want] : expectations.items()) {
        ExpectationCheck check;
        check.name = key;
        check.expected = want.dump();
        const Json* got = walk(report, key);
        check.actual = got ? got->dump() : "(missing)";
        check.pass = got != nullptr && *got == want;
        out.push_back(std::move(check));
    }
    return out;
}

Json compute_report(const Fixture& f) {
    const Json& payload = payload_of(f);
    switch (f.kind) {
        case FixtureKind::configuration:
            return to_json(analyze(config_from_json(payload)));
        case FixtureKind::germ: {
            Germ g = germ_from_json(payload);
            Json j{{"germ", to_json(g)}};
            std::vector<std::string> violations = germ_violations(g);
            j["violations"] = violations;
            if (violations.empty()) {
                long long m = index_m(g);
                j["m"] = std::to_string(m);
                try {
                    Germ reduced = reduce(g, m);
                    j["reduced"] = to_json(reduced);
                    j["index_after"] = index_m(reduced);
                } catch (const InvalidReduction& e) {
                    j["reduction_note"] = e.what();
                }
            }
            return j;
        }
        case FixtureKind::factorization: {
            FactorizationFixture ff = factorization_from_json(payload);
            int order = payload.value("order", ff.default_order);
            return to_json(verify_factorization(ff, order));
        }
        case FixtureKind::pairing:
            return to_json(cross_check(config_from_json(payload.at("config")),
                                       germ_from_json(payload.at("germ"))));
    }
    throw Error("unreachable fixture kind");
}

}  // namespace

FixtureOutcome run_fixture(const Fixture& fixture) {
    FixtureOutcome out;
    out.name = fixture.name;
    try {
        out.report = compute_report(fixture);
        out.checks = evaluate_expectations(out.report,
                                           fixture.payload.value("expectations", Json::object()));
        out.pass = true;
        for (const ExpectationCheck& c : out.checks) out.pass = out.pass && c.pass;
    } catch (const std::exception& e) {
        out.error = e.what();
        out.pass = false;
    }
    return out;
}

std::string render_table(const AnalysisReport& report) {
    std::ostringstream out;
    auto row = [&out](const std::string& key, const std::string& value) {
        out << std::left << std::setw(18) << key << value << "\n";
    };
    auto join_rationals = [](const std::vector<Rational>& xs) {
        std::string s;
        for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].str();
        return s;
    };

    std::string cycle;
    for (size_t i = 0; i < report.config.cycle.size(); ++i) {
        cycle += (i ? " " : "") + std::to_string(report.config.cycle[i].self);
        if (report.config.cycle[i].nodes > 0) cycle += " (node)";
    }
    row("cycle", cycle);
    for (const Branch& b : report.config.branches) {
        std::string chain;
        for (size_t i = 0; i < b.chain.size(); ++i)
            chain += (i ? " " : "") + std::to_string(b.chain[i]);
        row("branch @" + std::to_string(b.attach), chain);
    }

    row("det", report.det.str());
    if (report.k) row("k", report.k->str());
    if (report.k_note) row("k note", *report.k_note);
    if (report.anticanonical) {
        row("anticanonical", join_rationals(report.anticanonical->lambda));
        row("m", report.anticanonical->m.str());
    }
    if (report.anticanonical_note) row("anticanonical note", *report.anticanonical_note);
    row("delta", join_rationals(report.system.delta));
    if (report.solutions) {
        auto join_alpha = [](const CSSolution& s) {
            std::string txt;
            for (size_t i = 0; i < s.alpha.size(); ++i)
                txt += (i ? ", " : "") + s.alpha[i].str();
            return txt + "  (mu = " + s.mu.str() + ")";
        };
        row("alpha plus", join_alpha(report.solutions->first));
        row("alpha minus", join_alpha(report.solutions->second));
    }
    if (report.cs_note) row("cs note", *report.cs_note);
    if (report.mu_plus_equals_k) row("mu+ == k", *report.mu_plus_equals_k ? "yes" : "no");
    return out.str();
}

FactorizationFixture factorization_from_json(const Json& j) {
    FactorizationFixture f;
    f.target = germ_from_json(j.at("target"));
    if (j.contains("assignment"))
        for (const auto& [key, value] : j["assignment"].items())
            f.assignment[key] = rational_from_json(value);
    if (j.contains("intermediates"))
        for (const Json& e : j["intermediates"])
            f.intermediates.push_back(
                {e.at("name").get<std::string>(), e.at("expr").get<std::string>()});
    const Json& sigma = j.at("sigma");
    if (!sigma.is_array() || sigma.size() != 2)
        throw Error("'sigma' must be an array of two expressions");
    f.sigma = {sigma[0].get<std::string>(), sigma[1].get<std::string>()};
    for (const Json& c : j.at("chains")) {
        FactorizationChain chain;
        chain.name = c.at("name").get<std::string>();
        for (const Json& m : c.at("maps")) {
            if (!m.is_array() || m.size() != 2)
                throw Error("each map must be an array of two expressions");
            chain.maps.push_back(PolyMap::parse(m[0].get<std::string>(), m[1].get<std::string>()));
        }
        f.chains.push_back(std::move(chain));
    }
    if (j.contains("require_all")) f.require_all = j["require_all"].get<bool>();
    if (j.contains("order")) f.default_order = j["order"].get<int>();
    return f;
}

}  // namespace viikit
