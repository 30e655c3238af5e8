#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "viikit/cfpoly.hpp"
#include "viikit/germ.hpp"
#include "viikit/search.hpp"
#include "viikit/series.hpp"
#include "viikit/surface.hpp"

namespace viikit {

// Insertion-ordered JSON keeps every report byte-deterministic.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);                  // "p/q" string, "p" when integral
Json to_json(const QuadraticNumber& q);           // string when rational, else {a,b,d}
Json to_json(const CurveConfiguration& c);
Json to_json(const IntersectionData& d);
Json to_json(const AnticanonicalResult& r);
Json to_json(const QuadraticEquation& e);
Json to_json(const CSSolution& s);
Json to_json(const Certificate& c);
Json to_json(const AnalysisReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const Germ& g);
Json to_json(const ConsistencyReport& r);
Json to_json(const Verdict& v);
Json to_json(const SearchMatch& m);

Rational rational_from_json(const Json& j);
CurveConfiguration config_from_json(const Json& j);
Germ germ_from_json(const Json& j);

// --- fixtures ---------------------------------------------------------------

enum class FixtureKind { configuration, germ, factorization, pairing };

// One bundled regression case. `payload` keeps the raw document so each kind
// can pull its own schema; `expect` is an optional map of named expected
// values checked against the computed report.
struct Fixture {
    std::string name;
    FixtureKind kind = FixtureKind::configuration;
    Json payload;
    std::string path;
};

Fixture load_fixture(const std::string& path);
std::vector<Fixture> load_fixture_dir(const std::string& dir);

struct ExpectationCheck {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
};

struct FixtureOutcome {
    std::string name;
    bool pass = false;
    std::vector<ExpectationCheck> checks;
    std::optional<std::string> error;
    Json report;
};

// Runs a fixture according to its kind (analysis pipeline, germ checks,
// factorization verification, or surface/germ cross-check) and evaluates all
// embedded expectations.
FixtureOutcome run_fixture(const Fixture& fixture);

// Human-readable table rendering of an analysis report (--table).
std::string render_table(const AnalysisReport& report);

FactorizationFixture factorization_from_json(const Json& j);

}  // namespace viikit
