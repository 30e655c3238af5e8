// viikit: exact invariants of curve-cycle surface data and contracting germs.
// Exit codes: 0 success, 1 domain failure (invalid input data, failed check),
// 2 usage or file/parse error.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "viikit/cfpoly.hpp"
#include "viikit/germ.hpp"
#include "viikit/io.hpp"
#include "viikit/search.hpp"
#include "viikit/series.hpp"
#include "viikit/surface.hpp"

namespace {

using viikit::Json;

void fail(const std::string& what) { std::cerr << "viikit: " << what << "\n"; }

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("VIIKIT_SEED")) return std::strtoull(env, nullptr, 10);
    return 20260816ull;
}

const Json& payload_of(const viikit::Fixture& f) {
    return f.payload.contains("payload") ? f.payload["payload"] : f.payload;
}

// Accepts either a bundled fixture wrapper or a raw germ document.
viikit::Germ load_germ_file(const std::string& path) {
    viikit::Fixture f = viikit::load_fixture(path);
    return viikit::germ_from_json(payload_of(f));
}

viikit::CurveConfiguration load_config_file(const std::string& path) {
    viikit::Fixture f = viikit::load_fixture(path);
    return viikit::config_from_json(payload_of(f));
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& path, bool table) {
    viikit::Fixture fixture;
    try {
        fixture = viikit::load_fixture(path);
        if (fixture.kind != viikit::FixtureKind::configuration) {
            fail("not a configuration fixture: " + path);
            return 2;
        }
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        viikit::FixtureOutcome outcome = viikit::run_fixture(fixture);
        if (outcome.error) {
            fail(*outcome.error);
            return 1;
        }
        if (table) {
            viikit::AnalysisReport report =
                viikit::analyze(viikit::config_from_json(payload_of(fixture)));
            std::cout << viikit::render_table(report);
        } else {
            emit(outcome.report);
        }
        if (!outcome.pass) {
            for (const viikit::ExpectationCheck& c : outcome.checks)
                if (!c.pass)
                    fail("expectation '" + c.name + "' wanted " + c.expected + ", got " + c.actual);
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_poly_verify(int p_max, int trials, const std::optional<std::uint64_t>& seed_flag) {
    viikit::IdentityReport report;
    try {
        report = viikit::verify_identities(p_max, trials, resolve_seed(seed_flag));
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    emit(viikit::to_json(report));
    return report.all_identities_pass() ? 0 : 1;
}

int cmd_germ_index(const std::string& path) {
    viikit::Germ germ;
    try {
        germ = load_germ_file(path);
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        viikit::validate(germ);
        Json j{{"germ", viikit::to_json(germ)}, {"m", std::to_string(viikit::index_m(germ))}};
        emit(j);
        return 0;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_germ_reduce(const std::string& path, const std::optional<long long>& q_flag) {
    viikit::Germ germ;
    try {
        germ = load_germ_file(path);
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        viikit::validate(germ);
        long long q = q_flag ? *q_flag : viikit::index_m(germ);
        viikit::Germ reduced = viikit::reduce(germ, q);
        Json j{{"q", q},
               {"germ", viikit::to_json(germ)},
               {"reduced", viikit::to_json(reduced)},
               {"k_preserved", germ.k == reduced.k},
               {"index_after", viikit::index_m(reduced)}};
        emit(j);
        return 0;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_germ_crosscheck(const std::string& config_path, const std::string& germ_path) {
    viikit::CurveConfiguration config;
    viikit::Germ germ;
    try {
        config = load_config_file(config_path);
        germ = load_germ_file(germ_path);
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        viikit::ConsistencyReport report = viikit::cross_check(config, germ);
        emit(viikit::to_json(report));
        return report.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_series_verify(const std::string& path, const std::optional<int>& order_flag) {
    viikit::FactorizationFixture fixture;
    int order = 0;
    try {
        viikit::Fixture f = viikit::load_fixture(path);
        if (f.kind != viikit::FixtureKind::factorization) {
            fail("not a factorization fixture: " + path);
            return 2;
        }
        fixture = viikit::factorization_from_json(payload_of(f));
        order = order_flag ? *order_flag : fixture.default_order;
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        viikit::Verdict verdict = viikit::verify_factorization(fixture, order);
        emit(viikit::to_json(verdict));
        return verdict.pass() ? 0 : 1;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_search(const std::vector<long long>& self_ints, const std::optional<std::string>& det,
               const std::vector<std::string>& lambda) {
    viikit::SearchQuery query;
    query.self_ints = self_ints;
    try {
        if (det) query.det = viikit::BigInt(*det);
        if (!lambda.empty()) {
            std::vector<viikit::Rational> want;
            for (const std::string& s : lambda) want.push_back(viikit::Rational::parse(s));
            query.lambda = std::move(want);
        }
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    try {
        std::vector<viikit::SearchMatch> matches = viikit::search_configurations(query);
        Json jq{{"self_ints", query.self_ints}};
        if (query.det) jq["det"] = query.det->str();
        if (query.lambda) {
            Json want = Json::array();
            for (const viikit::Rational& r : *query.lambda) want.push_back(r.str());
            jq["lambda"] = want;
        }
        Json jm = Json::array();
        for (const viikit::SearchMatch& m : matches) jm.push_back(viikit::to_json(m));
        emit(Json{{"query", jq}, {"matches", jm}});
        return 0;
    } catch (const std::exception& e) {
        fail(e.what());
        return 1;
    }
}

int cmd_fixtures_list(const std::string& dir) {
    try {
        const char* kind_names[] = {"configuration", "germ", "factorization", "pairing"};
        for (const viikit::Fixture& f : viikit::load_fixture_dir(dir))
            std::cout << f.name << "  [" << kind_names[(int)f.kind] << "]  " << f.path << "\n";
        return 0;
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
}

int cmd_fixtures_run(const std::string& dir) {
    std::vector<viikit::Fixture> fixtures;
    try {
        fixtures = viikit::load_fixture_dir(dir);
    } catch (const std::exception& e) {
        fail(e.what());
        return 2;
    }
    int failures = 0;
    for (const viikit::Fixture& f : fixtures) {
        viikit::FixtureOutcome outcome = viikit::run_fixture(f);
        if (outcome.pass) {
            std::cout << "PASS " << f.name << "\n";
            continue;
        }
        ++failures;
        std::cout << "FAIL " << f.name;
        if (outcome.error) std::cout << " -- " << *outcome.error;
        for (const viikit::ExpectationCheck& c : outcome.checks)
            if (!c.pass)
                std::cout << " -- " << c.name << ": wanted " << c.expected << ", got " << c.actual;
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of curve-cycle surface data and contracting germs"};
    app.require_subcommand(1);

    // analyze
    std::string analyze_path;
    bool analyze_table = false;
    CLI::App* analyze = app.add_subcommand("analyze", "full invariant pipeline on a configuration");
    analyze->add_option("fixture", analyze_path, "configuration fixture file")->required();
    analyze->add_flag("--table", analyze_table, "human-readable table instead of JSON");

    // poly verify
    CLI::App* poly = app.add_subcommand("poly", "continued-fraction polynomial identities");
    poly->require_subcommand(1);
    int poly_pmax = 8;
    int poly_trials = 100;
    std::uint64_t poly_seed_value = 0;
    CLI::App* poly_verify = poly->add_subcommand("verify", "run the identity suite");
    poly_verify->add_option("--pmax", poly_pmax, "largest cycle length checked");
    poly_verify->add_option("--trials", poly_trials, "numeric points per identity");
    CLI::Option* poly_seed = poly_verify->add_option("--seed", poly_seed_value, "RNG seed");

    // germ index | reduce | crosscheck
    CLI::App* germ = app.add_subcommand("germ", "contracting-germ normal forms");
    germ->require_subcommand(1);
    std::string germ_index_path;
    CLI::App* germ_index = germ->add_subcommand("index", "index m = (k-1)/gcd(k-1, s)");
    germ_index->add_option("germ", germ_index_path, "germ file")->required();
    std::string germ_reduce_path;
    long long germ_reduce_q = 0;
    CLI::App* germ_reduce = germ->add_subcommand("reduce", "reduction step to a smaller index");
    germ_reduce->add_option("germ", germ_reduce_path, "germ file")->required();
    CLI::Option* q_opt = germ_reduce->add_option("--q", germ_reduce_q, "reduction degree (default: the index)");
    std::string cross_config_path, cross_germ_path;
    CLI::App* germ_cross = germ->add_subcommand("crosscheck", "germ invariants vs surface invariants");
    germ_cross->add_option("config", cross_config_path, "configuration file")->required();
    germ_cross->add_option("germ", cross_germ_path, "germ file")->required();

    // series verify
    CLI::App* series = app.add_subcommand("series", "blow-up factorization verification");
    series->require_subcommand(1);
    std::string series_path;
    int series_order_value = 0;
    CLI::App* series_verify = series->add_subcommand("verify", "check a factorization fixture");
    series_verify->add_option("fixture", series_path, "factorization fixture file")->required();
    CLI::Option* series_order = series_verify->add_option("--order", series_order_value,
                                                          "comparison order (total degree)");

    // search
    std::vector<long long> search_self_ints;
    std::string search_det;
    std::vector<std::string> search_lambda;
    CLI::App* search = app.add_subcommand("search", "enumerate configurations on a multiset");
    search->add_option("--self-ints", search_self_ints, "comma-separated self-intersections")
        ->required()
        ->delimiter(',');
    CLI::Option* det_opt = search->add_option("--det", search_det, "required determinant");
    search->add_option("--anticanonical", search_lambda, "required anticanonical multiset")
        ->delimiter(',');

    // fixtures list | run
    CLI::App* fixtures = app.add_subcommand("fixtures", "bundled regression cases");
    fixtures->require_subcommand(1);
    std::string list_dir, run_dir;
    CLI::App* fixtures_list = fixtures->add_subcommand("list", "list fixtures in a directory");
    fixtures_list->add_option("--dir", list_dir, "fixture directory")->required();
    CLI::App* fixtures_run = fixtures->add_subcommand("run", "run fixtures and their expectations");
    fixtures_run->add_option("--dir", run_dir, "fixture directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) return cmd_analyze(analyze_path, analyze_table);
    if (poly_verify->parsed()) {
        std::optional<std::uint64_t> seed;
        if (poly_seed->count() > 0) seed = poly_seed_value;
        return cmd_poly_verify(poly_pmax, poly_trials, seed);
    }
    if (germ_index->parsed()) return cmd_germ_index(germ_index_path);
    if (germ_reduce->parsed()) {
        std::optional<long long> q;
        if (q_opt->count() > 0) q = germ_reduce_q;
        return cmd_germ_reduce(germ_reduce_path, q);
    }
    if (germ_cross->parsed()) return cmd_germ_crosscheck(cross_config_path, cross_germ_path);
    if (series_verify->parsed()) {
        std::optional<int> order;
        if (series_order->count() > 0) order = series_order_value;
        return cmd_series_verify(series_path, order);
    }
    if (search->parsed()) {
        std::optional<std::string> det;
        if (det_opt->count() > 0) det = search_det;
        return cmd_search(search_self_ints, det, search_lambda);
    }
    if (fixtures_list->parsed()) return cmd_fixtures_list(list_dir);
    if (fixtures_run->parsed()) return cmd_fixtures_run(run_dir);

    fail("no command selected");
    return 2;
}
