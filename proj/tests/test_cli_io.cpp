#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncurv/errors.hpp"
#include "ncurv/report.hpp"
#include "ncurv/spec_io.hpp"
#include "ncurv/sweep.hpp"
#include "ncurv/verify.hpp"

using namespace ncurv;
using nlohmann::json;

namespace {

json spec(const char* text) { return json::parse(text); }

}  // namespace

TEST_CASE("spec files: every type parses") {
    const auto dense = parse_spec<Exact>(spec(R"J({"type":"dense","n":2,"payload":{"matrices":[[["1/2",0],[0,0]],[[0,[0,"1/2"]],[0,0]]]}})J"));
    REQUIRE(dense.contraction);
    CHECK(dense.contraction->kind() == "dense");

    const auto lr = parse_spec<Exact>(spec(R"J({"type":"left_regular","n":3,"alpha":2})J"));
    CHECK(lr.contraction->copies() == 2);

    const auto atomic = parse_spec<Exact>(spec(R"J({"type":"atomic","n":2,"payload":{"ring":"12","lambda":["1/2",[0,1]]}})J"));
    CHECK(atomic.contraction->kind() == "decaying_atomic");
    const auto moduli = parse_spec<Exact>(spec(R"J({"type":"atomic","n":2,"payload":{"ring":1,"moduli":["1/2"]}})J"));
    const auto root = parse_spec<Exact>(spec(R"J({"type":"atomic","n":2,"payload":{"ring":"1","lambda":["sqrt(1/2)"]}})J"));
    CHECK(defect_sequence(*moduli.contraction, 6) == defect_sequence(*root.contraction, 6));

    const auto comp = parse_spec<Exact>(spec(R"J({"type":"compression","n":2,"payload":{"orientation":"complement",
        "generators":[{"kind":"finite","coefficients":{"12":"3/5","21":"4/5"}}]}})J"));
    CHECK(comp.contraction->kind() == "compression");

    const auto ray = parse_spec<Float>(spec(R"J({"type":"subspace","n":2,"payload":{"generators":[
        {"kind":"geometric","prefix":"","letter":1,"head":-0.5,"scale":0.75,"ratio":0.5}]}})J"));
    REQUIRE(ray.subspace);
    CHECK_FALSE(ray.contraction);
    CHECK(ray.subspace->generators.front().ray());

    const auto sum = parse_spec<Exact>(spec(R"J({"type":"direct_sum","n":2,"payload":{"parts":[
        {"type":"left_regular","n":2},{"type":"atomic","n":2,"payload":{"ring":"1","lambda":["1/2"]}}]}})J"));
    CHECK(sum.contraction->kind() == "direct_sum");

    const auto mix = parse_spec<Exact>(spec(R"J({"type":"unitary_mix","n":2,"payload":{"base":{"type":"left_regular","n":2},
        "unitary":[["3/5","4/5"],["-4/5","3/5"]]}})J"));
    CHECK(defect_sequence(*mix.contraction, 5) == defect_sequence(make_left_regular<Exact>(2), 5));

    const auto cat = parse_spec<Exact>(spec(R"J({"type":"catalog","payload":{"name":"decaying","params":{"lambda":0.5}}})J"));
    REQUIRE(cat.entry);
    CHECK(*cat.entry->expected.curvature == Rational(3, 7));
}

TEST_CASE("spec files: errors are classified") {
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J([1,2])J")), ParseError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"dense"})J")), ParseError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"wat","n":2})J")), ParseError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"atomic","n":2,"payload":{"ring":"13","lambda":[1,1]}})J")), ParseError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"dense","n":2,"payload":{"matrices":[[[1,0],[0,1]],[[1,0],[0,1]]]}})J")),
                    ValidationError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"atomic","n":2,"payload":{"ring":"1","lambda":["sqrt(2)"]}})J")),
                    ValidationError);
    CHECK_THROWS_AS(parse_spec<Exact>(spec(R"J({"type":"compression","n":2,"payload":{"generators":[
        {"coefficients":{"1":1,"11":1}}]}})J")),
                    ValidationError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("scalar values: numbers, strings and pairs") {
    CHECK(scalar_from_json<Exact>(json(0.1)) == Exact(Rational(1, 10)));
    CHECK(scalar_from_json<Exact>(json("-3/4")) == Exact(Rational(-3, 4)));
    CHECK(scalar_from_json<Exact>(json::array({1, "1/2"})) == Exact(Rational(1), Rational(1, 2)));
    CHECK(scalar_from_json<Float>(json("sqrt(1/2)")).re == doctest::Approx(std::sqrt(0.5)));
    CHECK_THROWS_AS(scalar_from_json<Exact>(json::array({1, 2, 3})), ParseError);
    CHECK_THROWS_AS(scalar_from_json<Exact>(json(true)), ParseError);
}

TEST_CASE("compute reports round-trip through JSON") {
    RunConfig cfg;
    cfg.k_max = 8;
    const auto a = make_decaying_atomic<Exact>(2, parse_word("12", 2), {Exact(Rational(1, 2)), Exact(1)});
    ComputeReport<Exact> r;
    r.input = spec(R"J({"type":"left_regular","n":2})J");
    r.config = cfg;
    r.invariants = hierarchy_report(a, cfg.k_max, cfg.estimate_options());
    r.freeness = FreenessVerdict::not_free;
    r.notes = {"a, \"quoted\" note"};
    const json j = to_json(r);
    CHECK(j.at("schema") == kReportSchema);
    CHECK(j.at("invariants").at("sequence").at("records").size() == 8);
    const auto back = compute_report_from_json<Exact>(j);
    CHECK(back == r);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(back.invariants->curvature == r.invariants->curvature);
}

TEST_CASE("float reports round-trip bit for bit") {
    RunConfig cfg;
    cfg.backend = Backend::floating;
    cfg.k_max = 12;
    cfg.timing = true;
    const auto a = make_decaying_atomic<Float>(2, parse_word("1", 2), {Float(std::sqrt(0.5))});
    ComputeReport<Float> r;
    r.config = cfg;
    r.invariants = hierarchy_report(a, cfg.k_max, cfg.estimate_options());
    r.seconds = 0.125;
    const auto back = compute_report_from_json<Float>(json::parse(to_json(r).dump()));
    REQUIRE(back.invariants);
    CHECK(back.invariants->curvature.value == r.invariants->curvature.value);
    CHECK(back.invariants->sequence == r.invariants->sequence);
    CHECK(back.invariants->curvature.levels == r.invariants->curvature.levels);
    CHECK(*back.seconds == 0.125);
    CHECK(back.config == cfg);
    CHECK_THROWS_AS(compute_report_from_json<Float>(json{{"schema", "other/9"}}), ParseError);
}

TEST_CASE("CSV quoting follows RFC 4180") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"x", "y,z"}) == "x,\"y,z\"\r\n");
    const auto rep = hierarchy_report(make_left_regular<Exact>(2), 3);
    CHECK(to_csv(rep) == "k,trace,rank,curvature_level,euler_level\r\n1,1,1,1/2,1/2\r\n2,3,3,3/4,3/4\r\n3,7,7,7/8,7/8\r\n");
}

TEST_CASE("sweeps") {
    CHECK(range_grid("0:1:5", Backend::exact) == std::vector<std::string>{"0", "1/4", "1/2", "3/4", "1"});
    CHECK(range_grid("0:1:3", Backend::floating) == std::vector<std::string>{"0", "0.5", "1"});
    CHECK_THROWS_AS(range_grid("0:1", Backend::exact), ParseError);
    CHECK_THROWS_AS(range_grid("0:1:1", Backend::exact), ValidationError);

    RunConfig cfg;
    cfg.k_max = 10;
    const auto s = run_sweep("curvature_range", "", {"0", "1/10", "1/3", "1/2"}, {}, cfg);
    CHECK(s.param == "r");
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[3].curvature == "1/2");
    CHECK(sweep_from_json(to_json(s)) == s);
    const std::string csv = to_csv(s);
    CHECK(csv.rfind("r,K,K_upper,chi,pure_rank,K_tilde\r\n", 0) == 0);

    const auto b = run_sweep("binary_expansion", "r", {"1/2", "3/4"}, {}, cfg);
    REQUIRE(b.rows[0].tilde);
    CHECK_THROWS_AS(run_sweep("decaying", "nope", {"1"}, {}, cfg), ValidationError);
    CHECK_THROWS_AS(run_sweep("nope", "", {"1"}, {}, cfg), ValidationError);
    CHECK_THROWS_AS(run_sweep("three_letter_limit", "", {"1"}, {}, cfg), ValidationError);
}

TEST_CASE("verification reports are deterministic and round-trip") {
    RunConfig cfg;
    cfg.backend = Backend::floating;
    cfg.k_max = 8;
    cfg.seed = 42;
    const auto a = verify_hierarchy(cfg, 15), b = verify_hierarchy(cfg, 15);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(a.ok());
    CHECK(verify_report_from_json(to_json(a)) == a);
    cfg.seed = 43;
    CHECK(to_json(verify_hierarchy(cfg, 15)).dump() != to_json(a).dump());
    CHECK_THROWS_AS(run_verify("bogus", cfg), ValidationError);
    const std::string csv = to_csv(a);
    CHECK(csv.rfind("suite,check,expected,computed,deviation,tolerance,status,detail\r\n", 0) == 0);
}

TEST_CASE("run config round-trips and seeds the estimate options") {
    RunConfig c;
    c.k_max = 7;
    c.tol = 1e-7;
    c.gap = 1e-4;
    c.cap = 1234;
    c.format = "csv";
    c.seed = 99;
    CHECK(run_config_from_json(to_json(c)) == c);
    const auto o = c.estimate_options();
    CHECK(o.compute.tol == 1e-7);
    CHECK(o.compute.cap == 1234);
    CHECK(o.gap == 1e-4);
}
