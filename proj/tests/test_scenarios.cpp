#include <doctest.h>

#include <set>

#include "divcalc/scenarios.hpp"

using namespace divcalc;

TEST_CASE("registry") {
    const auto& all = scenarios();
    CHECK(all.size() >= 15);
    std::set<std::string> names;
    for (const auto& s : all) {
        CHECK_FALSE(s.anchor.empty());
        CHECK_FALSE(s.description.empty());
        CHECK(names.insert(s.name).second);
    }
    std::string listing = list_scenarios();
    for (const char* n : {"quasidet-2x2", "rank-demo", "integrability-3xx", "exact-725", "euler-hyperbolic",
                          "elliptic-nonunique", "ode-forms-cross-check"}) {
        CHECK(names.count(n) == 1);
        CHECK(listing.find(n) != std::string::npos);
    }
    CHECK(find_scenario("nope") == nullptr);
    CHECK_THROWS_AS(run_scenario("nope"), Error);
}

TEST_CASE("reports are deterministic per seed") {
    ScenarioOptions o;
    o.seed = 99;
    for (const char* n : {"quasidet-2x2", "integrability-3xx", "exact-724", "exp-properties"}) {
        auto a = to_json(run_scenario(n, o)).dump(), b = to_json(run_scenario(n, o)).dump();
        CHECK(a == b);
    }
    ScenarioReport r = run_scenario("rank-demo", o);
    auto j = to_json(r);
    CHECK(j["scenario"] == "rank-demo");
    CHECK(j["seed"] == 99);
    CHECK(j.contains("metrics"));
    CHECK(j.contains("anchor"));
    CHECK(to_text(r).find("rank-demo: PASS") == 0);
}

TEST_CASE("verdicts") {
    for (const char* n : {"quasidet-2x2", "solve-quaternion-system", "rank-demo", "eigen-offdiag",
                          "integrability-x2", "integrability-3xx", "exact-723", "exact-724", "exact-725",
                          "separable-712", "exp-properties", "quasiexp-demo", "euler-hyperbolic",
                          "euler-quaternion", "elliptic-family"}) {
        CAPTURE(n);
        CHECK(run_scenario(n).verdict);
    }
    // over C the cube form is integrable, which is also the expected outcome there
    ScenarioOptions c;
    c.algebra = "complex";
    ScenarioReport r = run_scenario("integrability-3xx", c);
    CHECK(r.verdict);
    CHECK(r.metrics.at("integrable") == 1.0);
    CHECK_THROWS_AS(run_scenario("ode-fixture"), Error);
}

TEST_CASE("ode fixture") {
    nlohmann::json fx = {
        {"ode",
         {{"matrix", {{"algebra", "real"}, {"entries", {{0, 1}, {1, 0}}}}},
          {"form", "rc_left"},
          {"init", {0, 1}}}},
        {"checks", {"init", "residual", "rk4"}}};
    ScenarioReport r = run_ode_fixture(fx, {});
    CHECK(r.verdict);
    CHECK(r.metrics.at("init_err") == 0.0);
    fx["checks"] = {"bogus"};
    CHECK_THROWS_AS(run_ode_fixture(fx, {}), Error);
    CHECK_THROWS_AS(run_ode_fixture(nlohmann::json::object(), {}), Error);

    ScenarioOptions o;
    o.file = DIVCALC_FIXTURE_DIR "/quaternion_cr_left.json";
    ScenarioReport f = run_scenario("ode-fixture", o);
    CHECK(f.verdict);
    CHECK(f.summary == "form cr_left");
}
