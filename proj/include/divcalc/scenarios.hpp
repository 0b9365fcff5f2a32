#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divcalc/diffeq.hpp"

namespace divcalc {

struct ScenarioOptions {
    SeriesParams series;
    std::uint64_t seed = kDefaultSeed;
    int probes = kDefaultProbes;
    std::string algebra;  // empty: scenario default
    std::string file;     // fixture path for ode-fixture
};

struct ScenarioReport {
    std::string scenario;
    std::string anchor;
    std::string summary;
    bool verdict = false;
    std::map<std::string, double> metrics;
    std::optional<nlohmann::json> witness;
    std::uint64_t seed = 0;
};

struct Scenario {
    std::string name;
    std::string anchor;
    std::string description;
    std::function<ScenarioReport(const ScenarioOptions&)> run;
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(const std::string& name);
// Throws bad_argument for an unknown name.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts = {});
std::string list_scenarios();

nlohmann::json to_json(const ScenarioReport& r);
std::string to_text(const ScenarioReport& r);

// {"ode": {"matrix", "form", "init"}, "checks": [...]}
ScenarioReport run_ode_fixture(const nlohmann::json& fixture, const ScenarioOptions& opts);

}  // namespace divcalc
