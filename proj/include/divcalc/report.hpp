#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace divcalc {

struct Report {
    bool verdict = false;
    double residual = 0.0;
    std::map<std::string, double> metrics;
    std::optional<nlohmann::json> witness;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const;
    void flag(const std::string& f);
};

nlohmann::json to_json(const Report& r);

}  // namespace divcalc
