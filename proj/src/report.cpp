#include "divcalc/report.hpp"

#include <algorithm>

namespace divcalc {

bool Report::has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void Report::flag(const std::string& f) {
    if (!has_flag(f)) flags.push_back(f);
}

nlohmann::json to_json(const Report& r) {
    nlohmann::json j = {{"verdict", r.verdict}, {"residual", r.residual}, {"metrics", r.metrics}};
    if (r.witness) j["witness"] = *r.witness;
    if (!r.flags.empty()) j["flags"] = r.flags;
    return j;
}

}  // namespace divcalc
