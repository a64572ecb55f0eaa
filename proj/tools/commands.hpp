#pragma once

#include <string>
#include <utility>
#include <vector>

#include "symtoep/entropy.hpp"
#include "symtoep/io.hpp"

namespace symtoep::cli {

using io::json;

struct GlobalOptions {
    int threads = 1;
    ClampPolicy policy = ClampPolicy::strict;
    std::string base;  // "e", "2", or empty to defer to the config
};

/// One declared tolerance: `value` compared against `bound` with `relation`.
struct Check {
    std::string name;
    double value;
    std::string relation;  // "<=" or ">="
    double bound;
    bool passed;
};

struct Stage {
    std::string name;
    double seconds;
};

struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;  // relative name, content
    json summary = json::object();
    std::vector<Check> checks;
    std::vector<Stage> stages;

    bool passed() const;
    void check_le(std::string name, double value, double bound);
    void check_ge(std::string name, double value, double bound);
};

using Command = RunOutput (*)(const json& config, const GlobalOptions& opts);

RunOutput cmd_spectrum(const json& config, const GlobalOptions& opts);
RunOutput cmd_williamson(const json& config, const GlobalOptions& opts);
RunOutput cmd_szego(const json& config, const GlobalOptions& opts);
RunOutput cmd_entropy_rate(const json& config, const GlobalOptions& opts);
RunOutput cmd_counting(const json& config, const GlobalOptions& opts);
RunOutput cmd_density(const json& config, const GlobalOptions& opts);
RunOutput cmd_gchain_check(const json& config, const GlobalOptions& opts);

} // namespace symtoep::cli
