#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "manifest.hpp"
#include "symtoep/errors.hpp"

namespace {

using namespace symtoep;
using namespace symtoep::cli;

enum ExitCode { ok = 0, internal = 1, config_error = 2, numerical_error = 3, tolerance_failure = 4, verify_mismatch = 5 };

std::string read_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string summary_text(const std::string& command, const RunOutput& out) {
    json checks = json::array();
    for (const Check& c : out.checks) {
        checks.push_back(
            {{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"bound", c.bound}, {"passed", c.passed}});
    }
    json summary = out.summary;
    summary["command"] = command;
    summary["checks"] = checks;
    summary["passed"] = out.passed();
    return summary.dump(2) + "\n";
}

} // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::pair<Command, std::string>> verbs{
        {"spectrum", {cmd_spectrum, "Symplectic spectrum of a matrix or of a truncation T_n"}},
        {"williamson", {cmd_williamson, "Williamson normal form with residuals and the factor M"}},
        {"szego", {cmd_szego, "Szego averages against the symbol integral, plus d_m trajectories"}},
        {"entropy-rate", {cmd_entropy_rate, "Entropy rate S(T_n)/n against the symbol integral"}},
        {"counting", {cmd_counting, "Counting ratios c_n(K)/n against the limit measure"}},
        {"density", {cmd_density, "Coverage of the symbol range by truncated spectra"}},
        {"gchain-check", {cmd_gchain_check, "Check that every truncation up to n_max is a G-matrix"}},
    };

    CLI::App app{"Symplectic eigenvalues of block Toeplitz truncations and their limits", "symtoep"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", SYMTOEP_VERSION);

    std::string config_path;
    const char* env_out = std::getenv("SYMTOEP_OUT_DIR");
    std::string out_dir = env_out != nullptr && *env_out != '\0' ? env_out : "symtoep-out";
    GlobalOptions opts;
    bool strict = false;
    bool lenient = false;
    bool verify = false;

    app.add_option("--config", config_path, "Experiment config (JSON)")->required();
    app.add_option("--out", out_dir, "Output directory (default: $SYMTOEP_OUT_DIR or ./symtoep-out)");
    app.add_option("--threads", opts.threads, "Worker threads for sweeps; 1 is the reproducibility reference")
        ->check(CLI::Range(1, 1024));
    auto* strict_flag = app.add_flag("--strict", strict, "Symplectic eigenvalues below 1/2 are errors (default)");
    app.add_flag("--lenient", lenient, "Clamp symplectic eigenvalues below 1/2 to the vacuum and warn")
        ->excludes(strict_flag);
    app.add_option("--base", opts.base, "Logarithm base for entropies")->check(CLI::IsMember({"e", "2"}));
    app.add_flag("--verify", verify, "Recompute and compare against the manifest in --out; writes nothing");

    for (const auto& [name, verb] : verbs) {
        app.add_subcommand(name, verb.second);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    opts.policy = lenient ? ClampPolicy::lenient : ClampPolicy::strict;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const json config = io::parse_json(read_config(config_path), config_path);
        RunOutput out = verbs.at(command).first(config, opts);
        out.files.emplace_back("summary.json", summary_text(command, out));

        RunInfo info;
        info.command = command;
        info.config_sha256 = sha256_hex(config.dump());
        info.options = {{"threads", opts.threads},
                        {"policy", lenient ? "lenient" : "strict"},
                        {"base", opts.base.empty() ? json(nullptr) : json(opts.base)}};

        for (const Check& c : out.checks) {
            if (!c.passed) {
                std::cerr << "FAIL " << c.name << ": " << io::format_double(c.value) << " " << c.relation << " "
                          << io::format_double(c.bound) << " does not hold\n";
            }
        }
        if (out.summary.contains("first_failing") && !out.summary["first_failing"].is_null()) {
            std::cerr << "first failing n = " << out.summary["first_failing"].get<int>() << "\n";
        }

        if (verify) {
            const auto problems = verify_outputs(out_dir, info, out);
            for (const auto& p : problems) {
                std::cerr << "verify: " << p << "\n";
            }
            if (!problems.empty()) {
                return verify_mismatch;
            }
            std::cout << "verified " << out.files.size() << " files in " << out_dir << "\n";
        } else {
            write_outputs(out_dir, info, out);
            std::cout << "wrote " << out.files.size() + 1 << " files to " << out_dir << "\n";
        }
        return out.passed() ? ok : tolerance_failure;
    } catch (const ConfigError& e) {
        std::cerr << "symtoep " << command << ": config error: " << e.what() << "\n";
        return config_error;
    } catch (const Error& e) {
        std::cerr << "symtoep " << command << ": numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "symtoep " << command << ": " << e.what() << "\n";
        return internal;
    }
}
