#include "manifest.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "symtoep/errors.hpp"

namespace symtoep::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

json make_manifest(const RunInfo& info, const RunOutput& out) {
    json stages = json::array();
    for (const Stage& s : out.stages) {
        stages.push_back({{"name", s.name}, {"wall_seconds", s.seconds}});
    }
    json checks = json::array();
    for (const Check& c : out.checks) {
        checks.push_back(
            {{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"bound", c.bound}, {"passed", c.passed}});
    }
    json files = json::array();
    for (const auto& [name, content] : out.files) {
        files.push_back({{"path", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }
    return {{"artifact", "symtoep"},
            {"version", SYMTOEP_VERSION},
            {"command", info.command},
            {"config_sha256", info.config_sha256},
            {"options", info.options},
            {"stages", stages},
            {"checks", checks},
            {"passed", out.passed()},
            {"files", files}};
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << content;
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

void write_outputs(const fs::path& dir, const RunInfo& info, const RunOutput& out) {
    fs::create_directories(dir);
    for (const auto& [name, content] : out.files) {
        write_file(dir / name, content);
    }
    write_file(dir / "manifest.json", make_manifest(info, out).dump(2) + "\n");
}

std::vector<std::string> verify_outputs(const fs::path& dir, const RunInfo& info, const RunOutput& out) {
    std::vector<std::string> problems;
    const fs::path manifest_path = dir / "manifest.json";
    if (!fs::exists(manifest_path)) {
        problems.push_back("no manifest at " + manifest_path.string());
        return problems;
    }
    json recorded;
    try {
        recorded = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        problems.push_back("unreadable manifest: " + std::string(e.what()));
        return problems;
    }
    if (recorded.value("command", "") != info.command) {
        problems.push_back("manifest was written by command \"" + recorded.value("command", "") + "\"");
    }
    if (recorded.value("config_sha256", "") != info.config_sha256) {
        problems.push_back("config hash differs from the recorded run");
    }

    std::map<std::string, std::string> listed;
    for (const json& f : recorded.value("files", json::array())) {
        listed[f.value("path", "")] = f.value("sha256", "");
    }
    for (const auto& [name, content] : out.files) {
        const std::string fresh = sha256_hex(content);
        const auto it = listed.find(name);
        if (it == listed.end()) {
            problems.push_back(name + ": not listed in the manifest");
            continue;
        }
        if (it->second != fresh) {
            problems.push_back(name + ": recomputed digest differs from the manifest");
        }
        const fs::path on_disk = dir / name;
        if (!fs::exists(on_disk)) {
            problems.push_back(name + ": missing on disk");
        } else if (sha256_hex(read_file(on_disk)) != it->second) {
            problems.push_back(name + ": file on disk does not match the manifest");
        }
        listed.erase(it);
    }
    for (const auto& [name, digest] : listed) {
        problems.push_back(name + ": listed in the manifest but not produced");
    }
    return problems;
}

} // namespace symtoep::cli
