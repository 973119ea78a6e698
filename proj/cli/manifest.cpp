#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <stdexcept>

namespace sdkim {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x00000100000001B3ull;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["version"] = version;
    j["params"] = params;
    if (!spec_hash.empty()) j["spec_hash"] = spec_hash;
    j["outputs"] = outputs;

    // Informational only; everything reproducible is in params.
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char ts[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["created_utc"] = ts;

    return j.dump(2) + "\n";
}

std::string make_run_dir(const std::string& root, const RunManifest& m) {
    // Hash the canonical parameter dump so distinct parameter sets land in
    // distinct directories even under the same seed.
    std::uint64_t h = fnv1a64(m.subcommand + "\n" + m.params.dump());
    std::string name =
        m.subcommand + "-" + std::to_string(m.seed) + "-" + hex16(h).substr(0, 8);

    std::filesystem::path dir = std::filesystem::path(root) / name;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create run directory " + dir.string() + ": " + ec.message());
    return dir.string();
}

}  // namespace sdkim
