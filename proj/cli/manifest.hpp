#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdkim/model.hpp"

namespace sdkim {

// Run metadata written next to every output. The parameter block (spec,
// seeds, grids, thresholds) fully determines the data files: re-running with
// the same manifest parameters reproduces them byte-identically. The
// timestamp is informational only.
struct RunManifest {
    std::string subcommand;
    std::uint64_t seed = 0;
    std::string version;            // library version string
    nlohmann::json params;          // resolved parameters, angles as strings
    std::string spec_hash;          // hash of the circuit spec when one exists
    std::vector<std::string> outputs;

    std::string to_json() const;
};

// Creates runs/<subcommand>-<seed>-<hash8>/ under root and returns its path.
std::string make_run_dir(const std::string& root, const RunManifest& m);

std::uint64_t fnv1a64(const std::string& text);
std::string hex16(std::uint64_t v);

}  // namespace sdkim
