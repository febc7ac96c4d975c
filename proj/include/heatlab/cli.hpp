#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace heatlab {

inline constexpr const char* kVersion = "0.1.0";

struct RunManifest {
    std::string subcommand;
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::string version = kVersion;
};

// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure
// (divergence or loss of positivity), 4 any other failed precondition.
int run_command(const RunManifest& run, std::ostream& out, std::ostream& err);

}  // namespace heatlab
