#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ctsc/harness.hpp"

namespace ctsc {

/// Contents of a key=value run configuration file.
struct RunConfig {
    ExperimentPoint point;
    std::size_t trials = 100;
    std::vector<Scheme> schemes{Scheme::Ssdt};
    std::string features = "gaussian";  // "gaussian" or a CTSF file path

    std::uint64_t seed() const { return point.system.seed; }
};

/// Parses `key = value` lines. Blank lines and text after '#' are ignored;
/// unknown keys, duplicate keys and malformed values raise InvalidConfig.
/// Relative feature paths are resolved against `base_dir`.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a file; IoFailure if it cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

/// Human-readable list of keys and defaults (used by --help).
std::string run_config_reference();

}  // namespace ctsc
