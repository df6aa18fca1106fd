#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ctsc/harness.hpp"

namespace ctsc {

enum class ExportFormat { Csv, Json };

/// Column order of the CSV export; the JSON export uses the same keys.
inline constexpr std::string_view kResultColumns =
    "scheme,axis_name,axis_value,alpha_mean,d2_mean,d2_se,d1_mean,d1_se,noise_floor_mean,"
    "zf_residual_max,power_violation_max,runtime_ms_mean,fade_floor_hits,trials,seed";

std::string format_results_csv(const SweepResult& result);
std::string format_results_json(const SweepResult& result);

/// Writes the result; IoFailure when the file cannot be written.
void export_results(const SweepResult& result, const std::filesystem::path& path,
                    ExportFormat format);

/// Parses text produced by format_results_csv.
SweepResult parse_results_csv(std::string_view text);

}  // namespace ctsc
