#include "ctsc/export.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include "json.hpp"

#include "ctsc/error.hpp"

namespace ctsc {

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

template <typename T>
T parse_field(std::string_view s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(Errc::InvalidConfig, "bad CSV field '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto at = line.find(sep);
        out.push_back(line.substr(0, at));
        if (at == std::string_view::npos) {
            return out;
        }
        line.remove_prefix(at + 1);
    }
}

}  // namespace

std::string format_results_csv(const SweepResult& result) {
    std::string out(kResultColumns);
    out += '\n';
    const std::string axis(to_string(result.axis));
    for (const SweepRow& r : result.rows) {
        out += std::string(to_string(r.scheme)) + ',' + axis + ',' + num(r.axis_value) + ',' +
               num(r.alpha_mean) + ',' + num(r.d2_mean) + ',' + num(r.d2_se) + ',' +
               num(r.d1_mean) + ',' + num(r.d1_se) + ',' + num(r.noise_floor_mean) + ',' +
               num(r.zf_residual_max) + ',' + num(r.power_violation_max) + ',' +
               num(r.runtime_ms_mean) + ',' + std::to_string(r.fade_floor_hits) + ',' +
               std::to_string(r.trials) + ',' + std::to_string(result.seed) + '\n';
    }
    return out;
}

std::string format_results_json(const SweepResult& result) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& r : result.rows) {
        rows.push_back({{"scheme", to_string(r.scheme)},
                        {"axis_name", to_string(result.axis)},
                        {"axis_value", r.axis_value},
                        {"alpha_mean", r.alpha_mean},
                        {"d2_mean", r.d2_mean},
                        {"d2_se", r.d2_se},
                        {"d1_mean", r.d1_mean},
                        {"d1_se", r.d1_se},
                        {"noise_floor_mean", r.noise_floor_mean},
                        {"zf_residual_max", r.zf_residual_max},
                        {"power_violation_max", r.power_violation_max},
                        {"runtime_ms_mean", r.runtime_ms_mean},
                        {"fade_floor_hits", r.fade_floor_hits},
                        {"trials", r.trials},
                        {"seed", result.seed}});
    }
    return rows.dump(2) + '\n';
}

void export_results(const SweepResult& result, const std::filesystem::path& path,
                    ExportFormat format) {
    const std::string text =
        format == ExportFormat::Csv ? format_results_csv(result) : format_results_json(result);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw Error(Errc::IoFailure, "cannot open " + path.string() + " for writing");
    }
    os << text;
    if (!os) {
        throw Error(Errc::IoFailure, "write failed for " + path.string());
    }
}

SweepResult parse_results_csv(std::string_view text) {
    SweepResult out;
    bool header = true;
    for (auto line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (header) {
            if (line != kResultColumns) {
                throw Error(Errc::InvalidConfig, "unexpected CSV header");
            }
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 15) {
            throw Error(Errc::InvalidConfig, "CSV row needs 15 fields");
        }
        SweepRow r;
        r.scheme = parse_scheme(f[0]);
        out.axis = parse_sweep_axis(f[1]);
        r.axis_value = parse_field<double>(f[2]);
        r.alpha_mean = parse_field<double>(f[3]);
        r.d2_mean = parse_field<double>(f[4]);
        r.d2_se = parse_field<double>(f[5]);
        r.d1_mean = parse_field<double>(f[6]);
        r.d1_se = parse_field<double>(f[7]);
        r.noise_floor_mean = parse_field<double>(f[8]);
        r.zf_residual_max = parse_field<double>(f[9]);
        r.power_violation_max = parse_field<double>(f[10]);
        r.runtime_ms_mean = parse_field<double>(f[11]);
        r.fade_floor_hits = parse_field<std::size_t>(f[12]);
        r.trials = parse_field<std::size_t>(f[13]);
        out.seed = parse_field<std::uint64_t>(f[14]);
        out.trials = r.trials;
        if (out.axis_values.empty() || out.axis_values.back() != r.axis_value) {
            out.axis_values.push_back(r.axis_value);
        }
        out.rows.push_back(r);
    }
    if (header) {
        throw Error(Errc::InvalidConfig, "missing CSV header");
    }
    return out;
}

}  // namespace ctsc
