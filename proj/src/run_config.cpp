#include "ctsc/run_config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ctsc/error.hpp"

namespace ctsc {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw Error(Errc::InvalidConfig, std::string(key) + ": not a number '" + std::string(v) + "'");
    }
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw Error(Errc::InvalidConfig,
                    std::string(key) + ": not a non-negative integer '" + std::string(v) + "'");
    }
    return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
    const auto n = parse_u64(key, v);
    if (n == 0) {
        throw Error(Errc::InvalidConfig, std::string(key) + " must be >= 1");
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig rc;
    SystemConfig& sys = rc.point.system;
    std::set<std::string, std::less<>> seen;
    bool power_given = false;

    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "scheme") {
            key = "schemes";
        }
        if (!seen.insert(key).second) {
            throw Error(Errc::InvalidConfig, "duplicate key '" + key + "'");
        }
        if (value.empty()) {
            throw Error(Errc::InvalidConfig, "empty value for '" + key + "'");
        }

        if (key == "n_users") {
            sys.n_users = parse_count(key, value);
        } else if (key == "n_symbols") {
            sys.n_symbols = parse_count(key, value);
        } else if (key == "n_subcarriers") {
            sys.n_subcarriers = parse_count(key, value);
        } else if (key == "power_w") {
            sys.power_budget.clear();
            for (auto item : split_list(value)) {
                sys.power_budget.push_back(parse_double(key, item));
            }
            power_given = true;
        } else if (key == "snr1_db") {
            rc.point.snr1_db = parse_double(key, value);
        } else if (key == "sigma_f_db") {
            sys.sigma_f_db = parse_double(key, value);
        } else if (key == "power_convention") {
            sys.power_convention = parse_power_convention(value);
        } else if (key == "fade_floor_eps") {
            sys.fade_floor_eps = parse_double(key, value);
        } else if (key == "seed") {
            sys.seed = parse_u64(key, value);
        } else if (key == "trials") {
            rc.trials = parse_count(key, value);
        } else if (key == "schemes") {
            rc.schemes.clear();
            for (auto item : split_list(value)) {
                rc.schemes.push_back(parse_scheme(item));
            }
        } else if (key == "features") {
            if (value == "gaussian") {
                rc.features = "gaussian";
            } else {
                std::filesystem::path p{std::string(value)};
                rc.features = (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
            }
        } else {
            throw Error(Errc::InvalidConfig, "unknown key '" + key + "'");
        }
    }

    if (sys.power_budget.size() != sys.n_users) {
        if (power_given) {
            throw Error(Errc::InvalidConfig, "power_w lists " +
                                                 std::to_string(sys.power_budget.size()) +
                                                 " values for " + std::to_string(sys.n_users) +
                                                 " users");
        }
        sys.power_budget.resize(sys.n_users, sys.power_budget.back());
    }
    try {
        rc.point.resolve();
    } catch (const Error& e) {
        throw Error(Errc::InvalidConfig, e.what());
    }
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw Error(Errc::IoFailure, "cannot read config " + path.string());
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_run_config(ss.str(), path.parent_path());
}

std::string run_config_reference() {
    return "Config keys (key = value, '#' starts a comment):\n"
           "  n_users          users sharing each subcarrier           [2]\n"
           "  n_symbols        OFDM symbols per block (L)               [8]\n"
           "  n_subcarriers    subcarriers (K)                          [64]\n"
           "  power_w          comma list of per-user budgets in W      [0.8,0.2]\n"
           "  snr1_db          10 log10(P_1 / sigma_e^2)                [5]\n"
           "  sigma_f_db       Rayleigh fading power E|h|^2 in dB       [3]\n"
           "  power_convention per_subcarrier_average | per_symbol_total [per_subcarrier_average]\n"
           "  fade_floor_eps   floor on the weighted channel energy     [1e-12]\n"
           "  seed             64-bit run seed                          [1]\n"
           "  trials           Monte Carlo trials per point             [100]\n"
           "  schemes          comma list of ssdt, iterative, no_transfer [ssdt]\n"
           "  features         gaussian | path to a CTSF file           [gaussian]\n";
}

}  // namespace ctsc
