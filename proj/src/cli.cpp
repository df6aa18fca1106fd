#include "ctsc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctsc/error.hpp"
#include "ctsc/export.hpp"
#include "ctsc/features.hpp"
#include "ctsc/harness.hpp"
#include "ctsc/run_config.hpp"
#include "ctsc/ssdt.hpp"
#include "ctsc/verify.hpp"

namespace ctsc {

namespace {

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::IoFailure:
        case Errc::BadMagic:
        case Errc::VersionMismatch:
        case Errc::TruncatedPayload:
        case Errc::TrailingBytes:
        case Errc::ShapeOverflow:
            return kExitIo;
        case Errc::InvalidConfig:
            return kExitUsage;
        default:
            return kExitCheckFailed;
    }
}

TrialOptions options_for(const RunConfig& rc, bool timing) {
    TrialOptions opts;
    opts.measure_runtime = timing;
    if (rc.features != "gaussian") {
        opts.features = read_features(rc.features);
    }
    return opts;
}

void emit(const SweepResult& result, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << format_results_csv(result);
        return;
    }
    const bool json = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json";
    export_results(result, out_path, json ? ExportFormat::Json : ExportFormat::Csv);
}

std::vector<double> axis_points(double from, double to, double step) {
    if (!(step > 0.0) || !(to >= from) || !std::isfinite(from) || !std::isfinite(to)) {
        throw Error(Errc::InvalidConfig, "need --step > 0 and --to >= --from");
    }
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    if (count > 100000) {
        throw Error(Errc::InvalidConfig, "sweep has too many points");
    }
    std::vector<double> pts;
    for (std::size_t i = 0; i < count; ++i) {
        pts.push_back(from + static_cast<double>(i) * step);
    }
    return pts;
}

int run_bench(const RunConfig& rc, const std::vector<Scheme>& schemes, std::ostream& out) {
    const SystemConfig cfg = rc.point.resolve();
    TrialOptions opts = options_for(rc, true);
    std::vector<std::vector<double>> ms(schemes.size());
    for (std::size_t i = 0; i < rc.trials; ++i) {
        const TrialInstance inst = make_instance(cfg, rc.seed(), i, opts);
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            ms[s].push_back(1e3 * evaluate_scheme(inst, cfg, schemes[s], opts).runtime_seconds);
        }
    }
    out << "scheme,trials,runtime_ms_mean,runtime_ms_median,runtime_ms_min\n";
    std::vector<double> means;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        auto v = ms[s];
        std::sort(v.begin(), v.end());
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        means.push_back(mean);
        out << to_string(schemes[s]) << ',' << v.size() << ',' << std::setprecision(6) << mean
            << ',' << v[v.size() / 2] << ',' << v.front() << '\n';
    }
    for (std::size_t s = 1; s < schemes.size(); ++s) {
        out << "# " << to_string(schemes[s]) << " / " << to_string(schemes[0])
            << " mean runtime ratio: " << means[s] / means[0] << '\n';
    }
    return kExitOk;
}

int run_verify(const RunConfig& rc, std::ostream& out) {
    const SystemConfig cfg = rc.point.resolve();
    const TrialOptions opts = options_for(rc, false);
    const std::size_t n = rc.trials;
    const auto checks = run_invariant_suite(cfg, rc.seed(), n, std::min<std::size_t>(n, 20), opts);
    bool all = true;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  " << c.detail << '\n';
        all = all && c.passed;
    }
    out << (all ? "all invariants hold\n" : "invariant failures\n");
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Channel-transfer power allocation for uplink OFDM-NOMA: closed-form and "
                 "iterative allocators, Monte Carlo sweeps and invariant checks."};
    app.footer(run_config_reference());
    app.require_subcommand(1);

    std::string config;
    std::string out_path;
    bool timing = false;

    auto* simulate = app.add_subcommand("simulate", "run the configured point and export results");
    simulate->add_option("--config", config, "run configuration file")->required();
    simulate->add_option("--out", out_path, "output file (.json for JSON, CSV otherwise)");
    simulate->add_flag("--timing", timing, "record allocator runtimes (output then varies run to run)");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and export results");
    std::string param;
    double from = 0.0;
    double to = 0.0;
    double step = 1.0;
    sweep->add_option("--config", config, "run configuration file")->required();
    sweep->add_option("--param", param, "snr1_db | sigma_f_db | n_users")
        ->required()
        ->check(CLI::IsMember({"snr1_db", "sigma_f_db", "n_users"}));
    sweep->add_option("--from", from)->required();
    sweep->add_option("--to", to)->required();
    sweep->add_option("--step", step)->required();
    sweep->add_option("--out", out_path, "output file (.json for JSON, CSV otherwise)");
    sweep->add_flag("--timing", timing, "record allocator runtimes");

    auto* bench = app.add_subcommand("bench", "time schemes on identical instances");
    std::string bench_schemes = "ssdt,iterative";
    bench->add_option("--config", config, "run configuration file")->required();
    bench->add_option("--schemes", bench_schemes, "comma list of schemes")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check allocator invariants on fresh instances");
    verify->add_option("--config", config, "run configuration file")->required();

    auto* gen = app.add_subcommand("gen-features", "write synthetic features as a CTSF file");
    std::string mode = "gaussian";
    gen->add_option("--mode", mode, "feature source")->check(CLI::IsMember({"gaussian"}));
    gen->add_option("--config", config, "run configuration file")->required();
    gen->add_option("--out", out_path, "output CTSF file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const RunConfig rc = load_run_config(config);
        if (simulate->parsed()) {
            const double points[] = {rc.point.snr1_db};
            emit(aggregate_sweep(SweepAxis::Snr1Db, points, rc.point, rc.schemes, rc.trials,
                                 rc.seed(), options_for(rc, timing)),
                 out_path, out);
            return kExitOk;
        }
        if (sweep->parsed()) {
            const auto pts = axis_points(from, to, step);
            emit(aggregate_sweep(parse_sweep_axis(param), pts, rc.point, rc.schemes, rc.trials,
                                 rc.seed(), options_for(rc, timing)),
                 out_path, out);
            return kExitOk;
        }
        if (bench->parsed()) {
            std::vector<Scheme> schemes;
            std::stringstream ss(bench_schemes);
            for (std::string item; std::getline(ss, item, ',');) {
                schemes.push_back(parse_scheme(item));
            }
            if (schemes.empty()) {
                throw Error(Errc::InvalidConfig, "no schemes given");
            }
            return run_bench(rc, schemes, out);
        }
        if (verify->parsed()) {
            return run_verify(rc, out);
        }
        if (gen->parsed()) {
            const SystemConfig cfg = rc.point.resolve();
            RngStream rng(rc.seed(), 0, RngStream::Lane::Features);
            std::size_t redraws = 0;
            const auto blocks = gen_gaussian_features(cfg, rng, &redraws);
            write_features(blocks, out_path);
            if (redraws > 0) {
                err << "note: redrew " << redraws << " all-zero symbol rows\n";
            }
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kExitUsage;
}

}  // namespace ctsc
