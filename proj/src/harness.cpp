#include "ctsc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "ctsc/distortion.hpp"
#include "ctsc/error.hpp"
#include "ctsc/features.hpp"
#include "ctsc/ssdt.hpp"

namespace ctsc {

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::Ssdt: return "ssdt";
        case Scheme::Iterative: return "iterative";
        case Scheme::NoTransfer: return "no_transfer";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view s) {
    if (s == "ssdt") return Scheme::Ssdt;
    if (s == "iterative") return Scheme::Iterative;
    if (s == "no_transfer" || s == "notransfer") return Scheme::NoTransfer;
    throw Error(Errc::InvalidConfig, "unknown scheme '" + std::string(s) + "'");
}

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Snr1Db: return "snr1_db";
        case SweepAxis::SigmaFDb: return "sigma_f_db";
        case SweepAxis::NUsers: return "n_users";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view s) {
    if (s == "snr1_db") return SweepAxis::Snr1Db;
    if (s == "sigma_f_db") return SweepAxis::SigmaFDb;
    if (s == "n_users") return SweepAxis::NUsers;
    throw Error(Errc::InvalidConfig, "unknown sweep axis '" + std::string(s) + "'");
}

SystemConfig ExperimentPoint::resolve() const {
    SystemConfig cfg = system;
    if (cfg.power_budget.empty()) {
        throw Error(Errc::InvalidConfig, "power_budget is empty");
    }
    cfg.sigma_e_sq = snr_db_to_sigma_e_sq(snr1_db, cfg.power_budget[0]);
    cfg.validate();
    return cfg;
}

ExperimentPoint ExperimentPoint::with(SweepAxis axis, double value) const {
    ExperimentPoint p = *this;
    switch (axis) {
        case SweepAxis::Snr1Db:
            p.snr1_db = value;
            break;
        case SweepAxis::SigmaFDb:
            p.system.sigma_f_db = value;
            break;
        case SweepAxis::NUsers: {
            if (!(value >= 1.0) || value != std::floor(value)) {
                throw Error(Errc::InvalidConfig, "n_users must be a positive integer");
            }
            const auto n = static_cast<std::size_t>(value);
            p.system.n_users = n;
            auto& pw = p.system.power_budget;
            if (pw.empty()) {
                throw Error(Errc::InvalidConfig, "power_budget is empty");
            }
            const double last = pw.back();
            pw.resize(n, last);
            break;
        }
    }
    return p;
}

TrialInstance make_instance(const SystemConfig& cfg, std::uint64_t seed, std::uint64_t trial,
                            const TrialOptions& opts) {
    cfg.validate();
    TrialInstance inst;
    std::vector<FeatureBlock> features;
    if (opts.features) {
        features = *opts.features;
        if (features.size() != cfg.n_users) {
            throw Error(Errc::ShapeMismatch, "feature file user count differs from n_users");
        }
        for (const auto& f : features) {
            if (f.data.rows() != cfg.n_symbols || f.data.cols() != cfg.n_subcarriers) {
                throw Error(Errc::ShapeMismatch, "feature file shape differs from configuration");
            }
        }
    } else {
        RngStream rng(seed, trial, RngStream::Lane::Features);
        features = gen_gaussian_features(cfg, rng);
    }
    inst.transmit.reserve(cfg.n_users);
    for (std::size_t n = 0; n < cfg.n_users; ++n) {
        inst.transmit.push_back(normalize_features(features[n], cfg.power_budget[n]));
    }
    RngStream ch(seed, trial, RngStream::Lane::Channel);
    inst.channel = sample_rayleigh(cfg, ch);
    RngStream w(seed, trial, RngStream::Lane::Noise);
    inst.noise = sample_awgn(cfg, w);
    RngStream wn(seed, trial, RngStream::Lane::NoiseFaded);
    inst.noise_faded = sample_awgn(cfg, wn);
    return inst;
}

TrialReport evaluate_scheme(const TrialInstance& inst, const SystemConfig& cfg, Scheme scheme,
                            const TrialOptions& opts) {
    TrialReport rep;
    rep.scheme = scheme;
    std::vector<ComplexGrid> s;
    double alpha = 1.0;

    const auto start = std::chrono::steady_clock::now();
    switch (scheme) {
        case Scheme::Ssdt: {
            AllocationResult r = ssdt_allocate(inst.transmit, inst.channel, cfg);
            s = std::move(r.effective);
            alpha = r.alpha;
            rep.fade_floor_hits = r.fade_floor_hits;
            break;
        }
        case Scheme::Iterative: {
            IterativeOutcome r = iterative_allocate(inst.transmit, inst.channel, cfg, opts.iterative);
            s = std::move(r.allocation.effective);
            alpha = r.allocation.alpha;
            rep.fade_floor_hits = r.allocation.fade_floor_hits;
            break;
        }
        case Scheme::NoTransfer:
            for (const auto& t : inst.transmit) {
                s.push_back(t.data);
            }
            alpha = 1.0;
            break;
    }
    const auto stop = std::chrono::steady_clock::now();
    if (opts.measure_runtime) {
        rep.runtime_seconds = std::chrono::duration<double>(stop - start).count();
    }

    rep.alpha = alpha;
    rep.d2_analytic = d2_analytic(s, inst.transmit, inst.channel, alpha, cfg.sigma_e_sq);
    rep.noise_floor = noise_floor(cfg.n_symbols, cfg.n_subcarriers, alpha, cfg.sigma_e_sq);
    rep.zf_residual_max = zero_forcing_residual(s, inst.transmit, inst.channel, alpha);

    const ReceivedBlock y = superpose_awgn(inst.transmit, inst.noise);
    ReceivedBlock y_new = apply_faded_uplink(s, inst.channel, inst.noise_faded);
    for (cplx& v : y_new.data.flat()) {
        v *= alpha;
    }
    y_new.stage = Stage::Equalized;
    rep.d1_empirical = d1_empirical(y_new, y);

    const RealGrid p = per_symbol_power(s);
    for (std::size_t n = 0; n < p.rows(); ++n) {
        const double budget = cfg.budget(n);
        for (std::size_t l = 0; l < p.cols(); ++l) {
            rep.power_violation_max =
                std::max(rep.power_violation_max, std::max(0.0, p(n, l) / budget - 1.0));
        }
    }
    return rep;
}

std::vector<TrialReport> run_trials(const SystemConfig& cfg, Scheme scheme, std::size_t n_trials,
                                    std::uint64_t seed, const TrialOptions& opts) {
    if (n_trials == 0) {
        throw Error(Errc::InvalidConfig, "n_trials must be >= 1");
    }
    std::vector<TrialReport> out;
    out.reserve(n_trials);
    for (std::size_t i = 0; i < n_trials; ++i) {
        const TrialInstance inst = make_instance(cfg, seed, i, opts);
        out.push_back(evaluate_scheme(inst, cfg, scheme, opts));
    }
    return out;
}

namespace {

void mean_se(std::span<const double> xs, double& mean, double& se) {
    const double n = static_cast<double>(xs.size());
    mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= n;
    if (xs.size() < 2) {
        se = 0.0;
        return;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    se = std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

SweepRow summarize(std::span<const TrialReport> reports, Scheme scheme, double axis_value) {
    SweepRow row;
    row.scheme = scheme;
    row.axis_value = axis_value;
    row.trials = reports.size();
    if (reports.empty()) {
        return row;
    }
    std::vector<double> d1;
    std::vector<double> d2;
    double alpha = 0.0;
    double floor = 0.0;
    double runtime = 0.0;
    for (const auto& r : reports) {
        d1.push_back(r.d1_empirical);
        d2.push_back(r.d2_analytic);
        alpha += r.alpha;
        floor += r.noise_floor;
        runtime += r.runtime_seconds;
        row.zf_residual_max = std::max(row.zf_residual_max, r.zf_residual_max);
        row.power_violation_max = std::max(row.power_violation_max, r.power_violation_max);
        row.fade_floor_hits += r.fade_floor_hits;
    }
    const double n = static_cast<double>(reports.size());
    row.alpha_mean = alpha / n;
    row.noise_floor_mean = floor / n;
    row.runtime_ms_mean = 1e3 * runtime / n;
    mean_se(d1, row.d1_mean, row.d1_se);
    mean_se(d2, row.d2_mean, row.d2_se);
    return row;
}

SweepResult aggregate_sweep(SweepAxis axis, std::span<const double> points,
                            const ExperimentPoint& base, std::span<const Scheme> schemes,
                            std::size_t n_trials, std::uint64_t seed, const TrialOptions& opts) {
    if (points.empty() || schemes.empty()) {
        throw Error(Errc::InvalidConfig, "a sweep needs at least one point and one scheme");
    }
    if (n_trials == 0) {
        throw Error(Errc::InvalidConfig, "n_trials must be >= 1");
    }
    SweepResult result;
    result.axis = axis;
    result.axis_values.assign(points.begin(), points.end());
    result.trials = n_trials;
    result.seed = seed;
    for (double value : points) {
        const SystemConfig cfg = base.with(axis, value).resolve();
        std::vector<std::vector<TrialReport>> per_scheme(schemes.size());
        for (std::size_t i = 0; i < n_trials; ++i) {
            const TrialInstance inst = make_instance(cfg, seed, i, opts);
            for (std::size_t s = 0; s < schemes.size(); ++s) {
                per_scheme[s].push_back(evaluate_scheme(inst, cfg, schemes[s], opts));
            }
        }
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            result.rows.push_back(summarize(per_scheme[s], schemes[s], value));
        }
    }
    return result;
}

}  // namespace ctsc
