#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsc/channel.hpp"
#include "ctsc/core_model.hpp"
#include "ctsc/iterative.hpp"

namespace ctsc {

enum class Scheme { Ssdt, Iterative, NoTransfer };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct TrialReport {
    Scheme scheme = Scheme::Ssdt;
    double alpha = 0.0;
    double d2_analytic = 0.0;
    double d1_empirical = 0.0;
    double noise_floor = 0.0;
    double zf_residual_max = 0.0;       // relative to the largest reference component
    double power_violation_max = 0.0;   // max over (n,l) of max(0, p/budget - 1)
    double runtime_seconds = 0.0;       // allocator only; 0 when timing is off
    std::size_t fade_floor_hits = 0;
};

/// Everything random about one trial.
struct TrialInstance {
    std::vector<TransmitBlock> transmit;
    ChannelTensor channel;
    NoiseBlock noise;        // AWGN reference channel
    NoiseBlock noise_faded;  // fading channel
};

struct TrialOptions {
    /// Fixed features reused by every trial; synthetic Gaussian features when empty.
    std::optional<std::vector<FeatureBlock>> features;
    IterativeSettings iterative;
    bool measure_runtime = true;
};

/// Draws trial `trial` of the run keyed by `seed`. Features, channel and both
/// noise blocks come from separate lanes of stream `trial`, so the channel of
/// a trial does not depend on the noise level.
TrialInstance make_instance(const SystemConfig& cfg, std::uint64_t seed, std::uint64_t trial,
                            const TrialOptions& opts = {});

TrialReport evaluate_scheme(const TrialInstance& inst, const SystemConfig& cfg, Scheme scheme,
                            const TrialOptions& opts = {});

std::vector<TrialReport> run_trials(const SystemConfig& cfg, Scheme scheme, std::size_t n_trials,
                                    std::uint64_t seed, const TrialOptions& opts = {});

enum class SweepAxis { Snr1Db, SigmaFDb, NUsers };

std::string_view to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view s);

/// A configuration template plus the SNR it was specified at; sigma_e^2 is
/// derived from snr1_db and P_1 whenever a point is materialised.
struct ExperimentPoint {
    SystemConfig system;
    double snr1_db = 5.0;

    /// Concrete config with sigma_e^2 filled in.
    SystemConfig resolve() const;
    /// Copy with one axis moved. For n_users the power list is cut or
    /// extended by repeating its last entry.
    ExperimentPoint with(SweepAxis axis, double value) const;
};

struct SweepRow {
    Scheme scheme = Scheme::Ssdt;
    double axis_value = 0.0;
    double alpha_mean = 0.0;
    double d2_mean = 0.0;
    double d2_se = 0.0;
    double d1_mean = 0.0;
    double d1_se = 0.0;
    double noise_floor_mean = 0.0;
    double zf_residual_max = 0.0;
    double power_violation_max = 0.0;
    double runtime_ms_mean = 0.0;
    std::size_t fade_floor_hits = 0;
    std::size_t trials = 0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Snr1Db;
    std::vector<double> axis_values;
    std::vector<SweepRow> rows;  // point-major, then scheme in request order
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Mean and standard error of the reports of one (point, scheme).
SweepRow summarize(std::span<const TrialReport> reports, Scheme scheme, double axis_value);

/// Runs every (point, scheme) on the same trial streams (common random
/// numbers), so schemes and points are compared on identical draws.
SweepResult aggregate_sweep(SweepAxis axis, std::span<const double> points,
                            const ExperimentPoint& base, std::span<const Scheme> schemes,
                            std::size_t n_trials, std::uint64_t seed,
                            const TrialOptions& opts = {});

}  // namespace ctsc
