#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ctsc/grid.hpp"

namespace ctsc {

/// How the per-symbol power constraint is read.
///  - PerSubcarrierAverage: (1/K) sum_k |s|^2 <= P_n, i.e. a per-symbol budget of K*P_n.
///  - PerSymbolTotal:       sum_k |s|^2 <= P_n, the budget used when features are normalized.
enum class PowerConvention { PerSubcarrierAverage, PerSymbolTotal };

std::string_view to_string(PowerConvention c);
PowerConvention parse_power_convention(std::string_view s);

struct SystemConfig {
    std::size_t n_users = 2;
    std::size_t n_symbols = 8;
    std::size_t n_subcarriers = 64;
    std::vector<double> power_budget{0.8, 0.2};  // watts, one per user
    double sigma_e_sq = 0.0;                     // per real/imag component
    double sigma_f_db = 3.0;
    PowerConvention power_convention = PowerConvention::PerSubcarrierAverage;
    double fade_floor_eps = 1e-12;
    std::uint64_t seed = 1;

    /// Throws Error(InvalidConfig) when an invariant is broken.
    void validate() const;

    /// Per-symbol power budget of user n under the configured convention.
    double budget(std::size_t n) const;
};

/// Per-symbol budget for an explicit P_n, K and convention.
double symbol_budget(double p_n, std::size_t n_subcarriers, PowerConvention c);

struct FeatureBlock {
    std::size_t user = 0;
    ComplexGrid data;  // L x K
};

struct TransmitBlock {
    std::size_t user = 0;
    ComplexGrid data;  // L x K, each row has power P_n
};

enum class Stage { Awgn, Faded, Equalized };

struct ReceivedBlock {
    ComplexGrid data;  // L x K
    Stage stage = Stage::Awgn;
};

struct NoiseBlock {
    ComplexGrid data;  // L x K
};

/// Scales every symbol row of x to total power p_n.
TransmitBlock normalize_features(const FeatureBlock& x, double p_n);

/// y = sum_n t_n + w.
ReceivedBlock superpose_awgn(std::span<const TransmitBlock> t_all, const NoiseBlock& w);

/// Noise variance per component from SNR_1 = 10 log10(P_1 / sigma_e^2).
double snr_db_to_sigma_e_sq(double snr1_db, double p_1);

double sigma_f_db_to_linear(double sigma_f_db);

/// Per-(l,k) sums over users: A = sum_n t_{n,l,k}. This is the noiseless AWGN
/// reference every allocator tries to reproduce.
ComplexGrid reference_sum(std::span<const TransmitBlock> t_all);

}  // namespace ctsc
