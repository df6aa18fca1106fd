#pragma once

#include <span>
#include <vector>

#include "ctsc/channel.hpp"
#include "ctsc/core_model.hpp"

namespace ctsc {

/// Output of a power allocator. `effective` holds s_{n,l,k} = t^r p^r + i t^i p^i,
/// the components that actually enter the channel.
struct AllocationResult {
    std::vector<ComplexGrid> effective;  // N grids, L x K
    double alpha = 0.0;
    RealGrid lambda;                     // L x K, closed-form allocator only
    RealGrid mu;                         // L x K, closed-form allocator only
    RealGrid per_symbol_power;           // N x L
    std::vector<double> beta;            // N
    std::size_t fade_floor_hits = 0;
};

struct Multipliers {
    RealGrid lambda;  // L x K
    RealGrid mu;      // L x K
    std::size_t fade_floor_hits = 0;
};

/// beta_n = 1 / sqrt(P_n).
std::vector<double> compute_beta(std::span<const double> power);

/// Weighted channel energy D_{l,k} = sum_n |h_{n,l,k}|^2 / beta_n, floored at
/// `fade_floor_eps`. `hits` counts floored entries.
RealGrid fade_denominator(const ChannelTensor& h, std::span<const double> beta,
                          double fade_floor_eps, std::size_t& hits);

Multipliers compute_multipliers(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                std::span<const double> beta, double alpha,
                                double fade_floor_eps = 1e-12);

std::vector<ComplexGrid> compute_effective_components(std::span<const TransmitBlock> t_all,
                                                      const ChannelTensor& h,
                                                      std::span<const double> beta, double alpha,
                                                      const Multipliers& m);

/// alpha_{n,l}: the power factor at which user n's symbol l spends exactly
/// its budget. Returned as an N x L grid.
RealGrid compute_alpha_candidates(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                  std::span<const double> beta, std::span<const double> power,
                                  PowerConvention convention, double fade_floor_eps = 1e-12);

/// Largest candidate; every user/symbol then stays within budget.
double select_alpha(const RealGrid& candidates);

/// sum_k |s_{n,l,k}|^2 as an N x L grid.
RealGrid per_symbol_power(std::span<const ComplexGrid> s_all);

/// Closed-form allocation: beta -> alpha candidates -> max -> multipliers ->
/// effective components.
AllocationResult ssdt_allocate(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                               const SystemConfig& cfg);

}  // namespace ctsc
