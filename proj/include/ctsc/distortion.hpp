#pragma once

#include <span>

#include "ctsc/channel.hpp"
#include "ctsc/core_model.hpp"

namespace ctsc {

/// ||y_new - y||^2 summed over all symbols and subcarriers.
double d1_empirical(const ReceivedBlock& y_new, const ReceivedBlock& y);

/// Square terms of d2: sum_{l,k} |alpha * sum_n h s - sum_n t|^2.
double d2_square_terms(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                       const ChannelTensor& h, double alpha);

/// Expected distortion over both noise realisations:
/// square terms + 2 L K (alpha^2 + 1) sigma_e^2.
double d2_analytic(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                   const ChannelTensor& h, double alpha, double sigma_e_sq);

/// 2 L K (alpha^2 + 1) sigma_e^2.
double noise_floor(std::size_t n_symbols, std::size_t n_subcarriers, double alpha,
                   double sigma_e_sq);

/// Largest component-wise |alpha * faded - reference| divided by the largest
/// reference component magnitude (0 when the reference is identically zero).
double zero_forcing_residual(std::span<const ComplexGrid> s_all,
                             std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                             double alpha);

}  // namespace ctsc
