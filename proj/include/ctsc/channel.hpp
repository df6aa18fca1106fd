#pragma once

#include <span>
#include <vector>

#include "ctsc/core_model.hpp"
#include "ctsc/rng.hpp"

namespace ctsc {

/// Fading gains h_{n,l,k}; one L x K grid per user.
struct ChannelTensor {
    std::vector<ComplexGrid> per_user;
    double sigma_f_sq_linear = 1.0;

    std::size_t n_users() const noexcept { return per_user.size(); }
    const cplx& operator()(std::size_t n, std::size_t l, std::size_t k) const {
        return per_user[n](l, k);
    }
};

/// All-ones channel of the given shape (AWGN equivalent).
ChannelTensor identity_channel(std::size_t n_users, std::size_t n_symbols,
                               std::size_t n_subcarriers);

/// Rayleigh fading with E|h|^2 = sigma_f^2 (each component N(0, sigma_f^2 / 2)).
ChannelTensor sample_rayleigh(const SystemConfig& cfg, RngStream& rng);

/// Per-component N(0, sigma_e^2) noise. sigma_e^2 = 0 gives an exact zero block
/// but still advances the stream by the same amount.
NoiseBlock sample_awgn(const SystemConfig& cfg, RngStream& rng);

/// y^c = sum_n h_n * s_n + w_new, where s_n are the allocated (effective)
/// transmit components.
ReceivedBlock apply_faded_uplink(std::span<const ComplexGrid> s_all, const ChannelTensor& h,
                                 const NoiseBlock& w_new);

/// Noiseless faded superposition sum_n h_n * s_n.
ComplexGrid faded_sum(std::span<const ComplexGrid> s_all, const ChannelTensor& h);

}  // namespace ctsc
