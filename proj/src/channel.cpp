#include "ctsc/channel.hpp"

#include <cmath>

#include "ctsc/error.hpp"

namespace ctsc {

ChannelTensor identity_channel(std::size_t n_users, std::size_t n_symbols,
                               std::size_t n_subcarriers) {
    ChannelTensor h;
    h.per_user.assign(n_users, ComplexGrid(n_symbols, n_subcarriers, cplx(1.0, 0.0)));
    h.sigma_f_sq_linear = 1.0;
    return h;
}

ChannelTensor sample_rayleigh(const SystemConfig& cfg, RngStream& rng) {
    const double var = sigma_f_db_to_linear(cfg.sigma_f_db);
    if (!(var > 0.0) || !std::isfinite(var)) {
        throw Error(Errc::InvalidConfig, "fading variance must be positive");
    }
    const double sd = std::sqrt(var / 2.0);
    ChannelTensor h;
    h.sigma_f_sq_linear = var;
    h.per_user.reserve(cfg.n_users);
    for (std::size_t n = 0; n < cfg.n_users; ++n) {
        ComplexGrid g(cfg.n_symbols, cfg.n_subcarriers);
        for (cplx& v : g.flat()) {
            const double re = rng.normal();
            const double im = rng.normal();
            v = cplx(sd * re, sd * im);
        }
        h.per_user.push_back(std::move(g));
    }
    return h;
}

NoiseBlock sample_awgn(const SystemConfig& cfg, RngStream& rng) {
    const double sd = std::sqrt(cfg.sigma_e_sq);
    NoiseBlock w{ComplexGrid(cfg.n_symbols, cfg.n_subcarriers)};
    for (cplx& v : w.data.flat()) {
        const double re = rng.normal();
        const double im = rng.normal();
        v = sd > 0.0 ? cplx(sd * re, sd * im) : cplx(0.0, 0.0);
    }
    return w;
}

ComplexGrid faded_sum(std::span<const ComplexGrid> s_all, const ChannelTensor& h) {
    if (s_all.empty() || s_all.size() != h.n_users()) {
        throw Error(Errc::ShapeMismatch, "signal count differs from channel user count");
    }
    const std::size_t L = s_all[0].rows();
    const std::size_t K = s_all[0].cols();
    ComplexGrid y(L, K);
    for (std::size_t n = 0; n < s_all.size(); ++n) {
        if (!s_all[n].same_shape(y) || !h.per_user[n].same_shape(y)) {
            throw Error(Errc::ShapeMismatch, "user " + std::to_string(n));
        }
        auto dst = y.flat();
        auto s = s_all[n].flat();
        auto g = h.per_user[n].flat();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            // (t^r p^r h^r - t^i p^i h^i) + i (t^r p^r h^i + t^i p^i h^r)
            const double re = s[i].real() * g[i].real() - s[i].imag() * g[i].imag();
            const double im = s[i].real() * g[i].imag() + s[i].imag() * g[i].real();
            dst[i] += cplx(re, im);
        }
    }
    return y;
}

ReceivedBlock apply_faded_uplink(std::span<const ComplexGrid> s_all, const ChannelTensor& h,
                                 const NoiseBlock& w_new) {
    ReceivedBlock y{faded_sum(s_all, h), Stage::Faded};
    if (!y.data.same_shape(w_new.data)) {
        throw Error(Errc::ShapeMismatch, "noise block shape");
    }
    auto dst = y.data.flat();
    auto w = w_new.data.flat();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] += w[i];
    }
    return y;
}

}  // namespace ctsc
