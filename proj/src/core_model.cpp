#include "ctsc/core_model.hpp"

#include <cmath>
#include <string>

#include "ctsc/error.hpp"

namespace ctsc {

std::string_view to_string(PowerConvention c) {
    return c == PowerConvention::PerSymbolTotal ? "per_symbol_total" : "per_subcarrier_average";
}

PowerConvention parse_power_convention(std::string_view s) {
    if (s == "per_subcarrier_average" || s == "PerSubcarrierAverage") {
        return PowerConvention::PerSubcarrierAverage;
    }
    if (s == "per_symbol_total" || s == "PerSymbolTotal") {
        return PowerConvention::PerSymbolTotal;
    }
    throw Error(Errc::InvalidConfig, "unknown power convention '" + std::string(s) + "'");
}

void SystemConfig::validate() const {
    if (n_users == 0 || n_symbols == 0 || n_subcarriers == 0) {
        throw Error(Errc::InvalidConfig, "dimensions must be >= 1");
    }
    if (power_budget.size() != n_users) {
        throw Error(Errc::InvalidConfig, "power_budget needs exactly n_users entries");
    }
    for (double p : power_budget) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw Error(Errc::NonPositivePower, "power budgets must be positive and finite");
        }
    }
    if (!(sigma_e_sq >= 0.0) || !std::isfinite(sigma_e_sq)) {
        throw Error(Errc::InvalidConfig, "sigma_e_sq must be >= 0");
    }
    if (!std::isfinite(sigma_f_db)) {
        throw Error(Errc::InvalidConfig, "sigma_f_db must be finite");
    }
    if (!(fade_floor_eps >= 0.0)) {
        throw Error(Errc::InvalidConfig, "fade_floor_eps must be >= 0");
    }
}

double symbol_budget(double p_n, std::size_t n_subcarriers, PowerConvention c) {
    return c == PowerConvention::PerSubcarrierAverage ? static_cast<double>(n_subcarriers) * p_n
                                                      : p_n;
}

double SystemConfig::budget(std::size_t n) const {
    return symbol_budget(power_budget.at(n), n_subcarriers, power_convention);
}

TransmitBlock normalize_features(const FeatureBlock& x, double p_n) {
    if (!(p_n > 0.0)) {
        throw Error(Errc::NonPositivePower, "P_n must be positive");
    }
    TransmitBlock t{x.user, ComplexGrid(x.data.rows(), x.data.cols())};
    const double amp = std::sqrt(p_n);
    for (std::size_t l = 0; l < x.data.rows(); ++l) {
        auto in = x.data.row(l);
        double energy = 0.0;
        for (const cplx& v : in) {
            energy += std::norm(v);
        }
        if (!(energy > 0.0)) {
            throw Error(Errc::ZeroSymbolNorm,
                        "user " + std::to_string(x.user) + " symbol " + std::to_string(l));
        }
        const double scale = amp / std::sqrt(energy);
        auto out = t.data.row(l);
        for (std::size_t k = 0; k < in.size(); ++k) {
            out[k] = in[k] * scale;
        }
    }
    return t;
}

ReceivedBlock superpose_awgn(std::span<const TransmitBlock> t_all, const NoiseBlock& w) {
    ReceivedBlock y{w.data, Stage::Awgn};
    for (const auto& t : t_all) {
        if (!t.data.same_shape(w.data)) {
            throw Error(Errc::ShapeMismatch, "transmit block shape differs from noise block");
        }
        auto dst = y.data.flat();
        auto src = t.data.flat();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] += src[i];
        }
    }
    return y;
}

double snr_db_to_sigma_e_sq(double snr1_db, double p_1) {
    return p_1 * std::pow(10.0, -snr1_db / 10.0);
}

double sigma_f_db_to_linear(double sigma_f_db) { return std::pow(10.0, sigma_f_db / 10.0); }

ComplexGrid reference_sum(std::span<const TransmitBlock> t_all) {
    if (t_all.empty()) {
        throw Error(Errc::ShapeMismatch, "no transmit blocks");
    }
    ComplexGrid a(t_all[0].data.rows(), t_all[0].data.cols());
    for (const auto& t : t_all) {
        if (!t.data.same_shape(a)) {
            throw Error(Errc::ShapeMismatch, "transmit blocks differ in shape");
        }
        auto dst = a.flat();
        auto src = t.data.flat();
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] += src[i];
        }
    }
    return a;
}

}  // namespace ctsc
