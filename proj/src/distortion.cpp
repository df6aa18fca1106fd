#include "ctsc/distortion.hpp"

#include <algorithm>
#include <cmath>

#include "ctsc/error.hpp"

namespace ctsc {

double d1_empirical(const ReceivedBlock& y_new, const ReceivedBlock& y) {
    if (!y_new.data.same_shape(y.data)) {
        throw Error(Errc::ShapeMismatch, "received blocks differ in shape");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        acc += std::norm(y_new.data.flat()[i] - y.data.flat()[i]);
    }
    return acc;
}

double d2_square_terms(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                       const ChannelTensor& h, double alpha) {
    const ComplexGrid ref = reference_sum(t_all);
    const ComplexGrid faded = faded_sum(s_all, h);
    if (!faded.same_shape(ref)) {
        throw Error(Errc::ShapeMismatch, "allocation and features differ in shape");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        acc += std::norm(alpha * faded.flat()[i] - ref.flat()[i]);
    }
    return acc;
}

double noise_floor(std::size_t n_symbols, std::size_t n_subcarriers, double alpha,
                   double sigma_e_sq) {
    return 2.0 * static_cast<double>(n_symbols * n_subcarriers) * (alpha * alpha + 1.0) *
           sigma_e_sq;
}

double d2_analytic(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                   const ChannelTensor& h, double alpha, double sigma_e_sq) {
    const double sq = d2_square_terms(s_all, t_all, h, alpha);
    return sq + noise_floor(t_all[0].data.rows(), t_all[0].data.cols(), alpha, sigma_e_sq);
}

double zero_forcing_residual(std::span<const ComplexGrid> s_all,
                             std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                             double alpha) {
    const ComplexGrid ref = reference_sum(t_all);
    const ComplexGrid faded = faded_sum(s_all, h);
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const cplx r = ref.flat()[i];
        const cplx e = alpha * faded.flat()[i] - r;
        worst = std::max({worst, std::abs(e.real()), std::abs(e.imag())});
        scale = std::max({scale, std::abs(r.real()), std::abs(r.imag())});
    }
    if (scale == 0.0) {
        return worst;
    }
    return worst / scale;
}

}  // namespace ctsc
