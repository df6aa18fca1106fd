#include "ctsc/ssdt.hpp"

#include <cmath>
#include <string>

#include "ctsc/error.hpp"

namespace ctsc {

namespace {

void check_shapes(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                  std::span<const double> beta) {
    if (t_all.empty()) {
        throw Error(Errc::ShapeMismatch, "no users");
    }
    if (h.n_users() != t_all.size() || beta.size() != t_all.size()) {
        throw Error(Errc::ShapeMismatch, "user count differs between features, channel and beta");
    }
    for (std::size_t n = 0; n < t_all.size(); ++n) {
        if (!t_all[n].data.same_shape(t_all[0].data) ||
            !h.per_user[n].same_shape(t_all[0].data)) {
            throw Error(Errc::ShapeMismatch, "user " + std::to_string(n));
        }
    }
}

}  // namespace

std::vector<double> compute_beta(std::span<const double> power) {
    std::vector<double> beta;
    beta.reserve(power.size());
    for (double p : power) {
        if (!(p > 0.0)) {
            throw Error(Errc::NonPositivePower, "power budget " + std::to_string(p));
        }
        beta.push_back(1.0 / std::sqrt(p));
    }
    return beta;
}

RealGrid fade_denominator(const ChannelTensor& h, std::span<const double> beta,
                          double fade_floor_eps, std::size_t& hits) {
    const std::size_t L = h.per_user.at(0).rows();
    const std::size_t K = h.per_user.at(0).cols();
    RealGrid d(L, K);
    for (std::size_t n = 0; n < h.n_users(); ++n) {
        auto g = h.per_user[n].flat();
        auto dst = d.flat();
        const double inv_beta = 1.0 / beta[n];
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] += std::norm(g[i]) * inv_beta;
        }
    }
    for (double& v : d.flat()) {
        if (v < fade_floor_eps) {
            v = fade_floor_eps;
            ++hits;
        }
        if (!(v > 0.0)) {
            throw Error(Errc::DegenerateChannel, "zero weighted channel energy with no fade floor");
        }
    }
    return d;
}

Multipliers compute_multipliers(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                std::span<const double> beta, double alpha,
                                double fade_floor_eps) {
    check_shapes(t_all, h, beta);
    if (!(alpha > 0.0)) {
        throw Error(Errc::NonFiniteCandidate, "alpha must be positive");
    }
    Multipliers m;
    const RealGrid d = fade_denominator(h, beta, fade_floor_eps, m.fade_floor_hits);
    const ComplexGrid a = reference_sum(t_all);
    m.lambda = RealGrid(a.rows(), a.cols());
    m.mu = RealGrid(a.rows(), a.cols());
    const double a2 = alpha * alpha;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.lambda.flat()[i] = -2.0 * a.flat()[i].real() / (a2 * d.flat()[i]);
        m.mu.flat()[i] = -2.0 * a.flat()[i].imag() / (a2 * d.flat()[i]);
    }
    return m;
}

std::vector<ComplexGrid> compute_effective_components(std::span<const TransmitBlock> t_all,
                                                      const ChannelTensor& h,
                                                      std::span<const double> beta, double alpha,
                                                      const Multipliers& m) {
    check_shapes(t_all, h, beta);
    std::vector<ComplexGrid> s;
    s.reserve(t_all.size());
    for (std::size_t n = 0; n < t_all.size(); ++n) {
        ComplexGrid out(m.lambda.rows(), m.lambda.cols());
        auto g = h.per_user[n].flat();
        const double c = alpha / (2.0 * beta[n]);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double lam = m.lambda.flat()[i];
            const double mu = m.mu.flat()[i];
            const double hr = g[i].real();
            const double hi = g[i].imag();
            out.flat()[i] = cplx(-c * (lam * hr + mu * hi), c * (lam * hi - mu * hr));
        }
        s.push_back(std::move(out));
    }
    return s;
}

RealGrid compute_alpha_candidates(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                  std::span<const double> beta, std::span<const double> power,
                                  PowerConvention convention, double fade_floor_eps) {
    check_shapes(t_all, h, beta);
    if (power.size() != t_all.size()) {
        throw Error(Errc::ShapeMismatch, "power list size");
    }
    std::size_t hits = 0;
    const RealGrid d = fade_denominator(h, beta, fade_floor_eps, hits);
    const ComplexGrid a = reference_sum(t_all);
    const std::size_t L = a.rows();
    const std::size_t K = a.cols();
    RealGrid cand(t_all.size(), L);
    for (std::size_t n = 0; n < t_all.size(); ++n) {
        const double denom_user =
            symbol_budget(power[n], K, convention) * beta[n] * beta[n];
        for (std::size_t l = 0; l < L; ++l) {
            double acc = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double dk = d(l, k);
                acc += std::norm(h(n, l, k)) * std::norm(a(l, k)) / (dk * dk);
            }
            cand(n, l) = std::sqrt(acc / denom_user);
        }
    }
    return cand;
}

double select_alpha(const RealGrid& candidates) {
    double best = 0.0;
    for (double v : candidates.flat()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(Errc::NonFiniteCandidate, "alpha candidate " + std::to_string(v));
        }
        if (v > best) {
            best = v;
        }
    }
    if (!(best > 0.0)) {
        throw Error(Errc::NonFiniteCandidate, "every alpha candidate is zero");
    }
    return best;
}

RealGrid per_symbol_power(std::span<const ComplexGrid> s_all) {
    const std::size_t L = s_all.empty() ? 0 : s_all[0].rows();
    RealGrid p(s_all.size(), L);
    for (std::size_t n = 0; n < s_all.size(); ++n) {
        for (std::size_t l = 0; l < L; ++l) {
            double acc = 0.0;
            for (const cplx& v : s_all[n].row(l)) {
                acc += std::norm(v);
            }
            p(n, l) = acc;
        }
    }
    return p;
}

AllocationResult ssdt_allocate(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                               const SystemConfig& cfg) {
    // Same pipeline as the step functions above, fused so the reference sums
    // and the weighted channel energy are formed once.
    AllocationResult r;
    r.beta = compute_beta(cfg.power_budget);
    check_shapes(t_all, h, r.beta);
    const std::size_t N = t_all.size();
    const std::size_t L = t_all[0].data.rows();
    const std::size_t K = t_all[0].data.cols();

    std::vector<double> inv_beta(N);
    for (std::size_t n = 0; n < N; ++n) {
        inv_beta[n] = 1.0 / r.beta[n];
    }
    const ComplexGrid a = reference_sum(t_all);
    std::vector<const cplx*> hp(N);
    for (std::size_t n = 0; n < N; ++n) {
        hp[n] = h.per_user[n].flat().data();
    }
    RealGrid inv_d(L, K);
    RealGrid acc(N, L);
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t k = 0; k < K; ++k) {
            const std::size_t i = l * K + k;
            double d = 0.0;
            for (std::size_t n = 0; n < N; ++n) {
                d += std::norm(hp[n][i]) * inv_beta[n];
            }
            if (d < cfg.fade_floor_eps) {
                d = cfg.fade_floor_eps;
                ++r.fade_floor_hits;
            }
            if (!(d > 0.0)) {
                throw Error(Errc::DegenerateChannel, "zero weighted channel energy with no fade floor");
            }
            const double inv = 1.0 / d;
            inv_d.flat()[i] = inv;
            const double w = std::norm(a.flat()[i]) * inv * inv;
            for (std::size_t n = 0; n < N; ++n) {
                acc(n, l) += std::norm(hp[n][i]) * w;
            }
        }
    }
    for (std::size_t n = 0; n < N; ++n) {
        const double denom_user =
            symbol_budget(cfg.power_budget[n], K, cfg.power_convention) * r.beta[n] * r.beta[n];
        for (std::size_t l = 0; l < L; ++l) {
            acc(n, l) = std::sqrt(acc(n, l) / denom_user);
        }
    }
    r.alpha = select_alpha(acc);

    const double lam_scale = -2.0 / (r.alpha * r.alpha);
    r.lambda = RealGrid(L, K);
    r.mu = RealGrid(L, K);
    for (std::size_t i = 0; i < L * K; ++i) {
        r.lambda.flat()[i] = lam_scale * a.flat()[i].real() * inv_d.flat()[i];
        r.mu.flat()[i] = lam_scale * a.flat()[i].imag() * inv_d.flat()[i];
    }
    r.effective.reserve(N);
    r.per_symbol_power = RealGrid(N, L);
    for (std::size_t n = 0; n < N; ++n) {
        ComplexGrid out(L, K);
        const cplx* g = hp[n];
        const double c = 1.0 / (r.alpha * r.beta[n]);
        for (std::size_t l = 0; l < L; ++l) {
            double p = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const std::size_t i = l * K + k;
                // conj(h) * A, written out to stay off the checked complex multiply
                const double hr = g[i].real();
                const double hi = g[i].imag();
                const double ar = a.flat()[i].real();
                const double ai = a.flat()[i].imag();
                const double f = c * inv_d.flat()[i];
                const double vr = (hr * ar + hi * ai) * f;
                const double vi = (hr * ai - hi * ar) * f;
                out.flat()[i] = cplx(vr, vi);
                p += vr * vr + vi * vi;
            }
            r.per_symbol_power(n, l) = p;
        }
        r.effective.push_back(std::move(out));
    }
    return r;
}

}  // namespace ctsc
