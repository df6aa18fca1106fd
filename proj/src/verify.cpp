#include "ctsc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctsc/distortion.hpp"
#include "ctsc/ssdt.hpp"

namespace ctsc {

namespace {

class Tracker {
public:
    explicit Tracker(std::string name) : name_(std::move(name)) {}

    void observe(double value, double limit) {
        worst_ = std::max(worst_, value);
        ok_ = ok_ && value <= limit;
        limit_ = limit;
    }

    CheckResult result() const {
        std::ostringstream ss;
        ss << "worst " << worst_ << " (limit " << limit_ << ")";
        return {name_, ok_, ss.str()};
    }

private:
    std::string name_;
    bool ok_ = true;
    double worst_ = 0.0;
    double limit_ = 0.0;
};

double max_abs_diff(std::span<const ComplexGrid> a, std::span<const ComplexGrid> b) {
    double d = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        for (std::size_t i = 0; i < a[n].size(); ++i) {
            d = std::max(d, std::abs(a[n].flat()[i] - b[n].flat()[i]));
        }
    }
    return d;
}

double max_abs(std::span<const ComplexGrid> a) {
    double m = 0.0;
    for (const auto& g : a) {
        for (const cplx& v : g.flat()) {
            m = std::max(m, std::abs(v));
        }
    }
    return m;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const SystemConfig& cfg, std::uint64_t seed,
                                             std::size_t n_instances, std::size_t n_iterative,
                                             const TrialOptions& opts) {
    Tracker norm_power("normalized per-symbol power equals P_n (rel 1e-12)");
    Tracker zf("ssdt zero-forcing residual (rel 1e-9)");
    Tracker feasible("ssdt per-symbol power within budget (rel 1e-9)");
    Tracker binding("ssdt max power ratio equals 1 (1e-9)");
    Tracker floor_id("ssdt d2 equals noise floor (rel 1e-9)");
    Tracker noise_free("ssdt alpha independent of sigma_e^2 (rel 1e-12)");
    Tracker scaling("ssdt channel scaling covariance (rel 1e-12)");
    Tracker sums("ssdt depends on features only through their sums (rel 1e-12)");
    Tracker ordering("iterative d2 <= ssdt d2 (rel 1e-6)");
    Tracker monotone("iterative d2 trace non-increasing (abs 1e-9)");
    Tracker iter_feasible("iterative power within budget (kkt tol)");

    IterativeSettings it_settings = opts.iterative;
    for (std::size_t i = 0; i < n_instances; ++i) {
        const TrialInstance inst = make_instance(cfg, seed, i, opts);
        const auto& t = inst.transmit;
        const auto& h = inst.channel;

        for (const auto& tb : t) {
            const double p = cfg.power_budget[tb.user];
            for (std::size_t l = 0; l < tb.data.rows(); ++l) {
                double e = 0.0;
                for (const cplx& v : tb.data.row(l)) {
                    e += std::norm(v);
                }
                norm_power.observe(std::abs(e - p) / p, 1e-12);
            }
        }

        const AllocationResult r = ssdt_allocate(t, h, cfg);
        zf.observe(zero_forcing_residual(r.effective, t, h, r.alpha), 1e-9);
        double max_ratio = 0.0;
        for (std::size_t n = 0; n < cfg.n_users; ++n) {
            for (std::size_t l = 0; l < cfg.n_symbols; ++l) {
                const double ratio = r.per_symbol_power(n, l) / cfg.budget(n);
                feasible.observe(std::max(0.0, ratio - 1.0), 1e-9);
                max_ratio = std::max(max_ratio, ratio);
            }
        }
        if (r.fade_floor_hits == 0) {
            binding.observe(std::abs(max_ratio - 1.0), 1e-9);
        }
        const double d2 = d2_analytic(r.effective, t, h, r.alpha, cfg.sigma_e_sq);
        const double nf = noise_floor(cfg.n_symbols, cfg.n_subcarriers, r.alpha, cfg.sigma_e_sq);
        floor_id.observe(nf > 0.0 ? std::abs(d2 - nf) / nf : std::abs(d2 - nf), 1e-9);

        SystemConfig quiet = cfg;
        quiet.sigma_e_sq = 0.0;
        const AllocationResult rq = ssdt_allocate(t, h, quiet);
        noise_free.observe(std::abs(rq.alpha - r.alpha) / r.alpha, 1e-12);

        ChannelTensor h2 = h;
        for (auto& g : h2.per_user) {
            for (cplx& v : g.flat()) {
                v *= 2.0;
            }
        }
        const AllocationResult r2 = ssdt_allocate(t, h2, cfg);
        const double s_scale = std::max(max_abs(r.effective), 1e-300);
        scaling.observe(std::max(std::abs(2.0 * r2.alpha - r.alpha) / r.alpha,
                                 max_abs_diff(r.effective, r2.effective) / s_scale),
                        1e-12);

        if (cfg.n_users >= 2) {
            std::vector<TransmitBlock> moved = t;
            for (std::size_t j = 0; j < moved[0].data.size(); ++j) {
                const cplx shift = 0.5 * moved[0].data.flat()[j];
                moved[0].data.flat()[j] -= shift;
                moved[1].data.flat()[j] += shift;
            }
            const AllocationResult rm = ssdt_allocate(moved, h, cfg);
            sums.observe(std::max(std::abs(rm.alpha - r.alpha) / r.alpha,
                                  max_abs_diff(r.effective, rm.effective) / s_scale),
                         1e-12);
        }

        if (i < n_iterative) {
            const IterativeOutcome io = iterative_allocate(t, h, cfg, it_settings);
            const double d2_it =
                d2_analytic(io.allocation.effective, t, h, io.allocation.alpha, cfg.sigma_e_sq);
            ordering.observe((d2_it - d2) / d2, 1e-6);
            double prev = d2;
            for (const auto& rec : io.trace.iterations) {
                monotone.observe(rec.d2 - prev, 1e-9);
                prev = rec.d2;
            }
            for (std::size_t n = 0; n < cfg.n_users; ++n) {
                for (std::size_t l = 0; l < cfg.n_symbols; ++l) {
                    const double ratio = io.allocation.per_symbol_power(n, l) / cfg.budget(n);
                    iter_feasible.observe(std::max(0.0, ratio - 1.0), it_settings.kkt_tol);
                }
            }
        }
    }

    std::vector<CheckResult> out{norm_power.result(), zf.result(),       feasible.result(),
                                 binding.result(),    floor_id.result(), noise_free.result(),
                                 scaling.result()};
    if (cfg.n_users >= 2) {
        out.push_back(sums.result());
    }
    if (n_iterative > 0) {
        out.push_back(ordering.result());
        out.push_back(monotone.result());
        out.push_back(iter_feasible.result());
    }
    return out;
}

}  // namespace ctsc
