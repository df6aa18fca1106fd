#include "ctsc/iterative.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctsc/distortion.hpp"

namespace ctsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Channel-only view of one OFDM symbol.
struct SymbolView {
    std::span<const double> a2;  // K
    std::span<const double> g;   // N*K
    std::span<const double> c;   // N budgets
    std::size_t n = 0;
    std::size_t k = 0;
};

// Weighted zero-forcing profile. For simplex weights v the minimum of
// sum_n v_n ||s_n||^2 / c_n over zero-forcing s is
//   F(v) = sum_k a2_k / S_k,  S_k = sum_n g_nk c_n / v_n,
// and dF/dv_n is user n's power-to-budget ratio at that point.
double zf_value(const SymbolView& sv, std::span<const double> v, std::vector<double>* ratio,
                Eigen::MatrixXd* hess) {
    const std::size_t N = sv.n;
    if (ratio) {
        ratio->assign(N, 0.0);
    }
    if (hess) {
        hess->setZero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    }
    double f = 0.0;
    for (std::size_t k = 0; k < sv.k; ++k) {
        const double a2 = sv.a2[k];
        if (a2 == 0.0) {
            continue;
        }
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            s += sv.g[n * sv.k + k] * sv.c[n] / v[n];
        }
        f += a2 / s;
        if (!ratio && !hess) {
            continue;
        }
        for (std::size_t n = 0; n < N; ++n) {
            const double b_n = sv.g[n * sv.k + k] * sv.c[n];
            const double vn2 = v[n] * v[n];
            if (ratio) {
                (*ratio)[n] += a2 * b_n / (vn2 * s * s);
            }
            if (hess) {
                for (std::size_t j = 0; j < N; ++j) {
                    const double b_j = sv.g[j * sv.k + k] * sv.c[j];
                    double hnj = 2.0 * a2 * b_n * b_j / (vn2 * v[j] * v[j] * s * s * s);
                    if (j == n) {
                        hnj -= 2.0 * a2 * b_n / (vn2 * v[n] * s * s);
                    }
                    (*hess)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) += hnj;
                }
            }
        }
    }
    return f;
}

// Dual of the fixed-alpha subproblem for one symbol:
//   G(nu) = sum_k a2_k / q_k - sum_n nu_n c_n,  q_k = 1 + alpha^2 sum_n g_nk / nu_n.
// dG/dnu_n = P_n(nu) - c_n where P_n is the power of the ridge solution.
double dual_value(const SymbolView& sv, double alpha_sq, std::span<const double> nu,
                  std::vector<double>* grad, Eigen::MatrixXd* hess) {
    const std::size_t N = sv.n;
    if (grad) {
        grad->assign(N, 0.0);
    }
    if (hess) {
        hess->setZero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    }
    double val = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        val -= nu[n] * sv.c[n];
    }
    for (std::size_t k = 0; k < sv.k; ++k) {
        const double a2 = sv.a2[k];
        if (a2 == 0.0) {
            continue;
        }
        double q = 1.0;
        for (std::size_t n = 0; n < N; ++n) {
            q += alpha_sq * sv.g[n * sv.k + k] / nu[n];
        }
        val += a2 / q;
        if (!grad && !hess) {
            continue;
        }
        for (std::size_t n = 0; n < N; ++n) {
            const double gn = sv.g[n * sv.k + k];
            const double nun2 = nu[n] * nu[n];
            if (grad) {
                (*grad)[n] += a2 * alpha_sq * gn / (nun2 * q * q);
            }
            if (hess) {
                for (std::size_t j = 0; j < N; ++j) {
                    const double gj = sv.g[j * sv.k + k];
                    double hnj = 2.0 * a2 * alpha_sq * alpha_sq * gn * gj /
                                 (nun2 * nu[j] * nu[j] * q * q * q);
                    if (j == n) {
                        hnj -= 2.0 * a2 * alpha_sq * gn / (nun2 * nu[n] * q * q);
                    }
                    (*hess)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) += hnj;
                }
            }
        }
    }
    if (grad) {
        for (std::size_t n = 0; n < N; ++n) {
            (*grad)[n] -= sv.c[n];
        }
    }
    return val;
}

double max_step_inside(std::span<const double> x, const Eigen::VectorXd& d) {
    double t = 1.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double dn = d(static_cast<Eigen::Index>(n));
        if (dn < 0.0) {
            t = std::min(t, 0.95 * x[n] / -dn);
        }
    }
    return t;
}

struct DualSolve {
    std::vector<double> nu;
    int iters = 0;
};

// Damped Newton on the concave dual. Every constraint is active whenever
// exact zero forcing is out of reach, so the maximiser is interior.
DualSolve maximise_dual(const SymbolView& sv, double alpha_sq, std::vector<double> nu) {
    const std::size_t N = sv.n;
    DualSolve out;
    std::vector<double> grad;
    std::vector<double> trial(N);
    Eigen::MatrixXd hess;
    for (int it = 0; it < 100; ++it) {
        const double val = dual_value(sv, alpha_sq, nu, &grad, &hess);
        double res = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            res = std::max(res, std::abs(grad[n]) / sv.c[n]);
        }
        if (res <= 1e-14) {
            break;
        }
        ++out.iters;
        Eigen::VectorXd gvec(static_cast<Eigen::Index>(N));
        for (std::size_t n = 0; n < N; ++n) {
            gvec(static_cast<Eigen::Index>(n)) = grad[n];
        }
        Eigen::VectorXd d = (-hess).ldlt().solve(gvec);
        double slope = gvec.dot(d);
        if (!std::isfinite(slope) || slope <= 0.0) {
            for (std::size_t n = 0; n < N; ++n) {
                d(static_cast<Eigen::Index>(n)) = grad[n] * nu[n] / sv.c[n];
            }
            slope = gvec.dot(d);
        }
        double t = max_step_inside(nu, d);
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t n = 0; n < N; ++n) {
                trial[n] = nu[n] + t * d(static_cast<Eigen::Index>(n));
            }
            const double tv = dual_value(sv, alpha_sq, trial, nullptr, nullptr);
            if (tv >= val + 1e-4 * t * slope) {
                moved = true;
                break;
            }
            // Near the optimum the value change drowns in rounding; fall back
            // to accepting steps that shrink the gradient.
            if (res < 1e-6) {
                std::vector<double> tg;
                dual_value(sv, alpha_sq, trial, &tg, nullptr);
                double tres = 0.0;
                for (std::size_t n = 0; n < N; ++n) {
                    tres = std::max(tres, std::abs(tg[n]) / sv.c[n]);
                }
                if (tres < res) {
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved) {
            break;
        }
        nu = trial;
    }
    out.nu = std::move(nu);
    return out;
}

// Starting point on the ray nu = t * dir: the t where the directional
// derivative of the dual changes sign (monotone in t, found by bisection in log t).
std::vector<double> ray_start(const SymbolView& sv, double alpha_sq, std::span<const double> dir) {
    const std::size_t N = sv.n;
    std::vector<double> nu(N);
    std::vector<double> grad;
    auto slope_at = [&](double t) {
        for (std::size_t n = 0; n < N; ++n) {
            nu[n] = t * dir[n];
        }
        dual_value(sv, alpha_sq, nu, &grad, nullptr);
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            s += dir[n] * grad[n];
        }
        return s;
    };
    double lo = 1.0;
    double hi = 1.0;
    if (slope_at(1.0) > 0.0) {
        for (int i = 0; i < 400 && slope_at(hi) > 0.0; ++i) {
            lo = hi;
            hi *= 4.0;
        }
    } else {
        for (int i = 0; i < 400 && slope_at(lo) <= 0.0; ++i) {
            hi = lo;
            lo /= 4.0;
        }
    }
    for (int i = 0; i < 40; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (slope_at(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double t = std::sqrt(lo * hi);
    for (std::size_t n = 0; n < N; ++n) {
        nu[n] = t * dir[n];
    }
    return nu;
}

void check_instance(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                    const SystemConfig& cfg) {
    cfg.validate();
    if (t_all.size() != cfg.n_users || h.n_users() != cfg.n_users) {
        throw Error(Errc::ShapeMismatch, "user count differs from configuration");
    }
    for (std::size_t n = 0; n < cfg.n_users; ++n) {
        const auto& t = t_all[n].data;
        const auto& g = h.per_user[n];
        if (t.rows() != cfg.n_symbols || t.cols() != cfg.n_subcarriers || !g.same_shape(t)) {
            throw Error(Errc::ShapeMismatch, "user " + std::to_string(n));
        }
    }
}

}  // namespace

void IterativeSettings::validate() const {
    if (max_outer_iters < 1 || !(kkt_tol > 0.0) || !(outer_tol > 0.0)) {
        throw Error(Errc::InvalidConfig, "iterative settings out of range");
    }
    if (alpha_init && !(*alpha_init > 0.0)) {
        throw Error(Errc::InvalidConfig, "alpha_init must be positive");
    }
}

FixedAlphaQcqp::FixedAlphaQcqp(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                               const SystemConfig& cfg)
    : n_users_(cfg.n_users), n_subcarriers_(cfg.n_subcarriers) {
    check_instance(t_all, h, cfg);
    for (std::size_t n = 0; n < n_users_; ++n) {
        budget_.push_back(cfg.budget(n));
    }
    const ComplexGrid a = reference_sum(t_all);
    const std::size_t K = n_subcarriers_;
    symbols_.resize(cfg.n_symbols);
    for (std::size_t l = 0; l < cfg.n_symbols; ++l) {
        Symbol& sym = symbols_[l];
        sym.target.assign(a.row(l).begin(), a.row(l).end());
        sym.a2.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            sym.a2[k] = std::norm(sym.target[k]);
        }
        sym.h.resize(n_users_ * K);
        sym.g.resize(n_users_ * K);
        for (std::size_t n = 0; n < n_users_; ++n) {
            for (std::size_t k = 0; k < K; ++k) {
                sym.h[n * K + k] = h(n, l, k);
                sym.g[n * K + k] = std::norm(h(n, l, k));
            }
        }
        prepare_zero_forcing(sym);
    }
}

void FixedAlphaQcqp::prepare_zero_forcing(Symbol& sym) const {
    const std::size_t N = n_users_;
    const std::size_t K = n_subcarriers_;
    sym.zf_weight.assign(N, 1.0 / static_cast<double>(N));
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (sym.a2[k] == 0.0) {
            continue;
        }
        total += sym.a2[k];
        double reach = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            reach += sym.g[n * K + k];
        }
        if (reach == 0.0) {
            sym.zf_alpha_sq = kInf;
            return;
        }
    }
    if (total == 0.0) {
        sym.zf_alpha_sq = 0.0;
        return;
    }

    const SymbolView sv{sym.a2, sym.g, budget_, N, K};
    std::vector<double>& v = sym.zf_weight;
    std::vector<double> ratio;
    std::vector<double> trial(N);
    Eigen::MatrixXd hess;
    const auto n_idx = static_cast<Eigen::Index>(N);
    for (int it = 0; it < 100 && N > 1; ++it) {
        const double f = zf_value(sv, v, &ratio, &hess);
        const auto [rmin, rmax] = std::minmax_element(ratio.begin(), ratio.end());
        if (*rmax - *rmin <= 1e-14 * *rmax) {
            break;
        }
        // Newton step for max F on the simplex (tangent directions only).
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n_idx + 1, n_idx + 1);
        kkt.topLeftCorner(n_idx, n_idx) = hess;
        kkt.block(0, n_idx, n_idx, 1).setOnes();
        kkt.block(n_idx, 0, 1, n_idx).setOnes();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_idx + 1);
        Eigen::VectorXd rvec(n_idx);
        for (std::size_t n = 0; n < N; ++n) {
            rvec(static_cast<Eigen::Index>(n)) = ratio[n];
            rhs(static_cast<Eigen::Index>(n)) = -ratio[n];
        }
        Eigen::VectorXd d = kkt.fullPivLu().solve(rhs).head(n_idx);
        double slope = rvec.dot(d);
        if (!std::isfinite(slope) || slope <= 0.0) {
            d = rvec.array() - rvec.mean();
            slope = rvec.dot(d);
            if (!(slope > 0.0)) {
                break;
            }
        }
        double t = max_step_inside(v, d);
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            double sum = 0.0;
            for (std::size_t n = 0; n < N; ++n) {
                trial[n] = v[n] + t * d(static_cast<Eigen::Index>(n));
                sum += trial[n];
            }
            for (double& x : trial) {
                x /= sum;
            }
            if (zf_value(sv, trial, nullptr, nullptr) >= f + 1e-4 * t * slope) {
                moved = true;
                break;
            }
            if (*rmax - *rmin < 1e-6 * *rmax) {
                std::vector<double> tr;
                zf_value(sv, trial, &tr, nullptr);
                const auto [tmin, tmax] = std::minmax_element(tr.begin(), tr.end());
                if (*tmax - *tmin < *rmax - *rmin) {
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved) {
            break;
        }
        v = trial;
    }
    zf_value(sv, v, &ratio, nullptr);
    // The point built from these weights is what solve() returns, so its
    // exact worst ratio (not the converged optimum) decides feasibility.
    sym.zf_alpha_sq = *std::max_element(ratio.begin(), ratio.end());
}

QcqpSolution FixedAlphaQcqp::solve(double alpha, const RealGrid* warm_nu, double kkt_tol) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(Errc::InvalidConfig, "alpha must be positive and finite");
    }
    const std::size_t N = n_users_;
    const std::size_t K = n_subcarriers_;
    const std::size_t L = symbols_.size();
    const double alpha_sq = alpha * alpha;

    QcqpSolution sol;
    sol.effective.assign(N, ComplexGrid(L, K));
    sol.nu = RealGrid(N, L);

    for (std::size_t l = 0; l < L; ++l) {
        const Symbol& sym = symbols_[l];
        const SymbolView sv{sym.a2, sym.g, budget_, N, K};
        if (alpha_sq >= sym.zf_alpha_sq) {
            // Exact zero forcing fits: weighted zero-forcing point, all nu = 0.
            const auto& v = sym.zf_weight;
            for (std::size_t k = 0; k < K; ++k) {
                if (sym.a2[k] == 0.0) {
                    continue;
                }
                double s = 0.0;
                for (std::size_t n = 0; n < N; ++n) {
                    s += sym.g[n * K + k] * budget_[n] / v[n];
                }
                for (std::size_t n = 0; n < N; ++n) {
                    const double w = budget_[n] / v[n];
                    sol.effective[n](l, k) =
                        std::conj(sym.h[n * K + k]) * sym.target[k] * (w / (alpha * s));
                }
            }
            continue;
        }

        std::vector<double> start;
        if (warm_nu && warm_nu->rows() == N && warm_nu->cols() == L) {
            start.resize(N);
            bool ok = true;
            for (std::size_t n = 0; n < N; ++n) {
                start[n] = (*warm_nu)(n, l);
                ok = ok && start[n] > 0.0 && std::isfinite(start[n]);
            }
            if (!ok) {
                start.clear();
            }
        }
        if (start.empty()) {
            // As nu -> 0 the ridge point tends to weighted zero forcing with
            // weights 1/nu_n, so v_n / c_n matches the zero-forcing profile.
            std::vector<double> dir(N);
            for (std::size_t n = 0; n < N; ++n) {
                dir[n] = sym.zf_weight[n] / budget_[n];
            }
            start = ray_start(sv, alpha_sq, dir);
        }
        const DualSolve ds = maximise_dual(sv, alpha_sq, std::move(start));
        sol.inner_iters += ds.iters;
        for (std::size_t k = 0; k < K; ++k) {
            if (sym.a2[k] == 0.0) {
                continue;
            }
            double q = 1.0;
            for (std::size_t n = 0; n < N; ++n) {
                q += alpha_sq * sym.g[n * K + k] / ds.nu[n];
            }
            for (std::size_t n = 0; n < N; ++n) {
                sol.effective[n](l, k) =
                    std::conj(sym.h[n * K + k]) * sym.target[k] * (alpha / (ds.nu[n] * q));
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            sol.nu(n, l) = ds.nu[n];
        }
    }

    // Residual from the assembled solution, independent of how it was reached.
    double amax = 0.0;
    double hmax = 0.0;
    for (const Symbol& sym : symbols_) {
        for (double v : sym.a2) {
            amax = std::max(amax, std::sqrt(v));
        }
        for (double v : sym.g) {
            hmax = std::max(hmax, std::sqrt(v));
        }
    }
    double res = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
        const Symbol& sym = symbols_[l];
        const double stat_scale = std::max(alpha * hmax * amax, 1e-300);
        double obj_scale = 0.0;
        for (double v : sym.a2) {
            obj_scale += v;
        }
        obj_scale = obj_scale > 0.0 ? obj_scale : 1.0;
        for (std::size_t k = 0; k < K; ++k) {
            cplx y(0.0, 0.0);
            for (std::size_t n = 0; n < N; ++n) {
                y += sym.h[n * K + k] * sol.effective[n](l, k);
            }
            const cplx r = alpha * y - sym.target[k];
            for (std::size_t n = 0; n < N; ++n) {
                const cplx st = alpha * std::conj(sym.h[n * K + k]) * r +
                                sol.nu(n, l) * sol.effective[n](l, k);
                res = std::max(res, std::abs(st) / stat_scale);
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            double p = 0.0;
            for (const cplx& v : sol.effective[n].row(l)) {
                p += std::norm(v);
            }
            res = std::max(res, std::max(0.0, p - budget_[n]) / budget_[n]);
            res = std::max(res, sol.nu(n, l) * std::abs(p - budget_[n]) / obj_scale);
        }
    }
    sol.max_kkt_residual = res;
    if (!(res <= kkt_tol)) {
        throw SolverError("fixed-alpha subproblem KKT residual " + std::to_string(res),
                          std::move(sol));
    }
    return sol;
}

QcqpSolution qcqp_solve_fixed_alpha(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                    const SystemConfig& cfg, double alpha,
                                    const RealGrid* warm_nu, double kkt_tol) {
    return FixedAlphaQcqp(t_all, h, cfg).solve(alpha, warm_nu, kkt_tol);
}

double qcqp_kkt_residual(std::span<const ComplexGrid> s_all, const RealGrid& nu,
                         std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                         const SystemConfig& cfg, double alpha) {
    check_instance(t_all, h, cfg);
    const ComplexGrid a = reference_sum(t_all);
    const ComplexGrid y = faded_sum(s_all, h);
    const std::size_t N = cfg.n_users;
    double amax = 0.0;
    for (const cplx& v : a.flat()) {
        amax = std::max(amax, std::abs(v));
    }
    double hmax = 0.0;
    for (const auto& g : h.per_user) {
        for (const cplx& v : g.flat()) {
            hmax = std::max(hmax, std::abs(v));
        }
    }
    const double stat_scale = std::max(alpha * hmax * amax, 1e-300);
    double res = 0.0;
    for (std::size_t l = 0; l < cfg.n_symbols; ++l) {
        double obj_scale = 0.0;
        for (const cplx& v : a.row(l)) {
            obj_scale += std::norm(v);
        }
        obj_scale = obj_scale > 0.0 ? obj_scale : 1.0;
        for (std::size_t k = 0; k < cfg.n_subcarriers; ++k) {
            const cplx r = alpha * y(l, k) - a(l, k);
            for (std::size_t n = 0; n < N; ++n) {
                const cplx st = alpha * std::conj(h(n, l, k)) * r + nu(n, l) * s_all[n](l, k);
                res = std::max(res, std::abs(st) / stat_scale);
            }
        }
        for (std::size_t n = 0; n < N; ++n) {
            double p = 0.0;
            for (const cplx& v : s_all[n].row(l)) {
                p += std::norm(v);
            }
            const double c = cfg.budget(n);
            res = std::max(res, std::max(0.0, p - c) / c);
            res = std::max(res, std::max(0.0, -nu(n, l)));
            res = std::max(res, std::abs(nu(n, l)) * std::abs(p - c) / obj_scale);
        }
    }
    return res;
}

double alpha_update(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                    const ChannelTensor& h, double sigma_e_sq) {
    const ComplexGrid a = reference_sum(t_all);
    const ComplexGrid y = faded_sum(s_all, h);
    double num = 0.0;
    double den = 2.0 * static_cast<double>(a.size()) * sigma_e_sq;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx yc = y.flat()[i];
        const cplx yr = a.flat()[i];
        num += yc.real() * yr.real() + yc.imag() * yr.imag();
        den += std::norm(yc);
    }
    if (!(den > 0.0)) {
        throw Error(Errc::DegenerateDenominator, "faded signal and noise are both zero");
    }
    return num / den;
}

IterativeOutcome iterative_allocate(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                    const SystemConfig& cfg, const IterativeSettings& settings) {
    settings.validate();
    const FixedAlphaQcqp qcqp(t_all, h, cfg);

    IterativeOutcome out;
    double alpha = 0.0;
    if (settings.alpha_init) {
        alpha = *settings.alpha_init;
    } else {
        const AllocationResult ssdt = ssdt_allocate(t_all, h, cfg);
        alpha = ssdt.alpha;
        out.allocation.fade_floor_hits = ssdt.fade_floor_hits;
    }

    double best_d2 = kInf;
    std::vector<ComplexGrid> best_s;
    double best_alpha = alpha;
    double prev_d2 = kInf;
    RealGrid warm;
    bool have_warm = false;
    for (int it = 0; it < settings.max_outer_iters; ++it) {
        QcqpSolution sol;
        bool solved = true;
        try {
            sol = qcqp.solve(alpha, have_warm ? &warm : nullptr, settings.kkt_tol);
        } catch (const SolverError& e) {
            sol = e.best();
            solved = false;
        }
        double next = alpha_update(sol.effective, t_all, h, cfg.sigma_e_sq);
        if (!(next > 0.0) || !std::isfinite(next)) {
            next = alpha;
        }
        const double d2 = d2_analytic(sol.effective, t_all, h, next, cfg.sigma_e_sq);
        out.trace.iterations.push_back({d2, next, sol.max_kkt_residual, sol.inner_iters});
        if (d2 <= best_d2) {
            best_d2 = d2;
            best_s = sol.effective;
            best_alpha = next;
        }
        if (!solved) {
            break;
        }
        if (std::abs(prev_d2 - d2) <= settings.outer_tol * d2) {
            out.trace.converged = true;
            break;
        }
        prev_d2 = d2;
        alpha = next;
        warm = std::move(sol.nu);
        have_warm = true;
    }

    out.allocation.effective = std::move(best_s);
    out.allocation.alpha = best_alpha;
    out.allocation.beta = compute_beta(cfg.power_budget);
    out.allocation.per_symbol_power = per_symbol_power(out.allocation.effective);
    return out;
}

}  // namespace ctsc
