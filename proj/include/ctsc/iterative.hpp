#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ctsc/channel.hpp"
#include "ctsc/core_model.hpp"
#include "ctsc/error.hpp"
#include "ctsc/ssdt.hpp"

namespace ctsc {

struct IterativeSettings {
    int max_outer_iters = 50;
    double kkt_tol = 1e-8;
    double outer_tol = 1e-6;             // relative change of d2 between outer iterations
    std::optional<double> alpha_init;    // default: the closed-form (SSDT) alpha

    void validate() const;
};

struct IterationRecord {
    double d2 = 0.0;
    double alpha = 0.0;
    double max_kkt_residual = 0.0;
    int inner_iters = 0;
};

struct IterativeTrace {
    std::vector<IterationRecord> iterations;
    bool converged = false;
};

/// Solution of the fixed-alpha subproblem
///   min_s sum_{l,k} |alpha * sum_n h s - sum_n t|^2  s.t.  sum_k |s_{n,l,k}|^2 <= budget(n).
struct QcqpSolution {
    std::vector<ComplexGrid> effective;  // N grids, L x K
    RealGrid nu;                         // N x L, multipliers of the power constraints
    double max_kkt_residual = 0.0;
    int inner_iters = 0;
};

/// Thrown when the fixed-alpha solve misses its KKT tolerance. Carries the
/// best iterate found.
class SolverError : public Error {
public:
    SolverError(const std::string& what, QcqpSolution best)
        : Error(Errc::SolverDidNotConverge, what), best_(std::move(best)) {}

    const QcqpSolution& best() const noexcept { return best_; }
    double residual() const noexcept { return best_.max_kkt_residual; }

private:
    QcqpSolution best_;
};

/// Fixed-alpha power allocation subproblem, decomposed per OFDM symbol.
///
/// For each symbol the channel-only quantities are precomputed once: the
/// smallest alpha^2 at which exact zero forcing fits every budget (found as a
/// min-max over users), and the weights achieving it. solve() then either
/// returns that zero-forcing point (alpha large enough, objective 0) or
/// maximises the concave dual over the N constraint multipliers with a damped
/// Newton method, which is exact because every constraint is active there.
class FixedAlphaQcqp {
public:
    FixedAlphaQcqp(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                   const SystemConfig& cfg);

    /// warm_nu: optional N x L multipliers from a previous solve.
    QcqpSolution solve(double alpha, const RealGrid* warm_nu = nullptr,
                       double kkt_tol = 1e-8) const;

    /// Smallest alpha^2 admitting exact zero forcing on symbol l (may be +inf).
    double zero_forcing_alpha_sq(std::size_t l) const { return symbols_[l].zf_alpha_sq; }

    std::size_t n_users() const noexcept { return n_users_; }
    std::size_t n_symbols() const noexcept { return symbols_.size(); }
    std::size_t n_subcarriers() const noexcept { return n_subcarriers_; }

private:
    struct Symbol {
        std::vector<cplx> target;   // K, reference sum for this symbol
        std::vector<double> a2;     // K, |target|^2
        std::vector<cplx> h;        // N*K, user-major
        std::vector<double> g;      // N*K, |h|^2
        std::vector<double> zf_weight;  // N, simplex weights of the min-max zero-forcing point
        double zf_alpha_sq = 0.0;
    };

    void prepare_zero_forcing(Symbol& sym) const;

    std::size_t n_users_ = 0;
    std::size_t n_subcarriers_ = 0;
    std::vector<double> budget_;
    std::vector<Symbol> symbols_;
};

QcqpSolution qcqp_solve_fixed_alpha(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                    const SystemConfig& cfg, double alpha,
                                    const RealGrid* warm_nu = nullptr, double kkt_tol = 1e-8);

/// KKT residual of a candidate (s, nu) for the fixed-alpha subproblem:
/// max of scaled stationarity, relative budget violation and scaled
/// complementary slackness.
double qcqp_kkt_residual(std::span<const ComplexGrid> s_all, const RealGrid& nu,
                         std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                         const SystemConfig& cfg, double alpha);

/// Minimiser of d2 over alpha with the allocation held fixed.
double alpha_update(std::span<const ComplexGrid> s_all, std::span<const TransmitBlock> t_all,
                    const ChannelTensor& h, double sigma_e_sq);

struct IterativeOutcome {
    AllocationResult allocation;
    IterativeTrace trace;
};

/// Alternates the fixed-alpha subproblem and the alpha update until d2
/// stalls or the iteration cap is hit. The best iterate is always returned;
/// trace.converged tells whether the stopping rule fired.
IterativeOutcome iterative_allocate(std::span<const TransmitBlock> t_all, const ChannelTensor& h,
                                    const SystemConfig& cfg,
                                    const IterativeSettings& settings = {});

}  // namespace ctsc
