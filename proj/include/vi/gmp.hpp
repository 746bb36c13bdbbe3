#pragma once

#include "vi/core.hpp"
#include "vi/oracle.hpp"
#include "vi/prox.hpp"

#include <optional>
#include <span>

namespace vi {

/// When the outer loop of the mirror-prox solver stops.
struct StoppingRule {
    enum class Kind {
        max_outer_iters,     // after K accepted iterations
        certified_gap,       // once D / S_k <= eps / 2
        inverse_sum_target,  // once S_k >= T
    };

    Kind kind = Kind::certified_gap;
    long max_iters = 0;
    double D_bound = 0.0;
    double target = 0.0;

    static StoppingRule iterations(long K) { return {Kind::max_outer_iters, K, 0.0, 0.0}; }
    static StoppingRule certified(double D) { return {Kind::certified_gap, 0, D, 0.0}; }
    static StoppingRule inverse_sum(double T) { return {Kind::inverse_sum_target, 0, 0.0, T}; }

    void validate() const;
    bool satisfied(long iterations, double inverse_sum, double eps) const;
};

struct SolverOptions {
    /// Line-search factor a > 1: trials use M = a^(i-1) M_prev for i = 0, 1, ...
    double search_factor = 2.0;
    /// Initial guess M_{-1}; when unset, a difference quotient at two unit points.
    std::optional<double> M_init;
    int max_trials = 60;
    /// Hard cap on accepted iterations; a run hitting it is flagged not converged.
    long iteration_budget = 1'000'000;
    /// Use delta_c = eps/2 (exact-prox universal variant) instead of eps/4.
    bool half_eps_controlled_error = false;
    /// Keep w_i and g~(w_i) in the trace. Costs O(n) memory per iteration.
    bool keep_iterates = true;
    /// Norm used in the acceptance test of the line search.
    NormPair norm = NormPair::euclidean();
};

/// Weighted-average output of a run and its computable gap.
struct Certificate {
    std::vector<Point> iterates;  // empty unless iterates were kept
    std::vector<double> weights;  // M_i^{-1}, same retention rule
    double inverse_sum = 0.0;     // S_k
    Point average;                // w^_k
    DualVector averaged_dual;     // (1/S_k) sum M_i^{-1} g~(w_i)
    double gap_value = 0.0;
};

struct SolveResult {
    Certificate certificate;
    SolveTrace trace;
    bool converged = false;
    double M_init = 0.0;
    Point z0;
    Point z_last;
};

/// Acceptance test of one line-search trial:
/// <gw - gz, w - z_next> <= (M/2)(||w - z||^2 + ||w - z_next||^2) + eps/2 + delta_u.
bool check_condition(const DualVector& gw, const DualVector& gz, const Point& w, const Point& z_next,
                     const Point& z, double M, double eps, double delta_u,
                     const NormPair& norm = NormPair::euclidean());

/// Adaptive generalized mirror prox.
///
/// Starts from z_0 = argmin_Q d. Each outer iteration evaluates g~(z_k), then
/// tries M = a^(i-1) M_{k-1} for i = 0, 1, ... until the acceptance test
/// passes, doing the two prox steps
///   w_k     = prox(z_k, g~(z_k), M)
///   z_{k+1} = prox(z_k, g~(w_k), M)
/// per trial. Throws DivergenceError when a single line search exceeds
/// options.max_trials.
SolveResult solve(const InexactOracle& oracle, const ProxSetup& setup, const FeasibleSet& set,
                  const ToleranceBudget& budget, const StoppingRule& rule, const SolverOptions& options = {});

/// (1/S_k) [sum M_i^{-1} <g_i, w_i> + max_{u in Q} <-sum M_i^{-1} g_i, u>].
double gap_certificate(const SolveTrace& trace, std::span<const DualVector> values, const FeasibleSet& set);
/// Same, reading g~(w_i) from the trace (requires kept iterates).
double gap_certificate(const SolveTrace& trace, const FeasibleSet& set);

/// Normalized weighted mean.
Point average(std::span<const Point> points, std::span<const double> weights);

/// ||g~(p1) - g~(p2)||_* / ||p1 - p2|| at the projections of e_1 and e_2 onto Q.
double initial_M_estimate(const InexactOracle& oracle, const FeasibleSet& set, double delta_c,
                          const NormPair& norm = NormPair::euclidean());

}  // namespace vi
