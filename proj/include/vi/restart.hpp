#pragma once

#include "vi/gmp.hpp"

namespace vi {

struct RestartState {
    int p = 0;                   // completed restarts
    Point x_p;
    double R_p_sq = 0.0;
    long inner_iterations = 0;   // cumulative over all stages
};

struct RestartResult {
    Point x;
    RestartState state;
    std::vector<SolveTrace> traces;     // one per stage
    std::vector<Point> stage_points;    // x_0, x_1, ..., x_P
    std::vector<double> radius_sq;      // R_0^2, R_1^2, ..., R_P^2
};

/// R_p^2 = R_0^2 2^-p + 2 (1 - 2^-p) Delta with Delta = eps/4 + (delta_u + 2 delta_pu) / mu.
double restart_radius_sq(double R0_sq, int p, double eps, double delta_u, double delta_pu, double mu);

/// Number of stages run: the smallest p >= 1 with p > log2(2 R_0^2 / eps).
int restart_stage_count(double R0_sq, double eps);

/// Restarted mirror prox for a mu-strongly monotone operator, Euclidean prox-function.
///
/// Stage p runs solve() with accuracy mu*eps/2, prox-function recentred at x_p
/// and stopping rule S_k >= Omega / mu; its weighted average becomes x_{p+1}.
/// The caller guarantees ||x0 - x*||^2 <= R0_sq. Later stages start their line
/// search from the last accepted M of the previous stage.
RestartResult restart_solve(const InexactOracle& oracle, const FeasibleSet& set, double mu,
                            const ToleranceBudget& budget, const Point& x0, double R0_sq, double Omega,
                            const SolverOptions& options = {});

/// ceil((L_nu/mu)^(2/(1+nu)) 2^(2/(1+nu)) Omega / eps^((1-nu)/(1+nu)) * log2(2 R0^2 / eps)), floored at 0.
long inner_iteration_bound(const HolderSpec& spec, double mu, double eps, double Omega, double R0_sq);

}  // namespace vi
