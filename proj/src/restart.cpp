#include "vi/restart.hpp"

#include <cmath>

namespace vi {

double restart_radius_sq(double R0_sq, int p, double eps, double delta_u, double delta_pu, double mu)
{
    const double delta = eps / 4.0 + (delta_u + 2.0 * delta_pu) / mu;
    const double halving = std::ldexp(1.0, -p);
    return R0_sq * halving + 2.0 * (1.0 - halving) * delta;
}

int restart_stage_count(double R0_sq, double eps)
{
    const double threshold = std::log2(2.0 * R0_sq / eps);
    if (threshold < 1.0) {
        return 1;
    }
    return static_cast<int>(std::floor(threshold)) + 1;
}

RestartResult restart_solve(const InexactOracle& oracle, const FeasibleSet& set, double mu,
                            const ToleranceBudget& budget, const Point& x0, double R0_sq, double Omega,
                            const SolverOptions& options)
{
    if (!(mu > 0.0)) {
        throw ContractError("restart_solve: mu must be positive");
    }
    if (!(R0_sq > 0.0) || !(Omega > 0.0)) {
        throw ContractError("restart_solve: R0_sq and Omega must be positive");
    }
    budget.validate();
    require_same_dim(x0.size(), set.dim(), "restart_solve start point");
    if (!set.contains(x0, 1e-12)) {
        throw ContractError("restart_solve: start point outside the feasible set");
    }

    ToleranceBudget inner_budget = budget;
    inner_budget.eps = mu * budget.eps / 2.0;
    inner_budget.prox_tol = std::min(budget.prox_tol, inner_budget.eps / 8.0);
    const StoppingRule rule = StoppingRule::inverse_sum(Omega / mu);

    RestartResult out;
    out.stage_points.push_back(x0);
    out.radius_sq.push_back(R0_sq);

    SolverOptions stage_options = options;
    Point x_p = x0;
    const int stages = restart_stage_count(R0_sq, budget.eps);
    long inner_total = 0;
    for (int p = 0; p < stages; ++p) {
        const double R_p = std::sqrt(out.radius_sq.back());
        const ProxSetup setup = ProxSetup::recentered(x_p, R_p);
        SolveResult stage = solve(oracle, setup, set, inner_budget, rule, stage_options);

        inner_total += static_cast<long>(stage.trace.iterations());
        stage_options.M_init = stage.trace.records.back().M;
        x_p = stage.certificate.average;
        out.traces.push_back(std::move(stage.trace));
        out.stage_points.push_back(x_p);
        out.radius_sq.push_back(
            restart_radius_sq(R0_sq, p + 1, budget.eps, budget.delta_u, budget.delta_pu, mu));
    }

    out.x = x_p;
    out.state.p = stages;
    out.state.x_p = x_p;
    out.state.R_p_sq = out.radius_sq.back();
    out.state.inner_iterations = inner_total;
    return out;
}

long inner_iteration_bound(const HolderSpec& spec, double mu, double eps, double Omega, double R0_sq)
{
    spec.validate();
    if (!(mu > 0.0) || !(eps > 0.0) || !(Omega > 0.0) || !(R0_sq > 0.0)) {
        throw ContractError("inner_iteration_bound: arguments must be positive");
    }
    const double nu = spec.nu;
    const double per_stage = std::pow(spec.L_nu / mu, 2.0 / (1.0 + nu)) * std::pow(2.0, 2.0 / (1.0 + nu)) * Omega /
                             std::pow(eps, (1.0 - nu) / (1.0 + nu));
    const double bound = per_stage * std::log2(2.0 * R0_sq / eps);
    return bound <= 0.0 ? 0L : static_cast<long>(std::ceil(bound));
}

}  // namespace vi
