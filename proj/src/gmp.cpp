#include "vi/gmp.hpp"

#include <algorithm>
#include <sstream>

namespace vi {

namespace {

// Floor on M_k; a zero operator otherwise drives M to denormals.
constexpr double kMinM = 1e-200;

double squared(const NormPair& np, const Vector& x)
{
    const double n = norm(np, x);
    return n * n;
}

// Running sums behind the certificate. Keeps memory O(n) regardless of
// how many iterations are accepted.
struct CertificateAccumulator {
    explicit CertificateAccumulator(Eigen::Index n) : sum_w(Vector::Zero(n)), sum_g(Vector::Zero(n)) {}

    void add(const Point& w, const DualVector& gw, double weight)
    {
        sum_w += weight * w;
        sum_g += weight * gw;
        pairing += weight * gw.dot(w);
        inverse_sum += weight;
    }

    Certificate finish(const FeasibleSet& set) const
    {
        Certificate c;
        c.inverse_sum = inverse_sum;
        if (inverse_sum <= 0.0) {
            return c;
        }
        c.average = sum_w / inverse_sum;
        c.averaged_dual = sum_g / inverse_sum;
        c.gap_value = (pairing + support_max(set, -sum_g).value) / inverse_sum;
        return c;
    }

    Vector sum_w;
    Vector sum_g;
    double pairing = 0.0;
    double inverse_sum = 0.0;
};

}  // namespace

void StoppingRule::validate() const
{
    switch (kind) {
    case Kind::max_outer_iters:
        if (max_iters < 1) {
            throw ContractError("stopping rule: iteration count must be positive");
        }
        break;
    case Kind::certified_gap:
        if (!(D_bound > 0.0)) {
            throw ContractError("stopping rule: D bound must be positive");
        }
        break;
    case Kind::inverse_sum_target:
        if (!(target > 0.0)) {
            throw ContractError("stopping rule: inverse-sum target must be positive");
        }
        break;
    }
}

bool StoppingRule::satisfied(long iterations, double inverse_sum, double eps) const
{
    switch (kind) {
    case Kind::max_outer_iters:
        return iterations >= max_iters;
    case Kind::certified_gap:
        return inverse_sum > 0.0 && D_bound / inverse_sum <= eps / 2.0;
    case Kind::inverse_sum_target:
        return inverse_sum >= target;
    }
    return false;
}

bool check_condition(const DualVector& gw, const DualVector& gz, const Point& w, const Point& z_next,
                     const Point& z, double M, double eps, double delta_u, const NormPair& norm)
{
    if (!(M > 0.0)) {
        throw ContractError("check_condition: M must be positive");
    }
    const double lhs = (gw - gz).dot(w - z_next);
    const double rhs = 0.5 * M * (squared(norm, w - z) + squared(norm, w - z_next)) + 0.5 * eps + delta_u;
    return lhs <= rhs;
}

double initial_M_estimate(const InexactOracle& oracle, const FeasibleSet& set, double delta_c,
                          const NormPair& np)
{
    const Eigen::Index n = set.dim();
    const Point p1 = set.project(Point::Unit(n, 0));
    const Point p2 = set.project(n > 1 ? Point(Point::Unit(n, 1)) : Point(-Point::Unit(n, 0)));
    const double dist = norm(np, p1 - p2);
    if (dist == 0.0) {
        return 1.0;
    }
    const double estimate = dual_norm(np, oracle.evaluate(p1, delta_c) - oracle.evaluate(p2, delta_c)) / dist;
    return (estimate > 0.0 && std::isfinite(estimate)) ? estimate : 1.0;
}

SolveResult solve(const InexactOracle& oracle, const ProxSetup& setup, const FeasibleSet& set,
                  const ToleranceBudget& budget, const StoppingRule& rule, const SolverOptions& options)
{
    budget.validate();
    rule.validate();
    require_compatible(setup, set);
    if (!(options.search_factor > 1.0)) {
        throw ContractError("solve: search factor must exceed 1");
    }
    if (options.max_trials < 1 || options.iteration_budget < 1) {
        throw ContractError("solve: max_trials and iteration_budget must be positive");
    }

    const double eps = budget.eps;
    const double delta_c = options.half_eps_controlled_error ? eps / 2.0 : eps / 4.0;
    if (budget.prox_tol > eps / 8.0) {
        throw ContractError("solve: controlled prox error above eps/8");
    }
    const double prox_tol = (budget.prox_tol > 0.0 ? budget.prox_tol : eps / 8.0) + budget.delta_pu;
    const double a = options.search_factor;

    SolveResult result;
    result.M_init = options.M_init ? *options.M_init : initial_M_estimate(oracle, set, delta_c, options.norm);
    if (!(result.M_init > 0.0) || !std::isfinite(result.M_init)) {
        throw ContractError("solve: M_init must be positive and finite");
    }

    Point z = prox_center(setup, set);
    result.z0 = z;
    CertificateAccumulator acc(set.dim());
    double M_prev = result.M_init;

    long k = 0;
    while (true) {
        const DualVector gz = oracle.evaluate(z, delta_c);
        require_finite(gz, "oracle value");

        int trials = 0;
        double M = M_prev / a;
        Point w, z_next;
        DualVector gw;
        while (true) {
            if (trials == options.max_trials) {
                std::ostringstream msg;
                msg << "solve: line search did not terminate after " << trials << " trials at iteration " << k
                    << " (last M = " << M / a << "); the oracle does not conform";
                throw DivergenceError(msg.str(), M / a);
            }
            M = std::max(M, kMinM);
            w = prox_map(setup, set, z, gz, M, prox_tol);
            gw = oracle.evaluate(w, delta_c);
            require_finite(gw, "oracle value");
            z_next = prox_map(setup, set, z, gw, M, prox_tol);
            ++trials;
            if (check_condition(gw, gz, w, z_next, z, M, eps, oracle.delta_u(), options.norm)) {
                break;
            }
            M *= a;
        }

        const double weight = 1.0 / M;
        acc.add(w, gw, weight);

        IterationRecord rec;
        rec.M = M;
        rec.inner_trials = trials;
        // Two oracle calls per trial, g~(z_k) and g~(w_k). g~(z_k) is cached
        // across the trials of one iteration since z_k does not change.
        rec.oracle_calls = 2L * trials;
        rec.cumulative_inverse = acc.inverse_sum;
        if (options.keep_iterates) {
            rec.w = w;
            rec.gw = gw;
            result.certificate.iterates.push_back(w);
            result.certificate.weights.push_back(weight);
        }
        result.trace.records.push_back(std::move(rec));

        z = std::move(z_next);
        M_prev = M;
        ++k;

        if (rule.satisfied(k, acc.inverse_sum, eps)) {
            result.converged = true;
            break;
        }
        if (k >= options.iteration_budget) {
            break;
        }
    }

    Certificate finished = acc.finish(set);
    finished.iterates = std::move(result.certificate.iterates);
    finished.weights = std::move(result.certificate.weights);
    result.certificate = std::move(finished);
    result.z_last = std::move(z);
    return result;
}

double gap_certificate(const SolveTrace& trace, std::span<const DualVector> values, const FeasibleSet& set)
{
    if (trace.records.empty()) {
        throw ContractError("gap_certificate: empty trace");
    }
    if (values.size() != trace.records.size()) {
        throw ContractError("gap_certificate: one oracle value per iterate required");
    }
    double S = 0.0;
    double pairing = 0.0;
    Vector sum_g = Vector::Zero(set.dim());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& rec = trace.records[i];
        if (rec.w.size() == 0) {
            throw ContractError("gap_certificate: trace was recorded without iterates");
        }
        const double weight = 1.0 / rec.M;
        S += weight;
        pairing += weight * values[i].dot(rec.w);
        sum_g += weight * values[i];
    }
    return (pairing + support_max(set, -sum_g).value) / S;
}

double gap_certificate(const SolveTrace& trace, const FeasibleSet& set)
{
    std::vector<DualVector> values;
    values.reserve(trace.records.size());
    for (const auto& rec : trace.records) {
        values.push_back(rec.gw);
    }
    return gap_certificate(trace, values, set);
}

Point average(std::span<const Point> points, std::span<const double> weights)
{
    if (points.empty()) {
        throw ContractError("average: empty input");
    }
    if (points.size() != weights.size()) {
        throw ContractError("average: points and weights differ in length");
    }
    Point sum = Point::Zero(points.front().size());
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(weights[i] > 0.0)) {
            throw ContractError("average: weights must be positive");
        }
        require_same_dim(points[i].size(), sum.size(), "average");
        sum += weights[i] * points[i];
        total += weights[i];
    }
    return sum / total;
}

}  // namespace vi
