#include "vi/bench.hpp"

#include "vi/restart.hpp"
#include "vi/rng.hpp"

#include <atomic>
#include <chrono>
#include <limits>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace vi::bench {

std::string_view experiment_name(Experiment e)
{
    switch (e) {
    case Experiment::exp_operator:
        return "exp-operator";
    case Experiment::nonsmooth_saddle:
        return "nonsmooth-saddle";
    case Experiment::fermat_torricelli:
        return "fermat-torricelli";
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name)
{
    for (auto e : {Experiment::exp_operator, Experiment::nonsmooth_saddle, Experiment::fermat_torricelli}) {
        if (experiment_name(e) == name) {
            return e;
        }
    }
    return std::nullopt;
}

std::vector<Dimensions> ExperimentConfig::default_dimensions(Experiment e)
{
    switch (e) {
    case Experiment::exp_operator:
        return {{1000, 0, 0}, {10000, 0, 0}};
    case Experiment::nonsmooth_saddle:
        return {{100, 50, 0}};
    case Experiment::fermat_torricelli:
        return {{50, 10, 20}};
    }
    return {};
}

std::vector<double> ExperimentConfig::default_eps(Experiment e)
{
    switch (e) {
    case Experiment::exp_operator:
        return {1e-1, 5e-2, 1e-2, 5e-3, 1e-3, 5e-4, 1e-4};
    case Experiment::nonsmooth_saddle: {
        std::vector<double> out;
        for (int i : {0, 1, 2, 3, 5, 7, 9, 11, 13, 15, 18, 23, 31}) {
            out.push_back(1.0 / (2.0 * i + 2.0));
        }
        return out;
    }
    case Experiment::fermat_torricelli: {
        std::vector<double> out;
        // Desk-scale grid. With lambda_radius = 10 the certified rule needs roughly 4x more
        // iterations per halving of eps, so 1/16 and below are left to explicit configs.
        for (int i = 1; i <= 3; ++i) {
            out.push_back(std::ldexp(1.0, -i));
        }
        return out;
    }
    }
    return {};
}

std::vector<std::string> ExperimentConfig::violations() const
{
    std::vector<std::string> out;
    if (dimensions.empty()) {
        out.emplace_back("dimensions: at least one dimension tuple is required");
    }
    for (const auto& d : dimensions) {
        switch (experiment) {
        case Experiment::exp_operator:
            if (d.a < 2) {
                out.emplace_back("n: must be at least 2");
            }
            break;
        case Experiment::nonsmooth_saddle:
            if (d.a < 1 || d.b < 1) {
                out.emplace_back("p, q: must be positive");
            }
            break;
        case Experiment::fermat_torricelli:
            if (d.a < 1 || d.b < 0 || d.c < 1) {
                out.emplace_back("n, m, N: n and N must be positive, m non-negative");
            }
            break;
        }
    }
    if (eps.empty()) {
        out.emplace_back("eps: at least one accuracy is required");
    }
    for (double e : eps) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            out.emplace_back("eps: values must be positive and finite");
            break;
        }
    }
    if (trials < 1) {
        out.emplace_back("trials: must be at least 1");
    }
    if (!(search_factor > 1.0)) {
        out.emplace_back("search_factor: must exceed 1");
    }
    if (M_init && !(*M_init > 0.0)) {
        out.emplace_back("m_init: must be positive");
    }
    if (!(lambda_radius > 0.0)) {
        out.emplace_back("lambda_radius: must be positive");
    }
    if (!(x_radius > 0.0)) {
        out.emplace_back("x_radius: must be positive");
    }
    if (method == Method::restart) {
        if (experiment != Experiment::exp_operator) {
            out.emplace_back("method: restart is only available for exp-operator");
        }
        if (!(mu > 0.0)) {
            out.emplace_back("mu: restart needs a positive strong-monotonicity modulus");
        }
    }
    if (iteration_budget < 1) {
        out.emplace_back("max_iters: must be positive");
    }
    return out;
}

double exp_operator_lipschitz()
{
    return 2.0 * std::exp(std::sqrt(2.0));
}

double exp_operator_strong_monotonicity()
{
    return std::exp(-std::sqrt(2.0)) - std::exp(std::sqrt(2.0) - 3.0);
}

VIInstance gen_exp_operator(long n)
{
    if (n < 2) {
        throw ContractError("gen_exp_operator: n must be at least 2");
    }
    Operator g = [](const Point& x) -> DualVector {
        const Eigen::Index dim = x.size();
        const double coupling = std::exp(-3.0);
        DualVector out(dim);
        for (Eigen::Index i = 0; i + 1 < dim; ++i) {
            out[i] = std::exp(x[i] + coupling * x[i + 1]);
        }
        out[dim - 1] = std::exp(x[dim - 1] + coupling * x[0]);
        return out;
    };
    return {std::move(g), FeasibleSet::unit_ball(n), Point::Constant(n, 1.0 / static_cast<double>(n)),
            HolderSpec{1.0, exp_operator_lipschitz()}};
}

NonsmoothSaddle gen_nonsmooth_saddle(long p, long q, std::uint64_t seed)
{
    if (p < 1 || q < 1) {
        throw ContractError("gen_nonsmooth_saddle: p and q must be positive");
    }
    Rng rng(seed);
    Matrix A(q, p);
    for (long i = 0; i < q; ++i) {
        for (long j = 0; j < p; ++j) {
            A(i, j) = rng.normal();
        }
    }
    Vector b(q);
    for (long i = 0; i < q; ++i) {
        b[i] = static_cast<double>(rng.integer(-10, 10));
    }
    const Vector alpha = Vector::Constant(p, 0.1 / std::sqrt(static_cast<double>(p)));
    const Vector beta = Vector::Constant(q, -0.1 / std::sqrt(static_cast<double>(q)));

    SaddleProblem sp{
        [A, alpha](const Vector& u, const Vector& v) -> Vector {
            return distance_subgradient(u, alpha) + A.transpose() * v;
        },
        [A, b, beta](const Vector& u, const Vector& v) -> Vector {
            return A * u - b - distance_subgradient(v, beta);
        },
        [A, b, alpha, beta](const Vector& u, const Vector& v) {
            return (u - alpha).norm() + (A * u - b).dot(v) - (v - beta).norm();
        },
        FeasibleSet::unit_ball(p),
        FeasibleSet::unit_ball(q),
        SaddleProblem::NormMode::l2_product,
    };

    Eigen::JacobiSVD<Matrix> svd(A);
    const double spectral = svd.singularValues()(0);
    return {std::move(sp), std::move(A), std::move(b), alpha, beta,
            std::sqrt(2.0) * (2.0 + 2.0 * spectral)};
}

FermatTorricelli gen_fts(long n, long m, long N, std::uint64_t seed, double lambda_radius, double x_radius)
{
    if (n < 1 || m < 0 || N < 1) {
        throw ContractError("gen_fts: need n, N >= 1 and m >= 0");
    }
    Rng rng(seed);
    Matrix anchors(n, N);
    for (long k = 0; k < N; ++k) {
        for (long i = 0; i < n; ++i) {
            anchors(i, k) = rng.normal();
        }
    }
    Matrix coeff(m, n);
    for (long r = 0; r < m; ++r) {
        for (long i = 0; i < n; ++i) {
            coeff(r, i) = std::abs(rng.normal());
        }
    }

    ConstrainedProblem cp;
    cp.objective = [anchors](const Vector& x) {
        return (anchors.colwise() - x).colwise().norm().sum();
    };
    cp.objective_subgradient = [anchors](const Vector& x) -> Vector {
        Vector g = Vector::Zero(x.size());
        for (Eigen::Index k = 0; k < anchors.cols(); ++k) {
            g += distance_subgradient(x, anchors.col(k));
        }
        return g;
    };
    for (long r = 0; r < m; ++r) {
        const Vector row = coeff.row(r).transpose();
        cp.constraints.push_back({
            [row](const Vector& x) { return row.dot(x.cwiseAbs()) - 1.0; },
            [row](const Vector& x) -> Vector {
                // sign(0) = 0 selects the zero subgradient of |x_i| at the kink.
                return row.cwiseProduct(x.unaryExpr([](double t) { return double((t > 0.0) - (t < 0.0)); }));
            },
        });
    }
    cp.lambda_radius = lambda_radius;
    cp.slater_point = Point::Zero(n);

    SaddleProblem sp = lagrangian_saddle(cp, FeasibleSet::ball(Point::Zero(n), x_radius));
    const Point start = Point::Constant(n + m, 1.0 / std::sqrt(static_cast<double>(n + m)));
    return {std::move(cp), std::move(sp), std::move(anchors), std::move(coeff), start};
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, const Dimensions& dims, int trial)
{
    return mix_seed(cfg.seed, {hash_label(experiment_name(cfg.experiment)), static_cast<std::uint64_t>(dims.a),
                               static_cast<std::uint64_t>(dims.b), static_cast<std::uint64_t>(dims.c),
                               static_cast<std::uint64_t>(trial)});
}

VIInstance make_instance(const ExperimentConfig& cfg, const Dimensions& dims, std::uint64_t seed)
{
    switch (cfg.experiment) {
    case Experiment::exp_operator:
        return gen_exp_operator(dims.a);
    case Experiment::nonsmooth_saddle: {
        auto inst = gen_nonsmooth_saddle(dims.a, dims.b, seed);
        const Point start = Point::Zero(dims.a + dims.b);
        return {make_vi_operator(inst.problem), inst.problem.product_set(), start,
                HolderSpec{0.0, inst.variation_bound}, inst.problem.norm_pair()};
    }
    case Experiment::fermat_torricelli: {
        auto inst = gen_fts(dims.a, dims.b, dims.c, seed, cfg.lambda_radius, cfg.x_radius);
        return {make_vi_operator(inst.problem), inst.problem.product_set(), inst.start, std::nullopt,
                inst.problem.norm_pair()};
    }
    }
    throw ContractError("make_instance: unknown experiment");
}

ResultRow run_single(const ExperimentConfig& cfg, const Dimensions& dims, double eps, int trial)
{
    ResultRow row;
    row.experiment = std::string(experiment_name(cfg.experiment));
    row.dim_a = dims.a;
    row.dim_b = dims.b;
    row.dim_c = dims.c;
    row.eps = eps;
    row.trial = trial;
    row.seed = trial_seed(cfg, dims, trial);

    const auto started = std::chrono::steady_clock::now();
    try {
        const VIInstance inst = make_instance(cfg, dims, row.seed);
        const InexactOracle oracle = exact_oracle(inst.g, inst.holder);
        SolverOptions options;
        options.search_factor = cfg.search_factor;
        options.M_init = cfg.M_init;
        options.keep_iterates = false;
        options.iteration_budget = cfg.iteration_budget;
        options.norm = inst.norm;

        if (cfg.method == ExperimentConfig::Method::restart) {
            const double R0 = inst.start.norm() + 1.0;
            const auto res = restart_solve(oracle, inst.Q, cfg.mu, ToleranceBudget{eps}, inst.start, R0 * R0,
                                           omega_bound(ProxSetup::euclidean(), inst.Q), options);
            row.iterations = res.state.inner_iterations;
            for (const auto& t : res.traces) {
                row.oracle_calls += t.total_oracle_calls();
            }
            row.final_gap = std::numeric_limits<double>::quiet_NaN();
            row.converged = true;
        } else {
            const ProxSetup setup = ProxSetup::euclidean(inst.start);
            const StoppingRule rule = StoppingRule::certified(bregman_radius_bound(setup, inst.Q));
            const SolveResult res = solve(oracle, setup, inst.Q, ToleranceBudget{eps}, rule, options);
            row.iterations = static_cast<long>(res.trace.iterations());
            row.oracle_calls = res.trace.total_oracle_calls();
            row.final_gap = res.certificate.gap_value;
            row.converged = res.converged;
        }
    } catch (const DivergenceError&) {
        row.converged = false;
        row.final_gap = std::numeric_limits<double>::quiet_NaN();
    }
    row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return row;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, int jobs)
{
    const auto problems = cfg.violations();
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "run_experiment: invalid config:";
        for (const auto& p : problems) {
            msg << "\n  " << p;
        }
        throw ConfigurationError(msg.str());
    }

    struct Cell {
        Dimensions dims;
        double eps;
        int trial;
    };
    std::vector<Cell> cells;
    for (const auto& d : cfg.dimensions) {
        for (double e : cfg.eps) {
            for (int t = 0; t < cfg.trials; ++t) {
                cells.push_back({d, e, t});
            }
        }
    }

    std::vector<ResultRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            rows[i] = run_single(cfg, cells[i].dims, cells[i].eps, cells[i].trial);
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    return rows;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw ContractError("fit_line: need at least two paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw ContractError("fit_line: x values are all equal");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace vi::bench
