#pragma once

#include "vi/gmp.hpp"
#include "vi/oracle.hpp"
#include "vi/saddle.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vi::bench {

enum class Experiment { exp_operator, nonsmooth_saddle, fermat_torricelli };

std::string_view experiment_name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

/// Problem sizes. exp-operator uses (n); nonsmooth-saddle (p, q); fermat-torricelli (n, m, N).
struct Dimensions {
    long a = 0;
    long b = 0;
    long c = 0;

    auto operator<=>(const Dimensions&) const = default;
};

struct ExperimentConfig {
    enum class Method { gmp, restart };

    Experiment experiment = Experiment::exp_operator;
    std::vector<Dimensions> dimensions;
    std::vector<double> eps;
    std::uint64_t seed = 42;
    int trials = 1;
    double search_factor = 2.0;
    std::optional<double> M_init;  // unset: difference-quotient recipe
    double lambda_radius = 10.0;   // fermat-torricelli multiplier bound
    double x_radius = 1.0;         // fermat-torricelli primal ball
    Method method = Method::gmp;
    double mu = 0.0;               // restart only
    long iteration_budget = 200000;

    /// Every violated constraint, named by field. Empty means valid.
    std::vector<std::string> violations() const;
    /// Sizes used when a config names an experiment but no dimensions.
    static std::vector<Dimensions> default_dimensions(Experiment e);
    static std::vector<double> default_eps(Experiment e);
};

struct ResultRow {
    std::string experiment;
    long dim_a = 0;
    long dim_b = 0;
    long dim_c = 0;
    double eps = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    long iterations = 0;
    long oracle_calls = 0;
    double final_gap = 0.0;
    bool converged = false;
    double wall_time_s = 0.0;

    bool operator==(const ResultRow&) const = default;
};

/// A VI ready to hand to the solver. The prox-function is centred at `start`.
struct VIInstance {
    Operator g;
    FeasibleSet Q;
    Point start;
    std::optional<HolderSpec> holder;  // known smoothness, when available
    NormPair norm = NormPair::euclidean();
};

// Lipschitz constant 2 exp(sqrt 2) of the cyclic exponential operator on the unit ball.
double exp_operator_lipschitz();
// exp(-sqrt 2) - exp(sqrt 2 - 3): strong-monotonicity modulus of the same operator.
double exp_operator_strong_monotonicity();

/// [g(x)]_i = exp(x_i + x_{i+1} / e^3) with x_{n+1} = x_1, on the unit ball, start (1/n, ..., 1/n).
VIInstance gen_exp_operator(long n);

struct NonsmoothSaddle {
    SaddleProblem problem;
    Matrix A;  // q x p
    Vector b, alpha, beta;
    /// sqrt(2) (2 + 2 ||A||_2): nu = 0 constant in the Euclidean product norm.
    double variation_bound;
};

/// f(u, v) = ||u - alpha|| + <A u - b, v> - ||v - beta|| on unit balls.
/// Draw order: A row by row from N(0,1), then b uniform on the integers of [-10, 10].
NonsmoothSaddle gen_nonsmooth_saddle(long p, long q, std::uint64_t seed);

struct FermatTorricelli {
    ConstrainedProblem constrained;
    SaddleProblem problem;
    Matrix anchors;       // n x N
    Matrix coefficients;  // m x n, entries |N(0,1)|
    Point start;          // (1/sqrt(n+m)) * ones
};

/// sum_k ||x - A_k|| subject to sum_i alpha_pi |x_i| - 1 <= 0, compactified onto
/// ||x|| <= x_radius and the non-negative lambda ball of radius lambda_radius.
/// Draw order: anchors column by column, then coefficients row by row.
FermatTorricelli gen_fts(long n, long m, long N, std::uint64_t seed, double lambda_radius,
                         double x_radius = 1.0);

/// Builds the solver-ready instance for one (dimensions, trial seed).
VIInstance make_instance(const ExperimentConfig& cfg, const Dimensions& dims, std::uint64_t trial_seed);

/// Seed of trial `trial` for the given experiment and dimensions.
std::uint64_t trial_seed(const ExperimentConfig& cfg, const Dimensions& dims, int trial);

/// One solver run on an instance, timed.
ResultRow run_single(const ExperimentConfig& cfg, const Dimensions& dims, double eps, int trial);

/// Every (dimension, eps, trial) cell, ordered by config position. Divergent trials are
/// reported as non-converged rows. `jobs` worker threads share the cells.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, int jobs = 1);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace vi::bench
