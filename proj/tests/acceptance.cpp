// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "vi/bench.hpp"
#include "vi/checks.hpp"
#include "vi/report.hpp"
#include "vi/restart.hpp"
#include "vi/saddle.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace vi;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct HolderRun {
    std::string name;
    InexactOracle oracle;
    FeasibleSet Q;
    ProxSetup setup;
    HolderSpec spec;
    std::vector<double> eps;
};

std::vector<HolderRun> holder_fixtures()
{
    const auto exp = bench::gen_exp_operator(1000);
    const auto sp = bench::gen_nonsmooth_saddle(100, 50, 42);
    return {
        {"exp-operator n=1000", exact_oracle(exp.g), exp.Q, ProxSetup::euclidean(exp.start), *exp.holder,
         {1e-1, 5e-2, 1e-2, 1e-3}},
        {"nonsmooth-saddle 100x50", exact_oracle(make_vi_operator(sp.problem)), sp.problem.product_set(),
         ProxSetup::euclidean(), HolderSpec{0.0, sp.variation_bound}, {0.5, 0.25, 0.125}},
    };
}

SolveResult certified_solve(const InexactOracle& o, const ProxSetup& setup, const FeasibleSet& Q, double eps)
{
    return solve(o, setup, Q, ToleranceBudget{eps}, StoppingRule::certified(bregman_radius_bound(setup, Q)));
}

Outcome certificate_inequality()
{
    struct Case {
        std::string name;
        InexactOracle oracle;
        FeasibleSet Q;
        ProxSetup setup;
        std::vector<double> eps;
    };
    std::vector<Case> cases;
    for (auto& h : holder_fixtures()) {
        cases.push_back({h.name, h.oracle, h.Q, h.setup, h.eps});
    }
    {
        // Monotone affine operator on the simplex: skew part plus identity.
        Matrix B(5, 5);
        Rng rng(7);
        for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = rng.normal();
        const Matrix G = (B - B.transpose()) + Matrix::Identity(5, 5);
        const Vector r = rng.normal_vector(5);
        cases.push_back({"affine on simplex, entropy",
                         exact_oracle([G, r](const Point& x) -> DualVector { return G * x + r; }),
                         FeasibleSet::simplex(5), ProxSetup::entropy(), {1e-1, 1e-2, 1e-3}});
    }
    {
        const auto f = bench::gen_fts(10, 3, 5, 11, 10.0);
        cases.push_back({"fermat-torricelli 10x3x5", exact_oracle(make_vi_operator(f.problem)),
                         f.problem.product_set(), ProxSetup::euclidean(f.start), {1.0, 0.5}});
    }

    bool ok = true;
    int solves = 0;
    double worst = -1e300;
    for (const auto& c : cases) {
        const double D = bregman_radius_bound(c.setup, c.Q);
        for (double eps : c.eps) {
            const auto res = certified_solve(c.oracle, c.setup, c.Q, eps);
            const double gap = gap_certificate(res.trace, c.Q);
            const double bound = D / res.trace.inverse_sum() + eps / 2.0;
            ok = ok && res.converged && gap <= bound + 1e-9;
            worst = std::max(worst, gap - bound);
            ++solves;
        }
    }
    std::ostringstream os;
    os << solves << " solves, max(gap - bound) = " << worst;
    return {ok, os.str()};
}

Outcome universality_ceiling()
{
    bool ok = true;
    std::ostringstream os;
    for (const auto& h : holder_fixtures()) {
        for (double eps : h.eps) {
            const auto res = certified_solve(h.oracle, h.setup, h.Q, eps);
            const double ceiling = std::max(2.0 * holder_L(h.spec, eps / 2.0), 2.0 * res.M_init);
            ok = ok && res.trace.max_M() <= ceiling;
            if (h.name.starts_with("exp") && eps == 1e-2) {
                const double fixed = 2.0 * bench::exp_operator_lipschitz();
                ok = ok && res.trace.max_M() <= fixed;
                os << "exp eps=1e-2 max M = " << res.trace.max_M() << " <= " << fixed << "; ";
            }
        }
    }
    os << "all runs within max(2 L(eps/2), 2 M_init)";
    return {ok, os.str()};
}

std::vector<bench::ResultRow> exp_grid_rows()
{
    bench::ExperimentConfig cfg;
    cfg.experiment = bench::Experiment::exp_operator;
    cfg.dimensions = {{1000}, {10000}};
    cfg.eps = {1e-1, 5e-2, 1e-2, 1e-3};
    return bench::run_experiment(cfg);
}

Outcome dimension_independence(const std::vector<bench::ResultRow>& rows)
{
    const std::size_t half = rows.size() / 2;
    bool ok = rows.size() == 8;
    std::ostringstream os;
    for (std::size_t i = 0; ok && i < half; ++i) {
        ok = ok && rows[i].converged && rows[i + half].converged && rows[i].iterations == rows[i + half].iterations;
        os << (i ? ", " : "iterations ") << rows[i].iterations << "/" << rows[i + half].iterations;
    }
    return {ok, os.str()};
}

Outcome linear_shape(const std::vector<bench::ResultRow>& rows)
{
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(std::log(1.0 / r.eps));
        y.push_back(static_cast<double>(r.iterations));
    }
    const auto fit = bench::fit_line(x, y);
    std::ostringstream os;
    os << "R^2 = " << fit.r_squared << ", slope = " << fit.slope;
    return {fit.r_squared >= 0.9, os.str()};
}

Outcome call_budget()
{
    bool ok = true;
    int runs = 0;
    double worst = -1e300;
    for (const auto& h : holder_fixtures()) {
        for (double eps : h.eps) {
            const auto res = certified_solve(h.oracle, h.setup, h.Q, eps);
            const double k = static_cast<double>(res.trace.iterations());
            const double budget =
                4.0 * k + 2.0 * std::log2(2.0 * holder_L(h.spec, eps / 2.0)) - 2.0 * std::log2(res.M_init);
            const double calls = static_cast<double>(res.trace.total_oracle_calls());
            ok = ok && calls <= budget;
            worst = std::max(worst, calls - budget);
            ++runs;
        }
    }
    std::ostringstream os;
    os << runs << " runs, max(calls - budget) = " << worst;
    return {ok, os.str()};
}

struct RestartFixture {
    RestartResult res;
    Point c;
    double eps = 1e-4;
    double R0_sq = 4.0;
};

RestartFixture restart_fixture()
{
    RestartFixture f;
    f.c = Point(4);
    f.c << 0.3, -0.4, 0.1, 0.2;
    const Point c = f.c;
    const auto oracle = exact_oracle([c](const Point& x) -> DualVector { return x - c; }, HolderSpec{1.0, 1.0});
    f.res = restart_solve(oracle, FeasibleSet::unit_ball(4), 1.0, ToleranceBudget{f.eps}, Point::Zero(4), f.R0_sq, 1.0);
    return f;
}

Outcome restart_contraction(const RestartFixture& f)
{
    bool ok = true;
    double slack = 1e300;
    for (std::size_t p = 1; p < f.res.stage_points.size(); ++p) {
        const double dist = (f.res.stage_points[p] - f.c).squaredNorm();
        const double bound = f.R0_sq * std::ldexp(1.0, -static_cast<int>(p)) + f.eps / 2.0 + 1e-9;
        ok = ok && dist <= bound;
        slack = std::min(slack, bound - dist);
    }
    const double final_dist = (f.res.x - f.c).squaredNorm();
    ok = ok && final_dist <= f.eps;
    std::ostringstream os;
    os << f.res.state.p << " restarts, min slack " << slack << ", final ||x - x*||^2 = " << final_dist;
    return {ok, os.str()};
}

Outcome inner_iterations(const RestartFixture& f)
{
    const long bound = inner_iteration_bound({1.0, 1.0}, 1.0, f.eps, 1.0, f.R0_sq);
    std::ostringstream os;
    os << f.res.state.inner_iterations << " inner iterations <= " << bound;
    return {f.res.state.inner_iterations <= bound, os.str()};
}

Outcome young_suite()
{
    const auto rep = young_holder_suite(100000, 42);
    std::ostringstream os;
    os << rep.samples << " samples, " << rep.violations << " violations";
    return {rep.samples == 100000 && rep.violations == 0, os.str()};
}

Outcome conformance()
{
    const auto exp = bench::gen_exp_operator(20);
    const auto sp = bench::gen_nonsmooth_saddle(10, 5, 3);
    FirstOrderOracle quad = [](const Point& y) { return FirstOrderAnswer{0.5 * y.squaredNorm(), y}; };
    const double delta = 0.05;
    FirstOrderOracle nrm = [](const Point& y) {
        const double n = y.norm();
        return FirstOrderAnswer{n, n > 0.0 ? DualVector(y / n) : DualVector::Zero(y.size())};
    };
    struct Case {
        std::string name;
        InexactOracle oracle;
        FeasibleSet Q;
        double delta_c;
    };
    const Case cases[] = {
        {"exact, Lipschitz", exact_oracle(exp.g, exp.holder), exp.Q, 1e-2},
        {"exact, bounded variation", exact_oracle(make_vi_operator(sp.problem), HolderSpec{0.0, sp.variation_bound}),
         sp.problem.product_set(), 0.1},
        {"noisy", noisy_oracle(exp.g, 0.05, exp.Q.diameter_bound(), 9, exp.holder), exp.Q, 1e-2},
        {"(delta, L) smooth", delta_L_oracle(quad, 0.0, 1.0, [](const Point& y) { return y; }),
         FeasibleSet::unit_ball(10), 1e-3},
        {"(delta, L) norm", delta_L_oracle(nrm, delta, 2.0 / delta, [nrm](const Point& y) { return nrm(y).gradient; }),
         FeasibleSet::unit_ball(10), 1e-3},
    };
    bool ok = true;
    std::ostringstream os;
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        const auto rep = oracle_conformance(c.oracle, c.Q, c.delta_c, 1000, seed++);
        ok = ok && rep.passed() && rep.samples == 1000;
        os << c.name << (rep.passed() ? " ok" : " FAILED") << "; ";
    }
    return {ok, os.str()};
}

Outcome saddle_gap()
{
    const auto inst = bench::gen_nonsmooth_saddle(100, 50, 42);
    const auto& sp = inst.problem;
    const FeasibleSet Q = sp.product_set();
    const ProxSetup setup = ProxSetup::euclidean();
    const double eps = 0.125;
    SolverOptions opts;
    opts.norm = sp.norm_pair();
    const auto res = solve(exact_oracle(make_vi_operator(sp)), setup, Q, ToleranceBudget{eps},
                           StoppingRule::certified(bregman_radius_bound(setup, Q)), opts);
    const double bound = duality_gap_bound(res.certificate);
    const Vector u_hat = sp.u_part(res.certificate.average), v_hat = sp.v_part(res.certificate.average);
    Rng rng(2718);
    double worst = -1e300, worst_local = -1e300;
    for (int t = 0; t < 1000; ++t) {
        const Vector u = sample_point(sp.Q1, rng), v = sample_point(sp.Q2, rng);
        worst = std::max(worst, primal_dual_gap(sp, res.certificate.average, u, v));
    }
    // Uniform samples sit far from the best responses; also probe a neighbourhood of the average.
    for (int t = 0; t < 1000; ++t) {
        const Vector u = sp.Q1.project(u_hat + 0.1 * sample_point(sp.Q1, rng));
        const Vector v = sp.Q2.project(v_hat + 0.1 * sample_point(sp.Q2, rng));
        worst_local = std::max(worst_local, primal_dual_gap(sp, res.certificate.average, u, v));
    }
    std::ostringstream os;
    os << "max sampled gap " << worst << " (uniform), " << worst_local << " (near average) <= bound " << bound
       << ", certified gap " << res.certificate.gap_value;
    return {res.converged && std::max(worst, worst_local) <= bound + 1e-9 && res.certificate.gap_value <= eps,
            os.str()};
}

double fitted_exponent(const std::vector<bench::ResultRow>& rows)
{
    std::vector<double> x, y;
    for (const auto& r : rows) {
        if (r.converged) {
            x.push_back(std::log(1.0 / r.eps));
            y.push_back(std::log(static_cast<double>(r.iterations)));
        }
    }
    return bench::fit_line(x, y).slope;
}

bench::ExperimentConfig default_config(bench::Experiment e)
{
    bench::ExperimentConfig cfg;
    cfg.experiment = e;
    cfg.dimensions = bench::ExperimentConfig::default_dimensions(e);
    cfg.eps = bench::ExperimentConfig::default_eps(e);
    return cfg;
}

Outcome adaptivity_envelope(const std::vector<bench::ResultRow>& saddle, const std::vector<bench::ResultRow>& fts)
{
    const double s_saddle = fitted_exponent(saddle);
    const double s_fts = fitted_exponent(fts);
    std::ostringstream os;
    os << "s(nonsmooth-saddle) = " << s_saddle << " (reference ~1/3), s(fermat-torricelli) = " << s_fts
       << " (reference ~1/4)";
    return {s_saddle > 0.0 && s_saddle <= 2.0 && s_fts > 0.0 && s_fts <= 2.0, os.str()};
}

// CSV with the wall_time_s column cut off each line.
std::string csv_without_timing(const std::vector<bench::ResultRow>& rows)
{
    std::ostringstream os;
    write_csv(os, rows);
    std::istringstream in(os.str());
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(',')) + "\n";
    }
    return out;
}

Outcome reproducibility(const std::vector<std::vector<bench::ResultRow>>& first)
{
    bool ok = true;
    std::ostringstream os;
    std::size_t i = 0;
    for (auto e : {bench::Experiment::exp_operator, bench::Experiment::nonsmooth_saddle,
                   bench::Experiment::fermat_torricelli}) {
        const auto again = bench::run_experiment(default_config(e), 2);
        const bool same = csv_without_timing(first[i]) == csv_without_timing(again) &&
                          summary_json(first[i]) == summary_json(again);
        ok = ok && same;
        os << bench::experiment_name(e) << (same ? " identical" : " DIFFERS") << "; ";
        ++i;
    }
    return {ok, os.str()};
}

}  // namespace

int main()
{
    int failures = 0;
    auto report = [&](int n, const std::string& name, const std::function<Outcome()>& run) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << n << ". " << name << ": " << o.detail << " ("
                  << dt.count() << " s)" << std::endl;
    };

    std::vector<bench::ResultRow> exp_rows;
    RestartFixture restart;
    std::vector<std::vector<bench::ResultRow>> manifest;

    report(1, "certificate inequality", certificate_inequality);
    report(2, "universality ceiling", universality_ceiling);
    report(3, "dimension independence", [&] {
        exp_rows = exp_grid_rows();
        return dimension_independence(exp_rows);
    });
    report(4, "linear-convergence shape", [&] {
        const std::vector<bench::ResultRow> first(exp_rows.begin(), exp_rows.begin() + exp_rows.size() / 2);
        return linear_shape(first);
    });
    report(5, "oracle-call budget", call_budget);
    report(6, "restart contraction", [&] {
        restart = restart_fixture();
        return restart_contraction(restart);
    });
    report(7, "inner-iteration bound", [&] { return inner_iterations(restart); });
    report(8, "Young-Hölder inequality suite", young_suite);
    report(9, "oracle conformance", conformance);
    report(10, "saddle gap domination", saddle_gap);
    report(11, "empirical adaptivity envelope", [&] {
        for (auto e : {bench::Experiment::exp_operator, bench::Experiment::nonsmooth_saddle,
                       bench::Experiment::fermat_torricelli}) {
            manifest.push_back(bench::run_experiment(default_config(e)));
        }
        return adaptivity_envelope(manifest[1], manifest[2]);
    });
    report(12, "reproducibility", [&] { return reproducibility(manifest); });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
