#include "vi/checks.hpp"

#include "vi/bench.hpp"
#include "vi/gmp.hpp"
#include "vi/report.hpp"
#include "vi/restart.hpp"

#include <cmath>
#include <sstream>

namespace vi {

Point sample_point(const FeasibleSet& set, Rng& rng)
{
    return std::visit(
        [&](const auto& s) -> Point {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, FeasibleSet::Ball>) {
                const auto n = s.center.size();
                const double r = s.radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
                return s.center + r * rng.unit_direction(n);
            } else if constexpr (std::is_same_v<S, FeasibleSet::Simplex>) {
                Point x(s.dim);
                for (Eigen::Index i = 0; i < s.dim; ++i) {
                    x[i] = -std::log(1.0 - rng.uniform01());
                }
                return x / x.sum();
            } else if constexpr (std::is_same_v<S, FeasibleSet::Box>) {
                Point x(s.lo.size());
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                    x[i] = rng.uniform(s.lo[i], s.hi[i]);
                }
                return x;
            } else if constexpr (std::is_same_v<S, FeasibleSet::NonnegativeBall>) {
                if (s.dim == 0) {
                    return Point(0);
                }
                const double r = s.radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(s.dim));
                return (r * rng.unit_direction(s.dim)).cwiseAbs();
            } else {
                const Point a = sample_point(*s.first, rng);
                const Point b = sample_point(*s.second, rng);
                Point x(a.size() + b.size());
                x << a, b;
                return x;
            }
        },
        set.shape());
}

ConformanceReport oracle_conformance(const InexactOracle& oracle, const FeasibleSet& set, double delta_c,
                                     long samples, std::uint64_t seed, double slack, const NormPair& norm)
{
    if (!oracle.has_lipschitz()) {
        throw ContractError("oracle_conformance: oracle declares no L(delta_c)");
    }
    const double L = oracle.lipschitz(delta_c);
    const double du = oracle.delta_u();
    Rng rng(seed);
    ConformanceReport rep;
    for (long s = 0; s < samples; ++s) {
        const Point x = sample_point(set, rng);
        const Point y = sample_point(set, rng);
        const Point z = sample_point(set, rng);
        const DualVector gy = oracle.evaluate(y, delta_c);
        const DualVector gx = oracle.evaluate(x, delta_c);

        const double nyx = vi::norm(norm, y - x);
        const double nyz = vi::norm(norm, y - z);
        const double upper = (gy - gx).dot(y - z) - (L / 2.0 * (nyx * nyx + nyz * nyz) + delta_c + du);
        if (upper > slack) {
            ++rep.upper_violations;
        }
        rep.worst_upper_excess = std::max(rep.worst_upper_excess, upper);

        if (oracle.has_exact()) {
            const double lower = -du - (gy - oracle.exact(y)).dot(y - z);
            if (lower > slack) {
                ++rep.lower_violations;
            }
            rep.worst_lower_excess = std::max(rep.worst_lower_excess, lower);
        }
        ++rep.samples;
    }
    return rep;
}

double young_holder_bound(double a, double b, double c, double delta, double nu)
{
    const double e = (1.0 - nu) / (1.0 + nu);
    return std::pow(1.0 / delta, e) * std::pow(a, 2.0 / (1.0 + nu)) / 2.0 * (b * b + c * c) + delta / 2.0;
}

SampleReport young_holder_suite(long samples, std::uint64_t seed, double slack)
{
    Rng rng(seed);
    SampleReport rep;
    for (long s = 0; s < samples; ++s) {
        const double a = std::pow(10.0, rng.uniform(-2.0, 1.0));
        const double b = rng.uniform(0.0, 2.0);
        const double c = rng.uniform(0.0, 2.0);
        const double delta = std::pow(10.0, rng.uniform(-4.0, 0.0));
        // Endpoints get their own share of samples.
        const double u = rng.uniform01();
        const double nu = u < 0.05 ? 0.0 : (u < 0.1 ? 1.0 : rng.uniform01());
        const double excess = a * std::pow(b, nu) * c - young_holder_bound(a, b, c, delta, nu);
        if (excess > slack) {
            ++rep.violations;
        }
        rep.worst_excess = std::max(rep.worst_excess, excess);
        ++rep.samples;
    }
    return rep;
}

namespace {

std::string describe(const ConformanceReport& r)
{
    std::ostringstream os;
    os << r.samples << " triples, " << r.upper_violations << " upper / " << r.lower_violations
       << " lower violations";
    return os.str();
}

CheckOutcome conformance_check(std::string name, const InexactOracle& oracle, const FeasibleSet& set,
                               double delta_c, std::uint64_t seed)
{
    const auto rep = oracle_conformance(oracle, set, delta_c, 1000, seed);
    return {std::move(name), rep.passed(), describe(rep)};
}

}  // namespace

std::vector<CheckOutcome> run_invariant_checks(std::uint64_t seed)
{
    std::vector<CheckOutcome> out;

    {
        const auto rep = young_holder_suite(100000, mix_seed(seed, {1}));
        std::ostringstream os;
        os << rep.samples << " samples, " << rep.violations << " violations";
        out.push_back({"young-holder inequality", rep.violations == 0, os.str()});
    }

    const auto exp_inst = bench::gen_exp_operator(20);
    out.push_back(conformance_check("exact oracle (exp operator)", exact_oracle(exp_inst.g, exp_inst.holder),
                                    exp_inst.Q, 1e-2, mix_seed(seed, {2})));
    out.push_back(conformance_check("noisy oracle (exp operator)",
                                    noisy_oracle(exp_inst.g, 0.05, exp_inst.Q.diameter_bound(), mix_seed(seed, {3}),
                                                 exp_inst.holder),
                                    exp_inst.Q, 1e-2, mix_seed(seed, {4})));
    {
        FirstOrderOracle quad = [](const Point& y) { return FirstOrderAnswer{0.5 * y.squaredNorm(), y}; };
        out.push_back(conformance_check("(delta, L) oracle (quadratic)",
                                        delta_L_oracle(quad, 0.0, 1.0, [](const Point& y) { return y; }),
                                        FeasibleSet::unit_ball(10), 1e-2, mix_seed(seed, {5})));
    }
    {
        const auto sp = bench::gen_nonsmooth_saddle(10, 5, mix_seed(seed, {6}));
        out.push_back(conformance_check("exact oracle (nonsmooth saddle, nu = 0)",
                                        exact_oracle(make_vi_operator(sp.problem), HolderSpec{0.0, sp.variation_bound}),
                                        sp.problem.product_set(), 0.05, mix_seed(seed, {7})));
    }

    {
        const ProxSetup setup = ProxSetup::euclidean(exp_inst.start);
        const double D = bregman_radius_bound(setup, exp_inst.Q);
        bool ok = true;
        std::ostringstream os;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            const auto res = solve(exact_oracle(exp_inst.g), setup, exp_inst.Q, ToleranceBudget{eps},
                                   StoppingRule::certified(D));
            const double bound = D / res.certificate.inverse_sum + eps / 2.0 + 1e-9;
            ok = ok && res.converged && res.certificate.gap_value <= bound;
            os << "eps=" << eps << " gap=" << res.certificate.gap_value << " bound=" << bound << "; ";
        }
        out.push_back({"certificate inequality", ok, os.str()});
    }

    {
        const Point c = Point::Constant(5, 0.2);
        const auto oracle = exact_oracle([c](const Point& x) -> DualVector { return x - c; }, HolderSpec{1.0, 1.0});
        const FeasibleSet Q = FeasibleSet::unit_ball(5);
        const double eps = 1e-4;
        const auto res = restart_solve(oracle, Q, 1.0, ToleranceBudget{eps}, Point::Zero(5), 4.0, 1.0, {});
        bool ok = true;
        for (std::size_t p = 1; p < res.stage_points.size(); ++p) {
            const double dist = (res.stage_points[p] - c).squaredNorm();
            ok = ok && dist <= 4.0 * std::ldexp(1.0, -static_cast<int>(p)) + eps / 2.0 + 1e-9;
        }
        ok = ok && (res.x - c).squaredNorm() <= eps;
        std::ostringstream os;
        os << res.state.p << " stages, " << res.state.inner_iterations << " inner iterations";
        out.push_back({"restart contraction", ok, os.str()});
    }

    {
        bench::ExperimentConfig cfg;
        cfg.experiment = bench::Experiment::nonsmooth_saddle;
        cfg.dimensions = {{20, 10, 0}};
        cfg.eps = {0.25, 0.125};
        cfg.seed = seed;
        cfg.trials = 2;
        auto a = bench::run_experiment(cfg, 1);
        auto b = bench::run_experiment(cfg, 2);
        for (auto* rows : {&a, &b}) {
            for (auto& r : *rows) {
                r.wall_time_s = 0.0;
            }
        }
        out.push_back({"reproducibility (rows excluding wall time)", a == b, std::to_string(a.size()) + " rows"});

        std::stringstream csv;
        write_csv(csv, a);
        const auto parsed = parse_csv(csv);
        out.push_back({"csv round trip", parsed == a, std::to_string(parsed.size()) + " rows"});
    }
    return out;
}

}  // namespace vi
