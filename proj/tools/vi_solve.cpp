#include "vi/bench.hpp"
#include "vi/checks.hpp"
#include "vi/config.hpp"
#include "vi/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using vi::bench::ExperimentConfig;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFlagged = 2;

// Problem-selection flags shared by `bench` and `solve`. Unset flags leave the
// config file (or defaults) alone.
struct ProblemFlags {
    std::string config_path;
    std::string experiment;
    std::vector<long> n;
    std::optional<long> p, q, m, N;
    std::string eps;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> search_factor;
    std::optional<double> m_init;
    std::optional<double> lambda_radius;
    std::optional<double> x_radius;
    std::string method;
    std::optional<double> mu;
    std::optional<long> max_iters;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config_path, "Experiment config file (key = value)")->check(CLI::ExistingFile);
        app.add_option("--experiment", experiment, "exp-operator | nonsmooth-saddle | fermat-torricelli")
            ->check(CLI::IsMember({"exp-operator", "nonsmooth-saddle", "fermat-torricelli"}));
        app.add_option("--n", n, "Dimension n (exp-operator: comma list allowed; fermat-torricelli: one value)")
            ->delimiter(',');
        app.add_option("--p", p, "Saddle u-dimension");
        app.add_option("--q", q, "Saddle v-dimension");
        app.add_option("--m", m, "Number of Fermat-Torricelli constraints");
        app.add_option("--N", N, "Number of Fermat-Torricelli anchors");
        app.add_option("--eps", eps, "Comma-separated accuracies");
        app.add_option("--seed", seed, "Base seed (falls back to VI_SOLVE_SEED, then 42)");
        app.add_option("--trials", trials, "Trials per (dimension, eps) cell")->check(CLI::PositiveNumber);
        app.add_option("--search-factor", search_factor, "Line-search factor a > 1");
        app.add_option("--m-init", m_init, "Initial M (default: difference quotient)");
        app.add_option("--lambda-radius", lambda_radius, "Fermat-Torricelli multiplier ball radius");
        app.add_option("--x-radius", x_radius, "Fermat-Torricelli primal ball radius");
        app.add_option("--method", method, "gmp | restart")->check(CLI::IsMember({"gmp", "restart"}));
        app.add_option("--mu", mu, "Strong-monotonicity modulus for restart");
        app.add_option("--max-iters", max_iters, "Iteration budget per run");
    }

    // Builds the config text (file first, flags override) and parses it, so flags
    // and files share one validation path.
    vi::ConfigReport resolve() const
    {
        std::map<std::string, std::string> kv;
        if (!config_path.empty()) {
            auto rep = vi::validate_config(config_path);
            if (!rep.config) {
                return rep;
            }
            std::istringstream is(vi::format_config(*rep.config));
            std::string line;
            while (std::getline(is, line)) {
                const auto eq = line.find(" = ");
                kv[line.substr(0, eq)] = line.substr(eq + 3);
            }
        }
        const auto put = [&kv](const std::string& key, const auto& value) {
            std::ostringstream os;
            os << std::setprecision(17) << value;
            kv[key] = os.str();
        };
        if (!experiment.empty()) {
            if (kv.count("experiment") && kv["experiment"] != experiment) {
                kv.erase("dims");
                kv.erase("eps");
            }
            kv["experiment"] = experiment;
        }
        const auto exp = kv.count("experiment") ? vi::bench::parse_experiment(kv["experiment"]) : std::nullopt;
        if (exp == vi::bench::Experiment::exp_operator && !n.empty()) {
            std::vector<vi::bench::Dimensions> dims;
            for (long v : n) {
                dims.push_back({v, 0, 0});
            }
            kv["dims"] = vi::format_dimensions(dims, *exp);
        } else if (exp == vi::bench::Experiment::nonsmooth_saddle && (p || q)) {
            const auto d = ExperimentConfig::default_dimensions(*exp).front();
            kv["dims"] = vi::format_dimensions({{p.value_or(d.a), q.value_or(d.b), 0}}, *exp);
        } else if (exp == vi::bench::Experiment::fermat_torricelli && (!n.empty() || m || N)) {
            const auto d = ExperimentConfig::default_dimensions(*exp).front();
            kv["dims"] =
                vi::format_dimensions({{n.empty() ? d.a : n.front(), m.value_or(d.b), N.value_or(d.c)}}, *exp);
        }
        if (!eps.empty()) {
            kv["eps"] = eps;
        }
        if (seed) {
            put("seed", *seed);
        } else if (const char* env = std::getenv("VI_SOLVE_SEED")) {
            kv["seed"] = env;
        }
        if (trials) put("trials", *trials);
        if (search_factor) put("search_factor", *search_factor);
        if (m_init) put("m_init", *m_init);
        if (lambda_radius) put("lambda_radius", *lambda_radius);
        if (x_radius) put("x_radius", *x_radius);
        if (!method.empty()) kv["method"] = method;
        if (mu) put("mu", *mu);
        if (max_iters) put("max_iters", *max_iters);

        std::ostringstream text;
        for (const auto& [k, v] : kv) {
            text << k << " = " << v << '\n';
        }
        return vi::parse_config(text.str());
    }
};

bool write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        std::cerr << "error: cannot write " << path << '\n';
        return false;
    }
    return true;
}

int report_errors(const std::vector<std::string>& errors)
{
    for (const auto& e : errors) {
        std::cerr << "error: " << e << '\n';
    }
    return kUsage;
}

int run_bench(const ProblemFlags& flags, const std::string& out_dir, const std::vector<std::string>& formats,
              int jobs, int verbosity)
{
    const auto rep = flags.resolve();
    if (!rep.config) {
        return report_errors(rep.errors);
    }
    const ExperimentConfig& cfg = *rep.config;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        std::cerr << "error: cannot create output directory '" << out_dir << "'\n";
        return kUsage;
    }

    if (verbosity > 0) {
        std::cerr << vi::format_config(cfg);
    }
    const auto rows = vi::bench::run_experiment(cfg, jobs);
    const std::string stem = std::string(vi::bench::experiment_name(cfg.experiment));
    const std::set<std::string> want(formats.begin(), formats.end());

    bool written = true;
    if (want.count("csv")) {
        std::ostringstream csv;
        vi::write_csv(csv, rows);
        written &= write_file(fs::path(out_dir) / (stem + ".csv"), csv.str());
    }
    if (want.count("json")) {
        written &= write_file(fs::path(out_dir) / (stem + ".summary.json"), vi::summary_json(rows));
    }
    if (want.count("svg")) {
        written &= write_file(fs::path(out_dir) / (stem + ".iterations.svg"),
                              vi::convergence_svg(rows, vi::PlotMetric::iterations));
        written &= write_file(fs::path(out_dir) / (stem + ".time.svg"),
                              vi::convergence_svg(rows, vi::PlotMetric::wall_time));
    }
    if (!written) {
        return kUsage;
    }

    long flagged = 0;
    for (const auto& r : rows) {
        flagged += r.converged ? 0 : 1;
    }
    if (verbosity > 0 || flagged > 0) {
        std::cerr << rows.size() << " rows, " << flagged << " not converged\n";
    }
    return flagged ? kFlagged : kOk;
}

int run_solve(const ProblemFlags& flags)
{
    const auto rep = flags.resolve();
    if (!rep.config) {
        return report_errors(rep.errors);
    }
    const ExperimentConfig& cfg = *rep.config;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    bool all = true;
    for (const auto& d : cfg.dimensions) {
        for (double e : cfg.eps) {
            const auto r = vi::bench::run_single(cfg, d, e, 0);
            all = all && r.converged;
            nlohmann::ordered_json j;
            j["experiment"] = r.experiment;
            j["dims"] = {r.dim_a, r.dim_b, r.dim_c};
            j["eps"] = r.eps;
            j["seed"] = r.seed;
            j["iterations"] = r.iterations;
            j["oracle_calls"] = r.oracle_calls;
            j["final_gap"] = std::isfinite(r.final_gap) ? nlohmann::ordered_json(r.final_gap) : nullptr;
            j["converged"] = r.converged;
            j["wall_time_s"] = r.wall_time_s;
            runs.push_back(std::move(j));
        }
    }
    std::cout << runs.dump(2) << '\n';
    return all ? kOk : kFlagged;
}

int run_check(std::uint64_t seed)
{
    bool all = true;
    for (const auto& c : vi::run_invariant_checks(seed)) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        all = all && c.passed;
    }
    return all ? kOk : kFlagged;
}

int run_validate(const std::string& path)
{
    const auto rep = vi::validate_config(path);
    if (!rep.config) {
        return report_errors(rep.errors);
    }
    std::cout << vi::format_config(*rep.config);
    return kOk;
}

int run(int argc, char** argv)
{
    CLI::App app{"Adaptive mirror-prox solver for monotone variational inequalities", "vi-solve"};
    app.require_subcommand(1);

    ProblemFlags bench_flags;
    std::string out_dir = ".";
    std::vector<std::string> formats{"csv", "json"};
    int jobs = 1;
    int verbosity = 0;
    auto* bench = app.add_subcommand("bench", "Run a seeded benchmark experiment and write results");
    bench_flags.attach(*bench);
    bench->add_option("--out", out_dir, "Output directory");
    bench->add_option("--format", formats, "Subset of csv,json,svg")
        ->delimiter(',')
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_flag("-v,--verbose", verbosity, "Print the resolved config and a row count");

    ProblemFlags solve_flags;
    auto* solve = app.add_subcommand("solve", "Solve one generated problem per (dimension, eps) and print JSON");
    solve_flags.attach(*solve);

    std::optional<std::uint64_t> check_seed;
    auto* check = app.add_subcommand("check", "Run the invariant suites");
    check->add_option("--seed", check_seed, "Base seed (falls back to VI_SOLVE_SEED, then 42)");

    std::string config_path;
    auto* validate = app.add_subcommand("validate", "Validate a config file and print its normalized form");
    validate->add_option("config", config_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*bench) {
            if (formats.empty()) {
                std::cerr << "error: --format needs at least one of csv,json,svg\n";
                return kUsage;
            }
            return run_bench(bench_flags, out_dir, formats, jobs, verbosity);
        }
        if (*solve) {
            return run_solve(solve_flags);
        }
        if (*check) {
            std::uint64_t seed = 42;
            if (check_seed) {
                seed = *check_seed;
            } else if (const char* env = std::getenv("VI_SOLVE_SEED")) {
                seed = std::strtoull(env, nullptr, 10);
            }
            return run_check(seed);
        }
        return run_validate(config_path);
    } catch (const vi::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    return run(argc, argv);
}
