#include "doctest.h"

#include "json.hpp"
#include "vi/config.hpp"
#include "vi/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace vi;
using namespace vi::bench;

namespace {

ResultRow row(long n, double eps, int trial, long iters, double gap, bool converged = true)
{
    ResultRow r;
    r.experiment = "exp-operator";
    r.dim_a = n;
    r.eps = eps;
    r.trial = trial;
    r.seed = 1000 + static_cast<std::uint64_t>(trial);
    r.iterations = iters;
    r.oracle_calls = 2 * iters + 3;
    r.final_gap = gap;
    r.converged = converged;
    r.wall_time_s = 0.001 * (trial + 1);
    return r;
}

bool has_error(const ConfigReport& rep, std::string_view prefix)
{
    for (const auto& e : rep.errors) {
        if (e.starts_with(prefix)) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("csv round trip keeps every field, including NaN gaps")
{
    std::vector<ResultRow> rows{row(1000, 0.1, 0, 7, 0.0123456789012345678),
                                row(1000, 1.0 / 3.0, 1, 9, std::numeric_limits<double>::quiet_NaN(), false)};
    std::stringstream ss;
    write_csv(ss, rows);
    CHECK(ss.str().starts_with(std::string(kCsvHeader) + "\n"));
    const auto back = parse_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == rows[0]);
    CHECK(back[1].eps == rows[1].eps);
    CHECK(std::isnan(back[1].final_gap));
    CHECK_FALSE(back[1].converged);
    CHECK(back[1].seed == rows[1].seed);
}

TEST_CASE("malformed csv names the line")
{
    std::stringstream bad_header("experiment,dim_a\n");
    CHECK_THROWS_WITH_AS(parse_csv(bad_header), doctest::Contains("csv line 1"), Error);

    std::stringstream short_row(std::string(kCsvHeader) + "\nexp-operator,1,0,0\n");
    CHECK_THROWS_WITH_AS(parse_csv(short_row), doctest::Contains("csv line 2"), Error);

    std::stringstream bad_field(std::string(kCsvHeader) + "\nexp-operator,x,0,0,0.1,0,1,2,3,0.1,1,0.0\n");
    CHECK_THROWS_WITH_AS(parse_csv(bad_field), doctest::Contains("csv line 2"), Error);
}

TEST_CASE("summary json averages over trials")
{
    std::vector<ResultRow> rows;
    for (int t = 0; t < 10; ++t) {
        rows.push_back(row(1000, 0.01, t, 10 + t, 0.001 * t, t != 3));
    }
    rows.push_back(row(1000, 0.1, 0, 4, std::numeric_limits<double>::quiet_NaN()));
    const auto j = nlohmann::json::parse(summary_json(rows));
    CHECK(j["rows"] == 11);
    REQUIRE(j["cells"].size() == 2);
    // Larger eps first.
    const auto& coarse = j["cells"][0];
    const auto& fine = j["cells"][1];
    CHECK(coarse["eps"] == 0.1);
    CHECK(coarse["mean_final_gap"].is_null());
    CHECK(fine["trials"] == 10);
    CHECK(fine["converged"] == 9);
    CHECK(fine["mean_iterations"].get<double>() == doctest::Approx(14.5));
    CHECK(fine["mean_oracle_calls"].get<double>() == doctest::Approx(32.0));
    CHECK(fine["mean_final_gap"].get<double>() == doctest::Approx(0.0045));
    CHECK(summary_json(rows).find("wall") == std::string::npos);
}

TEST_CASE("convergence svg")
{
    std::vector<ResultRow> rows{row(1000, 0.1, 0, 4, 0.0), row(1000, 0.01, 0, 8, 0.0), row(10000, 0.1, 0, 4, 0.0),
                                row(10000, 0.01, 0, 8, 0.0)};
    const std::string svg = convergence_svg(rows, PlotMetric::iterations);
    CHECK(svg.starts_with("<svg"));
    CHECK(svg.find("</svg>") != std::string::npos);
    std::size_t lines = 0;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++lines;
    }
    CHECK(lines == 2);
    CHECK(convergence_svg(rows, PlotMetric::wall_time).find("<polyline") != std::string::npos);
}

TEST_CASE("config parse and format round trip")
{
    const std::string text = R"(# saddle sweep
experiment = nonsmooth-saddle
dims = 100x50, 200x100
eps = 0.5, 0.25, 0.125
seed = 7
trials = 3
m_init = 2.5
)";
    const auto rep = parse_config(text);
    REQUIRE(rep.errors.empty());
    const auto& cfg = *rep.config;
    CHECK(cfg.experiment == Experiment::nonsmooth_saddle);
    REQUIRE(cfg.dimensions.size() == 2);
    CHECK(cfg.dimensions[1] == Dimensions{200, 100, 0});
    CHECK(cfg.eps == std::vector<double>{0.5, 0.25, 0.125});
    CHECK(cfg.seed == 7);
    CHECK(cfg.trials == 3);
    CHECK(cfg.M_init == 2.5);

    const std::string canon = format_config(cfg);
    const auto again = parse_config(canon);
    REQUIRE(again.errors.empty());
    CHECK(format_config(*again.config) == canon);
    CHECK(again.config->eps == cfg.eps);
    CHECK(again.config->dimensions == cfg.dimensions);
}

TEST_CASE("defaults fill missing dims and eps")
{
    const auto rep = parse_config("experiment = fermat-torricelli\n");
    REQUIRE(rep.config);
    CHECK(rep.config->dimensions == ExperimentConfig::default_dimensions(Experiment::fermat_torricelli));
    CHECK(rep.config->eps == ExperimentConfig::default_eps(Experiment::fermat_torricelli));
    CHECK_FALSE(rep.config->M_init);
}

TEST_CASE("config errors")
{
    const auto empty = parse_config("");
    CHECK_FALSE(empty.config);
    CHECK(has_error(empty, "experiment: missing experiment"));

    const auto neg = parse_config("experiment = exp-operator\neps = -1\n");
    CHECK_FALSE(neg.config);
    CHECK(has_error(neg, "eps"));

    const auto unknown = parse_config("experiment = exp-operator\n\ncolour = blue\n");
    CHECK(has_error(unknown, "line 3: unknown key"));

    const auto dup = parse_config("experiment = exp-operator\nseed = 1\nseed = 2\n");
    CHECK(has_error(dup, "line 3: duplicate key"));

    const auto junk = parse_config("experiment = exp-operator\nno equals sign\n");
    CHECK(has_error(junk, "line 2"));

    const auto restart = parse_config("experiment = nonsmooth-saddle\nmethod = restart\nmu = 1\n");
    CHECK(has_error(restart, "method"));

    CHECK_FALSE(validate_config("/nonexistent/path.cfg").errors.empty());
}

TEST_CASE("real lists")
{
    CHECK(parse_real_list("1e-2, 0.5,3") == std::vector<double>{1e-2, 0.5, 3.0});
    CHECK_THROWS_AS(parse_real_list("1, x"), ConfigurationError);
    CHECK(format_dimensions({{50, 10, 20}}, Experiment::fermat_torricelli) == "50x10x20");
    CHECK(format_dimensions({{1000}, {10000}}, Experiment::exp_operator) == "1000, 10000");
}
