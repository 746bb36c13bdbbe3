#pragma once

#include "vi/bench.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vi {

/// Header line of the result CSV.
inline constexpr const char* kCsvHeader =
    "experiment,dim_a,dim_b,dim_c,eps,trial,seed,iterations,oracle_calls,final_gap,converged,wall_time_s";

/// One header line plus one line per row; reals carry 17 significant digits.
void write_csv(std::ostream& os, const std::vector<bench::ResultRow>& rows);

/// Inverse of write_csv. Throws Error naming the line on malformed input.
std::vector<bench::ResultRow> parse_csv(std::istream& is);

/// Per-(dimensions, eps) means over trials, as pretty-printed JSON. Carries no
/// timing fields, so identical runs produce identical text.
std::string summary_json(const std::vector<bench::ResultRow>& rows);

enum class PlotMetric { iterations, wall_time };

/// Static SVG of metric against eps on log-log axes, one polyline per dimension tuple,
/// averaged over trials.
std::string convergence_svg(const std::vector<bench::ResultRow>& rows, PlotMetric metric);

}  // namespace vi
