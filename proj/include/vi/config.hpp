#pragma once

#include "vi/bench.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vi {

/// Experiment configs are flat `key = value` text. `#` starts a comment; blank
/// lines are ignored; keys may appear once.
///
///   experiment    = exp-operator | nonsmooth-saddle | fermat-torricelli   (required)
///   dims          = comma-separated tuples, components joined by 'x': 1000, 10000 | 100x50 | 50x10x20
///   eps           = comma-separated reals
///   seed          = unsigned 64-bit integer
///   trials        = integer >= 1
///   search_factor = real > 1
///   m_init        = auto | real > 0
///   lambda_radius = real > 0
///   x_radius      = real > 0
///   method        = gmp | restart
///   mu            = real > 0 (restart)
///   max_iters     = integer >= 1
///
/// Missing dims and eps take the experiment's desk-scale defaults.
struct ConfigReport {
    std::optional<bench::ExperimentConfig> config;  // set only when errors is empty
    std::vector<std::string> errors;                // "line N: ..." or "<field>: ..."
};

ConfigReport parse_config(const std::string& text);

/// Canonical text of a config; parse_config(format_config(c)) reproduces c.
std::string format_config(const bench::ExperimentConfig& cfg);

/// Reads and parses a file; an unreadable path is reported as an error.
ConfigReport validate_config(const std::string& path);

std::string format_dimensions(const std::vector<bench::Dimensions>& dims, bench::Experiment e);

/// Parses a comma-separated real list; throws ConfigurationError on junk.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace vi
