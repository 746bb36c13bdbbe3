#pragma once

#include "vi/oracle.hpp"
#include "vi/prox.hpp"
#include "vi/rng.hpp"

#include <string>
#include <vector>

namespace vi {

/// A random member of the set. Balls are sampled uniformly by volume, the simplex
/// by normalized exponentials, boxes coordinatewise; products blockwise.
Point sample_point(const FeasibleSet& set, Rng& rng);

struct ConformanceReport {
    long samples = 0;
    long upper_violations = 0;  // <g~(y) - g~(x), y - z> above (L/2)(...) + delta_c + delta_u
    long lower_violations = 0;  // <g~(y) - g(y), y - z> below -delta_u
    double worst_upper_excess = 0.0;
    double worst_lower_excess = 0.0;

    bool passed() const { return upper_violations == 0 && lower_violations == 0; }
};

/// Samples (x, y, z) in Q^3 and checks both inequalities of the inexact-oracle
/// definition against the oracle's declared L(delta_c) and delta_u. The lower
/// check runs only when the oracle carries its exact operator.
ConformanceReport oracle_conformance(const InexactOracle& oracle, const FeasibleSet& set, double delta_c,
                                     long samples, std::uint64_t seed, double slack = 1e-10,
                                     const NormPair& norm = NormPair::euclidean());

/// Right-hand side of a b^nu c <= (1/delta)^((1-nu)/(1+nu)) (a^(2/(1+nu))/2)(b^2 + c^2) + delta/2.
double young_holder_bound(double a, double b, double c, double delta, double nu);

struct SampleReport {
    long samples = 0;
    long violations = 0;
    double worst_excess = 0.0;
};

/// Random (a, b, c, delta, nu) with log-uniform magnitudes, counting excess above `slack`.
SampleReport young_holder_suite(long samples, std::uint64_t seed, double slack = 1e-12);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The quick invariant suites behind `vi-solve check`.
std::vector<CheckOutcome> run_invariant_checks(std::uint64_t seed);

}  // namespace vi
