#pragma once

#include "vi/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace vi {

/// An exact operator x -> g(x).
using Operator = std::function<DualVector(const Point&)>;

/// Hölder continuity data: ||g(x) - g(y)||_* <= L_nu ||x - y||^nu.
struct HolderSpec {
    double nu = 1.0;
    double L_nu = 1.0;

    void validate() const;
};

/// L(delta_c) = (1 / (2 delta_c))^((1 - nu) / (1 + nu)) * L_nu^(2 / (1 + nu)).
double holder_L(const HolderSpec& spec, double delta_c);

/// Evaluator of g~(x, delta_c, delta_u) with a declared uncontrolled error.
///
/// Every oracle answers deterministically for a fixed (x, delta_c). Test oracles
/// may also carry the exact operator and the constant L(delta_c) they conform with.
class InexactOracle {
public:
    using Evaluator = std::function<DualVector(const Point&, double delta_c)>;
    using LipschitzProfile = std::function<double(double delta_c)>;

    InexactOracle(Evaluator eval, double delta_u, Operator exact = {}, LipschitzProfile lipschitz = {});

    DualVector evaluate(const Point& x, double delta_c) const { return eval_(x, delta_c); }
    double delta_u() const { return delta_u_; }

    bool has_exact() const { return static_cast<bool>(exact_); }
    DualVector exact(const Point& x) const;

    bool has_lipschitz() const { return static_cast<bool>(lipschitz_); }
    /// The L(delta_c) this oracle declares conformance with.
    double lipschitz(double delta_c) const;

    /// Declared bound on ||g~(x) - g(x)||_*, when the adapter knows one.
    std::optional<double> dual_error_bound() const { return dual_error_bound_; }
    InexactOracle& set_dual_error_bound(double bound);

private:
    Evaluator eval_;
    double delta_u_;
    Operator exact_;
    LipschitzProfile lipschitz_;
    std::optional<double> dual_error_bound_;
};

/// g~ = g, delta_u = 0. With a Hölder spec attached, L(delta_c) follows holder_L.
InexactOracle exact_oracle(Operator g, std::optional<HolderSpec> spec = std::nullopt);

/// g~(x) = g(x) + e(x) with ||e(x)||_2 <= noise_bound; declares delta_u = 2 noise_bound D.
///
/// e(x) is a uniform direction scaled by a uniform radius in [0, noise_bound],
/// drawn from a stream keyed on (seed, bit pattern of x), so repeated queries at
/// the same point agree.
InexactOracle noisy_oracle(Operator g, double noise_bound, double D, std::uint64_t seed,
                           std::optional<HolderSpec> spec = std::nullopt);

/// A (delta, L)-oracle answer (f_delta(y), g_delta(y)) for a convex function.
struct FirstOrderAnswer {
    double value;
    DualVector gradient;
};
using FirstOrderOracle = std::function<FirstOrderAnswer(const Point&)>;

/// Wraps a (delta, L)-oracle as a VI oracle: g~ = g_delta, delta_u = 3 delta, L(delta_c) = L.
///
/// `gradient_error_bound` is the separate bound ||g_delta(y) - g(y)||_* <= bar delta_u
/// under which the lower-side condition holds; it is recorded, not folded into delta_u.
InexactOracle delta_L_oracle(FirstOrderOracle f_oracle, double delta, double L,
                             Operator exact_gradient = {},
                             std::optional<double> gradient_error_bound = std::nullopt);

}  // namespace vi
