#include "vi/oracle.hpp"

#include "vi/rng.hpp"

namespace vi {

void HolderSpec::validate() const
{
    if (!(nu >= 0.0 && nu <= 1.0)) {
        throw ContractError("holder spec: nu must lie in [0, 1]");
    }
    if (!(L_nu > 0.0)) {
        throw ContractError("holder spec: L_nu must be positive");
    }
}

double holder_L(const HolderSpec& spec, double delta_c)
{
    spec.validate();
    if (!(delta_c > 0.0)) {
        throw ContractError("holder_L: delta_c must be positive");
    }
    const double exponent = (1.0 - spec.nu) / (1.0 + spec.nu);
    return std::pow(1.0 / (2.0 * delta_c), exponent) * std::pow(spec.L_nu, 2.0 / (1.0 + spec.nu));
}

InexactOracle::InexactOracle(Evaluator eval, double delta_u, Operator exact, LipschitzProfile lipschitz)
    : eval_(std::move(eval)), delta_u_(delta_u), exact_(std::move(exact)), lipschitz_(std::move(lipschitz))
{
    if (!eval_) {
        throw ContractError("oracle: evaluator is empty");
    }
    if (!(delta_u >= 0.0)) {
        throw ContractError("oracle: delta_u must be non-negative");
    }
}

DualVector InexactOracle::exact(const Point& x) const
{
    if (!exact_) {
        throw ContractError("oracle: no exact operator attached");
    }
    return exact_(x);
}

double InexactOracle::lipschitz(double delta_c) const
{
    if (!lipschitz_) {
        throw ContractError("oracle: no declared L(delta_c)");
    }
    return lipschitz_(delta_c);
}

InexactOracle& InexactOracle::set_dual_error_bound(double bound)
{
    if (!(bound >= 0.0)) {
        throw ContractError("oracle: dual error bound must be non-negative");
    }
    dual_error_bound_ = bound;
    return *this;
}

namespace {
InexactOracle::LipschitzProfile holder_profile(const std::optional<HolderSpec>& spec)
{
    if (!spec) {
        return {};
    }
    spec->validate();
    return [s = *spec](double delta_c) { return holder_L(s, delta_c); };
}
}  // namespace

InexactOracle exact_oracle(Operator g, std::optional<HolderSpec> spec)
{
    if (!g) {
        throw ContractError("exact_oracle: operator is empty");
    }
    auto eval = [g](const Point& x, double) { return g(x); };
    return InexactOracle(std::move(eval), 0.0, g, holder_profile(spec));
}

InexactOracle noisy_oracle(Operator g, double noise_bound, double D, std::uint64_t seed,
                           std::optional<HolderSpec> spec)
{
    if (!g) {
        throw ContractError("noisy_oracle: operator is empty");
    }
    if (!(noise_bound >= 0.0) || !(D >= 0.0)) {
        throw ContractError("noisy_oracle: noise bound and D must be non-negative");
    }
    auto eval = [g, noise_bound, seed](const Point& x, double) -> DualVector {
        DualVector value = g(x);
        if (noise_bound == 0.0) {
            return value;
        }
        Rng rng(mix_seed(seed, {digest(x)}));
        const Vector direction = rng.unit_direction(value.size());
        const double radius = noise_bound * rng.uniform01();
        return value + radius * direction;
    };
    InexactOracle oracle(std::move(eval), 2.0 * noise_bound * D, g, holder_profile(spec));
    oracle.set_dual_error_bound(noise_bound);
    return oracle;
}

InexactOracle delta_L_oracle(FirstOrderOracle f_oracle, double delta, double L, Operator exact_gradient,
                             std::optional<double> gradient_error_bound)
{
    if (!f_oracle) {
        throw ContractError("delta_L_oracle: first-order oracle is empty");
    }
    if (!(delta >= 0.0) || !(L > 0.0)) {
        throw ContractError("delta_L_oracle: need delta >= 0 and L > 0");
    }
    if (gradient_error_bound && !(*gradient_error_bound >= 0.0)) {
        throw ContractError("delta_L_oracle: gradient error bound must be non-negative");
    }
    auto eval = [f_oracle](const Point& x, double) { return f_oracle(x).gradient; };
    InexactOracle oracle(std::move(eval), 3.0 * delta, std::move(exact_gradient),
                         [L](double) { return L; });
    if (gradient_error_bound) {
        oracle.set_dual_error_bound(*gradient_error_bound);
    }
    return oracle;
}

}  // namespace vi
