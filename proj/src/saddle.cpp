#include "vi/saddle.hpp"

#include <algorithm>

namespace vi {

NormPair SaddleProblem::norm_pair() const
{
    return norm_mode == NormMode::max_sum ? NormPair::product_max(dim_u()) : NormPair::euclidean();
}

Point SaddleProblem::join(const Vector& u, const Vector& v) const
{
    require_same_dim(u.size(), dim_u(), "saddle u block");
    require_same_dim(v.size(), dim_v(), "saddle v block");
    Point x(u.size() + v.size());
    x << u, v;
    return x;
}

Operator make_vi_operator(const SaddleProblem& sp)
{
    if (!sp.grad_u || !sp.grad_v) {
        throw ContractError("make_vi_operator: both block gradients are required");
    }
    const Eigen::Index p = sp.dim_u();
    const Eigen::Index q = sp.dim_v();
    return [gu = sp.grad_u, gv = sp.grad_v, p, q](const Point& x) -> DualVector {
        require_same_dim(x.size(), p + q, "saddle operator");
        const Vector u = x.head(p);
        const Vector v = x.tail(q);
        DualVector g(p + q);
        g.head(p) = gu(u, v);
        g.tail(q) = -gv(u, v);
        return g;
    };
}

double holder_constant_of_blocks(double L11, double L12, double L21, double L22, double nu,
                                 SaddleProblem::NormMode mode)
{
    if (L11 < 0.0 || L12 < 0.0 || L21 < 0.0 || L22 < 0.0) {
        throw ContractError("holder_constant_of_blocks: constants must be non-negative");
    }
    if (!(nu >= 0.0 && nu <= 1.0)) {
        throw ContractError("holder_constant_of_blocks: nu must lie in [0, 1]");
    }
    if (mode == SaddleProblem::NormMode::max_sum) {
        return L11 + L12 + L21 + L22;
    }
    return std::sqrt(2.0 * (L11 * L11 + L12 * L12 + L21 * L21 + L22 * L22));
}

HolderSpec mixed_smoothness_spec(const std::array<BlockHolder, 4>& blocks, double D_Q,
                                 SaddleProblem::NormMode mode)
{
    if (!(D_Q > 0.0)) {
        throw ContractError("mixed_smoothness_spec: diameter must be positive");
    }
    double nu = 1.0;
    for (const auto& b : blocks) {
        if (!(b.nu >= 0.0 && b.nu <= 1.0) || b.L < 0.0) {
            throw ContractError("mixed_smoothness_spec: invalid block");
        }
        nu = std::min(nu, b.nu);
    }
    std::array<double, 4> scaled{};
    for (std::size_t i = 0; i < 4; ++i) {
        scaled[i] = blocks[i].L * std::pow(D_Q, blocks[i].nu - nu);
    }
    return {nu, holder_constant_of_blocks(scaled[0], scaled[1], scaled[2], scaled[3], nu, mode)};
}

double duality_gap_bound(const Certificate& cert)
{
    return cert.gap_value;
}

double primal_dual_gap(const SaddleProblem& sp, const Point& averaged, const Vector& u, const Vector& v)
{
    if (!sp.value) {
        throw ContractError("primal_dual_gap: saddle problem carries no value function");
    }
    return sp.value(sp.u_part(averaged), v) - sp.value(u, sp.v_part(averaged));
}

Vector distance_subgradient(const Vector& x, const Vector& a)
{
    const Vector d = x - a;
    const double n = d.norm();
    if (n == 0.0) {
        return Vector::Zero(x.size());
    }
    return d / n;
}

void ConstrainedProblem::validate() const
{
    if (!objective_subgradient) {
        throw ConfigurationError("constrained problem: objective subgradient is required");
    }
    if (!(lambda_radius > 0.0)) {
        throw ConfigurationError("constrained problem: lambda_radius must be set to a positive bound");
    }
    for (const auto& c : constraints) {
        if (!c.value || !c.subgradient) {
            throw ConfigurationError("constrained problem: each constraint needs a value and a subgradient");
        }
    }
    if (slater_point) {
        for (const auto& c : constraints) {
            if (!(c.value(*slater_point) < 0.0)) {
                throw ConfigurationError("constrained problem: Slater point is not strictly feasible");
            }
        }
    }
}

SaddleProblem lagrangian_saddle(const ConstrainedProblem& cp, const FeasibleSet& Q)
{
    cp.validate();
    const auto m = static_cast<Eigen::Index>(cp.constraints.size());

    auto grad_u = [cp](const Vector& x, const Vector& lambda) -> Vector {
        Vector g = cp.objective_subgradient(x);
        for (Eigen::Index p = 0; p < lambda.size(); ++p) {
            if (lambda[p] != 0.0) {
                g += lambda[p] * cp.constraints[p].subgradient(x);
            }
        }
        return g;
    };
    auto grad_v = [cp, m](const Vector& x, const Vector&) -> Vector {
        Vector phi(m);
        for (Eigen::Index p = 0; p < m; ++p) {
            phi[p] = cp.constraints[p].value(x);
        }
        return phi;
    };
    SaddleProblem::Value value;
    if (cp.objective) {
        value = [cp](const Vector& x, const Vector& lambda) {
            double v = cp.objective(x);
            for (Eigen::Index p = 0; p < lambda.size(); ++p) {
                v += lambda[p] * cp.constraints[p].value(x);
            }
            return v;
        };
    }
    return SaddleProblem{grad_u, grad_v, value, Q, FeasibleSet::nonnegative_ball(m, cp.lambda_radius),
                         SaddleProblem::NormMode::max_sum};
}

}  // namespace vi
