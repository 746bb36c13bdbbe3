#pragma once

#include "vi/gmp.hpp"
#include "vi/oracle.hpp"
#include "vi/prox.hpp"

#include <array>
#include <functional>
#include <optional>

namespace vi {

/// min_{u in Q1} max_{v in Q2} f(u, v) with f convex in u and concave in v.
struct SaddleProblem {
    /// max_sum: ||(u,v)|| = max(||u||, ||v||), dual ||s_u|| + ||s_v||.
    /// l2_product: ||(u,v)|| = sqrt(||u||^2 + ||v||^2), self-dual.
    enum class NormMode { max_sum, l2_product };

    using BlockGradient = std::function<Vector(const Vector& u, const Vector& v)>;
    using Value = std::function<double(const Vector& u, const Vector& v)>;

    BlockGradient grad_u;
    BlockGradient grad_v;
    Value value;  // optional
    FeasibleSet Q1;
    FeasibleSet Q2;
    NormMode norm_mode = NormMode::max_sum;

    Eigen::Index dim_u() const { return Q1.dim(); }
    Eigen::Index dim_v() const { return Q2.dim(); }
    FeasibleSet product_set() const { return FeasibleSet::product(Q1, Q2); }
    NormPair norm_pair() const;

    Vector u_part(const Point& x) const { return x.head(dim_u()); }
    Vector v_part(const Point& x) const { return x.tail(dim_v()); }
    Point join(const Vector& u, const Vector& v) const;
};

/// g(u, v) = (grad_u f(u, v), -grad_v f(u, v)) over Q1 x Q2.
Operator make_vi_operator(const SaddleProblem& sp);

/// Hölder constant of the assembled operator from its block constants:
/// the plain sum in max_sum mode, sqrt(2 sum L_ij^2) in l2_product mode.
double holder_constant_of_blocks(double L11, double L12, double L21, double L22, double nu,
                                 SaddleProblem::NormMode mode);

/// Per-block Hölder data for the mixed-smoothness case.
struct BlockHolder {
    double L;
    double nu;
};

/// Collapses blocks with different exponents onto nu = min nu_ij over a set of
/// diameter D_Q, rescaling each constant by D_Q^(nu_ij - nu).
HolderSpec mixed_smoothness_spec(const std::array<BlockHolder, 4>& blocks, double D_Q,
                                 SaddleProblem::NormMode mode);

/// Upper bound on max_v f(u^, v) - min_u f(u, v^) carried by a solve certificate.
double duality_gap_bound(const Certificate& cert);

/// f(u_hat, v) - f(u, v_hat); needs sp.value.
double primal_dual_gap(const SaddleProblem& sp, const Point& averaged, const Vector& u, const Vector& v);

/// Subgradient of ||x - a||_2, taking the zero vector at x = a.
Vector distance_subgradient(const Vector& x, const Vector& a);

struct Constraint {
    std::function<double(const Vector&)> value;
    Operator subgradient;
};

/// min f(x) s.t. phi_p(x) <= 0, x in Q.
struct ConstrainedProblem {
    std::function<double(const Vector&)> objective;
    Operator objective_subgradient;
    std::vector<Constraint> constraints;
    double lambda_radius = 0.0;
    std::optional<Point> slater_point;

    void validate() const;
};

/// Lagrangian saddle problem over Q x {lambda >= 0, ||lambda||_2 <= lambda_radius}.
SaddleProblem lagrangian_saddle(const ConstrainedProblem& cp, const FeasibleSet& Q);

}  // namespace vi
