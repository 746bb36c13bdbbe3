#pragma once

#include "vi/core.hpp"

#include <memory>
#include <variant>

namespace vi {

/// Distance-generating function d and its gradient selection.
///
/// euclidean_half_sq: d(x) = scale^2 * 0.5 * ||(x - center) / scale||^2, which
///   equals 0.5 * ||x - center||^2 for any scale; the restarted solver relies on
///   this form being 1-strongly convex after recentering.
/// entropy: d(x) = sum x_i ln x_i + ln n on the probability simplex, minimized
///   at the uniform point. Only valid together with a simplex feasible set.
struct ProxSetup {
    enum class Kind { euclidean_half_sq, entropy };

    Kind kind = Kind::euclidean_half_sq;
    Point center;  // empty means the origin
    double scale = 1.0;

    static ProxSetup euclidean() { return {}; }
    static ProxSetup euclidean(Point center) { return {Kind::euclidean_half_sq, std::move(center), 1.0}; }
    static ProxSetup entropy() { return {Kind::entropy, {}, 1.0}; }
    /// d_p(x) = R_p^2 d((x - x_p) / R_p) for the restart stages.
    static ProxSetup recentered(Point center, double radius)
    {
        return {Kind::euclidean_half_sq, std::move(center), radius};
    }

    double value(const Point& x) const;
    DualVector gradient(const Point& x) const;
};

// Iterates under the entropy setup are floored here so logs stay finite.
inline constexpr double kEntropyFloor = 1e-300;

class FeasibleSet {
public:
    struct Ball {
        Point center;
        double radius;
    };
    struct Simplex {
        Eigen::Index dim;
    };
    struct Box {
        Vector lo, hi;
    };
    /// {x >= 0, ||x||_2 <= radius}; used for compactified Lagrange multipliers.
    struct NonnegativeBall {
        Eigen::Index dim;
        double radius;
    };
    struct Product {
        std::shared_ptr<const FeasibleSet> first, second;
    };
    using Shape = std::variant<Ball, Simplex, Box, NonnegativeBall, Product>;

    static FeasibleSet ball(Point center, double radius);
    static FeasibleSet unit_ball(Eigen::Index dim) { return ball(Point::Zero(dim), 1.0); }
    static FeasibleSet simplex(Eigen::Index dim);
    static FeasibleSet box(Vector lo, Vector hi);
    static FeasibleSet nonnegative_ball(Eigen::Index dim, double radius);
    static FeasibleSet product(FeasibleSet first, FeasibleSet second);

    const Shape& shape() const { return shape_; }
    Eigen::Index dim() const;

    bool contains(const Point& x, double slack = 0.0) const;
    /// Euclidean projection onto the set.
    Point project(const Point& y) const;
    /// Upper bound on max ||x - y||_2 over the set.
    double diameter_bound() const;
    /// max over members x of ||x - p||_2 (exact except for NonnegativeBall, where it is an upper bound).
    double farthest_distance(const Point& p) const;

private:
    explicit FeasibleSet(Shape s) : shape_(std::move(s)) {}
    Shape shape_;
};

/// V[z](x) = d(x) - d(z) - <grad d(z), x - z>.
double bregman(const ProxSetup& setup, const Point& z, const Point& x);

/// Closed-form solution of min_{x in Q} <g, x> + M V[z](x).
///
/// The result satisfies <g + M(grad d(x) - grad d(z)), u - x> >= -tol for all
/// u in Q; the shipped solvers meet that with tol = 0 up to rounding.
Point prox_map(const ProxSetup& setup, const FeasibleSet& set, const Point& z, const DualVector& g,
               double M, double tol = 0.0);

struct SupportResult {
    double value;
    Point argmax;
};

/// max_{u in Q} <s, u> and a maximizer. Simplex ties go to the lowest index.
SupportResult support_max(const FeasibleSet& set, const DualVector& s);

/// Omega with d(x) <= Omega / 2 on the unit ball (entropy: conservative 2 ln n).
double omega_bound(const ProxSetup& setup, const FeasibleSet& set);

/// z_0 = argmin_{x in Q} d(x).
Point prox_center(const ProxSetup& setup, const FeasibleSet& set);

/// Upper bound on max_{u in Q} V[z_0](u) with z_0 = prox_center(setup, set).
double bregman_radius_bound(const ProxSetup& setup, const FeasibleSet& set);

/// Throws ConfigurationError unless setup and set have a closed-form prox-map.
void require_compatible(const ProxSetup& setup, const FeasibleSet& set);

}  // namespace vi
