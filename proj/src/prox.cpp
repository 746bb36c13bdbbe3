#include "vi/prox.hpp"

#include <algorithm>
#include <numeric>

namespace vi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Point effective_center(const ProxSetup& setup, Eigen::Index dim)
{
    if (setup.center.size() == 0) {
        return Point::Zero(dim);
    }
    require_same_dim(setup.center.size(), dim, "prox setup center");
    return setup.center;
}

void require_entropy_interior(const Point& z)
{
    if ((z.array() <= 0.0).any()) {
        throw DomainError("entropy setup: reference point must be strictly positive");
    }
}

// Euclidean projection onto the probability simplex (sort and threshold).
Point project_simplex(const Point& y)
{
    const Eigen::Index n = y.size();
    std::vector<double> sorted(y.data(), y.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += sorted[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0.0) {
            theta = t;
        }
    }
    return (y.array() - theta).max(0.0).matrix();
}

}  // namespace

double ProxSetup::value(const Point& x) const
{
    switch (kind) {
    case Kind::euclidean_half_sq: {
        const Point c = effective_center(*this, x.size());
        return 0.5 * (x - c).squaredNorm();
    }
    case Kind::entropy: {
        double v = std::log(static_cast<double>(x.size()));
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] > 0.0) {
                v += x[i] * std::log(x[i]);
            }
        }
        return v;
    }
    }
    return 0.0;
}

DualVector ProxSetup::gradient(const Point& x) const
{
    switch (kind) {
    case Kind::euclidean_half_sq:
        return x - effective_center(*this, x.size());
    case Kind::entropy:
        require_entropy_interior(x);
        return (x.array().max(kEntropyFloor).log() + 1.0).matrix();
    }
    return {};
}

FeasibleSet FeasibleSet::ball(Point center, double radius)
{
    if (!(radius > 0.0) || center.size() == 0) {
        throw ContractError("ball: radius must be positive and dimension non-zero");
    }
    require_finite(center, "ball center");
    return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(Eigen::Index dim)
{
    if (dim < 1) {
        throw ContractError("simplex: dimension must be positive");
    }
    return FeasibleSet(Simplex{dim});
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi)
{
    require_same_dim(lo.size(), hi.size(), "box bounds");
    if (lo.size() == 0 || (lo.array() > hi.array()).any()) {
        throw ContractError("box: need lo <= hi componentwise and dimension non-zero");
    }
    return FeasibleSet(Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::nonnegative_ball(Eigen::Index dim, double radius)
{
    if (dim < 0 || !(radius > 0.0)) {
        throw ContractError("nonnegative ball: radius must be positive");
    }
    return FeasibleSet(NonnegativeBall{dim, radius});
}

FeasibleSet FeasibleSet::product(FeasibleSet first, FeasibleSet second)
{
    return FeasibleSet(Product{std::make_shared<const FeasibleSet>(std::move(first)),
                               std::make_shared<const FeasibleSet>(std::move(second))});
}

Eigen::Index FeasibleSet::dim() const
{
    return std::visit(overloaded{
                          [](const Ball& b) { return b.center.size(); },
                          [](const Simplex& s) { return s.dim; },
                          [](const Box& b) { return b.lo.size(); },
                          [](const NonnegativeBall& b) { return b.dim; },
                          [](const Product& p) { return p.first->dim() + p.second->dim(); },
                      },
                      shape_);
}

bool FeasibleSet::contains(const Point& x, double slack) const
{
    if (x.size() != dim() || !x.allFinite()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const Ball& b) { return (x - b.center).norm() <= b.radius + slack; },
            [&](const Simplex&) {
                return (x.array() >= -slack).all() && std::abs(x.sum() - 1.0) <= slack;
            },
            [&](const Box& b) {
                return (x.array() >= b.lo.array() - slack).all() &&
                       (x.array() <= b.hi.array() + slack).all();
            },
            [&](const NonnegativeBall& b) {
                return (x.array() >= -slack).all() && x.norm() <= b.radius + slack;
            },
            [&](const Product& p) {
                const Eigen::Index n1 = p.first->dim();
                return p.first->contains(x.head(n1), slack) &&
                       p.second->contains(x.tail(x.size() - n1), slack);
            },
        },
        shape_);
}

Point FeasibleSet::project(const Point& y) const
{
    require_same_dim(y.size(), dim(), "project");
    return std::visit(overloaded{
                          [&](const Ball& b) -> Point {
                              const Point d = y - b.center;
                              const double r = d.norm();
                              if (r <= b.radius) {
                                  return y;
                              }
                              return b.center + (b.radius / r) * d;
                          },
                          [&](const Simplex&) -> Point { return project_simplex(y); },
                          [&](const Box& b) -> Point {
                              return y.cwiseMax(b.lo).cwiseMin(b.hi);
                          },
                          [&](const NonnegativeBall& b) -> Point {
                              // Clamp then shrink; exact for a ball centred at the origin.
                              Point x = y.cwiseMax(0.0);
                              const double r = x.norm();
                              if (r > b.radius) {
                                  x *= b.radius / r;
                              }
                              return x;
                          },
                          [&](const Product& p) -> Point {
                              const Eigen::Index n1 = p.first->dim();
                              Point x(y.size());
                              x.head(n1) = p.first->project(y.head(n1));
                              x.tail(y.size() - n1) = p.second->project(y.tail(y.size() - n1));
                              return x;
                          },
                      },
                      shape_);
}

double FeasibleSet::diameter_bound() const
{
    return std::visit(
        overloaded{
            [](const Ball& b) { return 2.0 * b.radius; },
            [](const Simplex& s) { return s.dim > 1 ? std::sqrt(2.0) : 0.0; },
            [](const Box& b) { return (b.hi - b.lo).norm(); },
            [](const NonnegativeBall& b) {
                return b.dim > 1 ? std::sqrt(2.0) * b.radius : b.dim == 1 ? b.radius : 0.0;
            },
            [](const Product& p) { return std::hypot(p.first->diameter_bound(), p.second->diameter_bound()); },
        },
        shape_);
}

double FeasibleSet::farthest_distance(const Point& pt) const
{
    require_same_dim(pt.size(), dim(), "farthest_distance");
    return std::visit(
        overloaded{
            [&](const Ball& b) { return (pt - b.center).norm() + b.radius; },
            [&](const Simplex& s) {
                // A convex function peaks at a vertex.
                double best = 0.0;
                const double base = pt.squaredNorm();
                for (Eigen::Index i = 0; i < s.dim; ++i) {
                    best = std::max(best, base - 2.0 * pt[i] + 1.0);
                }
                return std::sqrt(std::max(best, 0.0));
            },
            [&](const Box& b) {
                return (pt - b.lo).cwiseAbs().cwiseMax((pt - b.hi).cwiseAbs()).norm();
            },
            [&](const NonnegativeBall& b) { return pt.norm() + b.radius; },
            [&](const Product& p) {
                const Eigen::Index n1 = p.first->dim();
                return std::hypot(p.first->farthest_distance(pt.head(n1)),
                                  p.second->farthest_distance(pt.tail(pt.size() - n1)));
            },
        },
        shape_);
}

void require_compatible(const ProxSetup& setup, const FeasibleSet& set)
{
    if (setup.kind == ProxSetup::Kind::entropy) {
        if (!std::holds_alternative<FeasibleSet::Simplex>(set.shape())) {
            throw ConfigurationError("entropy prox setup requires a simplex feasible set");
        }
        if (setup.center.size() != 0 || setup.scale != 1.0) {
            throw ConfigurationError("entropy prox setup does not support recentering");
        }
        return;
    }
    if (setup.center.size() != 0) {
        require_same_dim(setup.center.size(), set.dim(), "prox setup center");
    }
    if (!(setup.scale > 0.0)) {
        throw ConfigurationError("prox setup scale must be positive");
    }
}

double bregman(const ProxSetup& setup, const Point& z, const Point& x)
{
    require_same_dim(z.size(), x.size(), "bregman");
    switch (setup.kind) {
    case ProxSetup::Kind::euclidean_half_sq:
        return 0.5 * (x - z).squaredNorm();
    case ProxSetup::Kind::entropy: {
        require_entropy_interior(z);
        double v = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] > 0.0) {
                v += x[i] * std::log(x[i] / z[i]);
            }
            v += z[i] - x[i];
        }
        return std::max(v, 0.0);
    }
    }
    return 0.0;
}

Point prox_map(const ProxSetup& setup, const FeasibleSet& set, const Point& z, const DualVector& g,
               double M, double tol)
{
    if (!(M > 0.0) || !std::isfinite(M)) {
        throw ContractError("prox_map: M must be positive and finite");
    }
    if (!(tol >= 0.0)) {
        throw ContractError("prox_map: tol must be non-negative");
    }
    require_same_dim(z.size(), set.dim(), "prox_map point");
    require_same_dim(g.size(), set.dim(), "prox_map dual vector");
    require_compatible(setup, set);

    switch (setup.kind) {
    case ProxSetup::Kind::euclidean_half_sq:
        // grad d(x) - grad d(z) = x - z, so the prox step is a projected gradient step.
        return set.project(z - g / M);
    case ProxSetup::Kind::entropy: {
        require_entropy_interior(z);
        Vector logits = z.array().log().matrix() - g / M;
        logits.array() -= logits.maxCoeff();
        Point x = logits.array().exp().matrix();
        x /= x.sum();
        return x.cwiseMax(kEntropyFloor);
    }
    }
    return z;
}

SupportResult support_max(const FeasibleSet& set, const DualVector& s)
{
    require_same_dim(s.size(), set.dim(), "support_max");
    require_finite(s, "support_max");
    return std::visit(
        overloaded{
            [&](const FeasibleSet::Ball& b) -> SupportResult {
                const double ns = s.norm();
                if (ns == 0.0) {
                    return {0.0, b.center};
                }
                return {s.dot(b.center) + b.radius * ns, b.center + (b.radius / ns) * s};
            },
            [&](const FeasibleSet::Simplex& sx) -> SupportResult {
                Eigen::Index best = 0;
                for (Eigen::Index i = 1; i < sx.dim; ++i) {
                    if (s[i] > s[best]) {
                        best = i;
                    }
                }
                return {s[best], Point::Unit(sx.dim, best)};
            },
            [&](const FeasibleSet::Box& b) -> SupportResult {
                Point arg = (s.array() > 0.0).select(b.hi, b.lo);
                return {s.dot(arg), arg};
            },
            [&](const FeasibleSet::NonnegativeBall& b) -> SupportResult {
                const Vector pos = s.cwiseMax(0.0);
                const double np = pos.norm();
                if (np == 0.0) {
                    return {0.0, Point::Zero(b.dim)};
                }
                return {b.radius * np, (b.radius / np) * pos};
            },
            [&](const FeasibleSet::Product& p) -> SupportResult {
                const Eigen::Index n1 = p.first->dim();
                const Eigen::Index n2 = s.size() - n1;
                auto a = support_max(*p.first, s.head(n1));
                auto c = support_max(*p.second, s.tail(n2));
                Point arg(s.size());
                arg << a.argmax, c.argmax;
                return {a.value + c.value, arg};
            },
        },
        set.shape());
}

double omega_bound(const ProxSetup& setup, const FeasibleSet& set)
{
    switch (setup.kind) {
    case ProxSetup::Kind::euclidean_half_sq:
        return 1.0;
    case ProxSetup::Kind::entropy:
        return 2.0 * std::log(static_cast<double>(set.dim()));
    }
    return 0.0;
}

Point prox_center(const ProxSetup& setup, const FeasibleSet& set)
{
    require_compatible(setup, set);
    switch (setup.kind) {
    case ProxSetup::Kind::euclidean_half_sq:
        return set.project(effective_center(setup, set.dim()));
    case ProxSetup::Kind::entropy:
        return Point::Constant(set.dim(), 1.0 / static_cast<double>(set.dim()));
    }
    return {};
}

double bregman_radius_bound(const ProxSetup& setup, const FeasibleSet& set)
{
    require_compatible(setup, set);
    switch (setup.kind) {
    case ProxSetup::Kind::euclidean_half_sq: {
        const double r = set.farthest_distance(prox_center(setup, set));
        return 0.5 * r * r;
    }
    case ProxSetup::Kind::entropy:
        // KL from the uniform point peaks at a vertex.
        return std::log(static_cast<double>(set.dim()));
    }
    return 0.0;
}

}  // namespace vi
