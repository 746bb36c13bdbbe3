#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace vi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Primal points and dual vectors share storage; the split is by role only.
using Point = Vector;
using DualVector = Vector;

// Error taxonomy. Every failure the library reports derives from vi::Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct ConfigurationError : Error {
    using Error::Error;
};
struct DivergenceError : Error {
    DivergenceError(const std::string& what, double last_M) : Error(what), last_M(last_M) {}
    double last_M;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x)
{
    return x.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x, const char* what)
{
    if (!x.allFinite()) {
        throw ContractError(std::string(what) + ": non-finite entry");
    }
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b) {
        throw ContractError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
    }
}

/// Primal/dual norm pair on E.
///
/// `euclidean` is self-dual. `product_max` splits x = (u, v) at `split` and uses
/// ||x|| = max(||u||_2, ||v||_2) with dual ||s||_* = ||s_u||_2 + ||s_v||_2.
struct NormPair {
    enum class Kind { euclidean, product_max };

    Kind kind = Kind::euclidean;
    Eigen::Index split = 0;

    static NormPair euclidean() { return {}; }
    static NormPair product_max(Eigen::Index split) { return {Kind::product_max, split}; }
};

namespace detail {
inline void check_split(const NormPair& np, Eigen::Index dim)
{
    if (np.kind == NormPair::Kind::product_max && (np.split < 0 || np.split > dim)) {
        throw ContractError("norm: product split " + std::to_string(np.split) +
                            " outside dimension " + std::to_string(dim));
    }
}
}  // namespace detail

template <typename Derived>
double norm(const NormPair& np, const Eigen::MatrixBase<Derived>& x)
{
    detail::check_split(np, x.size());
    if (np.kind == NormPair::Kind::euclidean) {
        return x.norm();
    }
    const Eigen::Index tail = x.size() - np.split;
    return std::max(x.head(np.split).norm(), x.tail(tail).norm());
}

template <typename Derived>
double dual_norm(const NormPair& np, const Eigen::MatrixBase<Derived>& s)
{
    detail::check_split(np, s.size());
    if (np.kind == NormPair::Kind::euclidean) {
        return s.norm();
    }
    const Eigen::Index tail = s.size() - np.split;
    return s.head(np.split).norm() + s.tail(tail).norm();
}

/// Accuracy target and error levels handed to the solvers.
struct ToleranceBudget {
    double eps = 1e-3;       // target accuracy
    double delta_u = 0.0;    // uncontrolled oracle error
    double delta_pu = 0.0;   // uncontrolled prox error
    double prox_tol = 0.0;   // controlled prox error

    void validate() const;
};

/// One accepted outer iteration of the mirror-prox loop.
struct IterationRecord {
    double M = 0.0;
    int inner_trials = 0;
    long oracle_calls = 0;
    double cumulative_inverse = 0.0;  // S_k after this iteration
    Point w;                          // empty unless iterates are kept
    DualVector gw;                    // oracle value at w, same retention rule
};

struct SolveTrace {
    std::vector<IterationRecord> records;

    std::size_t iterations() const { return records.size(); }
    long total_oracle_calls() const;
    double inverse_sum() const { return records.empty() ? 0.0 : records.back().cumulative_inverse; }
    double max_M() const;
};

}  // namespace vi
