#include "vi/core.hpp"

#include <algorithm>

namespace vi {

void ToleranceBudget::validate() const
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ContractError("budget: eps must be positive and finite");
    }
    if (!(delta_u >= 0.0) || !(delta_pu >= 0.0) || !(prox_tol >= 0.0)) {
        throw ContractError("budget: delta_u, delta_pu and prox_tol must be non-negative");
    }
}

long SolveTrace::total_oracle_calls() const
{
    long total = 0;
    for (const auto& r : records) {
        total += r.oracle_calls;
    }
    return total;
}

double SolveTrace::max_M() const
{
    double m = 0.0;
    for (const auto& r : records) {
        m = std::max(m, r.M);
    }
    return m;
}

}  // namespace vi
