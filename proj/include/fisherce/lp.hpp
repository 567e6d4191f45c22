#pragma once

#include "fisherce/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fisherce {

/// maximize c·x subject to A x <= b, x >= 0, with b >= 0 so that x = 0 is
/// feasible and no phase-one is needed.
struct LinearProgram {
    int variables = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rational> objective;

    int add_row(std::vector<Rational> coefficients, Rational bound);
};

enum class LpStatus { Optimal, Unbounded, TargetReached };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Rational value;
    std::vector<Rational> primal;
    /// One multiplier per row. Filled only for Optimal; y >= 0, yA >= c, y·b = value.
    std::vector<Rational> dual;
};

/// Exact dictionary simplex with Bland's rule. With `stop_above` set, returns
/// TargetReached as soon as a feasible vertex with objective > *stop_above is found.
LpSolution maximize(const LinearProgram& lp, const std::optional<Rational>& stop_above = std::nullopt);

/// Checks that `y` proves max c·x <= bound: y >= 0, yA >= c (componentwise), y·b <= bound.
bool verify_dual_bound(const LinearProgram& lp, std::span<const Rational> y, const Rational& bound);

} // namespace fisherce
