#pragma once

#include "fisherce/ce_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fisherce {

struct SolverPlan {
    std::string case_label;
    std::optional<Rational> p_star;
    std::optional<int> k1;
    std::optional<int> k2;
    std::optional<Rational> delta;
    std::optional<Rational> epsilon;
    /// How a free slack was instantiated, e.g. "epsilon = midpoint of (0, b1-b2-b3)".
    std::vector<std::string> notes;
};

struct ConstructiveResult {
    CECertificate certificate;
    SolverPlan plan;
};

/// m <= 3 items, any number of agents. Needs b1 > b2, and b2 > b3 when a third
/// agent exists and m >= 2.
ConstructiveResult solve_three_items(const Market& market);

/// Two agents, four items, b1 > b2 and b1/b2 not in {4, 3, 3/2}.
ConstructiveResult solve_four_items(const Market& market);

/// Two agents with leveled preferences and m·s1 not an integer, where s are the
/// budget shares.
ConstructiveResult solve_leveled_two_agents(const Market& market);

/// Lexicographic preferences, pairwise distinct budgets: serial dictatorship.
ConstructiveResult solve_lexicographic(const Market& market);

struct SolveOutcome {
    std::string strategy; // "lexicographic", "leveled", "three-items", "four-items", "brute-force"
    std::optional<CECertificate> certificate; // empty: nonexistence certified by enumeration
    std::optional<SolverPlan> plan;
    /// Why each earlier strategy was skipped.
    std::vector<std::string> skipped;
};

SolveOutcome solve(const Market& market, const EnumerationLimits& limits = {});

} // namespace fisherce
