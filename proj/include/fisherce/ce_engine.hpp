#pragma once

#include "fisherce/lp.hpp"
#include "fisherce/market.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fisherce {

struct DemandVerdict {
    int agent = 0;
    bool affordable = false;
    /// A strictly preferred bundle the agent could also afford, if any.
    std::optional<Bundle> blocking;

    bool passes() const { return affordable && !blocking; }
};

struct CECertificate {
    Allocation allocation;
    PriceVector prices;
    std::vector<DemandVerdict> report;

    bool valid() const;
};

/// Affordable bundles with no strictly preferred affordable bundle, in mask order.
std::vector<Bundle> demanded_bundles(const OrdinalPreference& pref, const Rational& budget,
                                     const PriceVector& prices);

CECertificate verify_ce(const Market& market, const Allocation& allocation, const PriceVector& prices);

/// Raises the lowest-index item of each bundle until every agent pays exactly her
/// budget. Agents holding ∅ keep paying 0. Requires a valid CE.
PriceVector exhaust_budgets(const Market& market, const Allocation& allocation, const PriceVector& prices);

/// Bundles T with T ≻ S such that no T∖{j} is still ≻ S. Every strictly preferred
/// bundle contains one of these.
std::vector<Bundle> minimal_blocking_sets(const OrdinalPreference& pref, Bundle s);

/// The strict-inequality system behind supporting_prices, together with its
/// exact solution.
///
/// Variables are the m prices and e = B + δ with B the largest budget. Row i
/// (i < n) is p(S_i) <= b_i; each following row is p(T) >= b_i + δ for one
/// minimal blocking set T of agent `blocking[r - n].first`.
struct SupportAnalysis {
    LinearProgram program;
    std::vector<std::pair<int, Bundle>> blocking;
    Rational max_budget;
    /// Some δ > 0 is feasible; `prices` then verify as a CE.
    bool supported = false;
    std::optional<PriceVector> prices;
    Rational slack;
    /// On a negative answer: LP multipliers proving δ <= 0, already checked.
    std::vector<Rational> dual;
};

SupportAnalysis analyze_support(const Market& market, const Allocation& allocation);

std::optional<PriceVector> supporting_prices(const Market& market, const Allocation& allocation);

struct EnumerationLimits {
    std::uint64_t max_allocations = 1'000'000;
    int jobs = 1;
};

/// n^m, saturating at UINT64_MAX.
std::uint64_t allocation_count(int agent_count, int item_count);

/// The allocation at position `index` of the enumeration order: item 0 is the
/// most significant base-n digit.
Allocation allocation_at(int agent_count, int item_count, std::uint64_t index);

/// Complete CE existence check by enumeration. Returns the first valid
/// certificate in enumeration order, independent of `jobs`.
std::optional<CECertificate> find_ce_bruteforce(const Market& market, const EnumerationLimits& limits = {});

struct ParetoResult {
    bool optimal = true;
    std::optional<Allocation> dominating;
};

ParetoResult is_pareto_optimal(const Market& market, const Allocation& allocation,
                               const EnumerationLimits& limits = {});

} // namespace fisherce
