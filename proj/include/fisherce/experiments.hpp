#pragma once

#include "fisherce/ce_engine.hpp"
#include "fisherce/io.hpp"
#include "fisherce/market.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fisherce {

// --- the two-agent five-item fixture ---------------------------------------

/// Values for items A..E: a private part on {A, B} plus an additive tail on C, D, E.
CardinalValuation five_items_alice();
CardinalValuation five_items_bob();

/// The fixture with the given budgets; agents are named "alice" and "bob".
Market example_five_items(const Rational& alice_budget = Rational(11, 20), const Rational& bob_budget = Rational(9, 20));

/// The six allocations giving alice one of A, B plus two of C, D, E and bob the
/// rest, keyed by item name -> agent name.
std::vector<std::map<std::string, std::string>> five_items_split_allocations();

Allocation allocation_by_name(const Market& market, const std::map<std::string, std::string>& owner_of_item);

// --- budget grids -------------------------------------------------------------

/// The first `count` reduced fractions strictly inside (lo, hi), by increasing
/// denominator then numerator.
std::vector<Rational> farey_interior(const Rational& lo, const Rational& hi, int count, int max_denominator = 1000);

// --- scans ------------------------------------------------------------------------

enum class ScanOutcome { CeFound, NonexistenceCertified, ResourceLimited, Supported, NotSupported };

std::string to_string(ScanOutcome outcome);

struct ScanEntry {
    std::vector<Rational> budgets; // by agent name order of the report
    std::string provenance;
    ScanOutcome outcome = ScanOutcome::ResourceLimited;
    Json witness = nullptr; // certificate JSON when a CE was found
    std::string detail;
};

struct ScanReport {
    std::string experiment;
    std::vector<std::string> agents;
    Json params = Json::object();
    std::vector<ScanEntry> entries;
    /// Extra boolean findings, e.g. "pareto_optimal" or "inequality_chain".
    std::map<std::string, bool> checks;

    std::map<std::string, int> counts() const;
    Json to_json() const;
    std::string to_csv() const;
};

/// Runs the brute-force oracle once per budget profile. Profiles list budgets by
/// agent name order of `market.agents()`; each is applied with the market's
/// preferences. Resource limits are recorded per profile.
ScanReport nonexistence_scan(const Market& market, const std::vector<std::vector<Rational>>& profiles,
                             const EnumerationLimits& limits = {});

/// Normalized (b1, b2) profiles with b2 < b1 < (4/3) b2, for the five-item fixture.
std::vector<std::vector<Rational>> five_item_profiles(int count);

/// A nonnegative combination of linear constraints over prices p and budgets b.
/// Each constraint reads  Σ price_coeffs·p + Σ budget_coeffs·b  (> or >=) 0.
struct LinearFact {
    std::vector<Rational> price_coeffs;
    std::vector<Rational> budget_coeffs;
    bool strict = false;
    std::string reason;
};

struct BudgetFreeRefutation {
    std::vector<LinearFact> facts;
    std::vector<Rational> multipliers;
};

/// True iff the multipliers are nonnegative, some strict fact has a positive
/// multiplier, and the weighted sum vanishes identically: then no prices and no
/// budgets satisfy all facts.
bool verify_refutation(const BudgetFreeRefutation& r);

/// Two agents a, b holding S_a, S_b. If a strictly prefers both T and its
/// complement to S_a while b strictly prefers S_a to S_b, every CE would need
/// p(T) > b_a, p(M-T) > b_a, p(S_a) > b_b, p(S_a) <= b_a, p(S_b) <= b_b, and the
/// weights (1, 1, 1, 2, 1) sum these to 0 > 0. Returns nothing when no such
/// roles and T exist. Coefficients are over canonical agent indices.
std::optional<BudgetFreeRefutation> exchange_refutation(const Market& market, const Allocation& allocation);

/// Checks Pareto optimality once, then asks supporting_prices on every profile
/// (budgets by agent order of `market.agents()`), and verifies the budget-free
/// refutation. Agents are matched by name, so canonical reordering is harmless.
ScanReport second_welfare_probe(const Market& market, const std::map<std::string, std::string>& owner_of_item,
                                const std::vector<std::vector<Rational>>& profiles,
                                const EnumerationLimits& limits = {});

// --- randomness ------------------------------------------------------------------

/// Uniform integer in [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Adds noise k/10^9 with |k/10^9| < eta to each budget, renormalizes to sum 1
/// and redraws until the budgets are pairwise distinct. Needs
/// 10^-9 < eta < min b / 2.
Budgets perturb_budgets(const Budgets& b, const Rational& eta, std::uint64_t seed);

enum class PreferenceKind { General, Additive, Lexicographic, Leveled };

PreferenceKind parse_preference_kind(std::string_view name);
std::string to_string(PreferenceKind kind);

struct RandomMarketParams {
    int agents = 2;
    int items = 3;
    PreferenceKind kind = PreferenceKind::General;
    bool strict = true;
    /// Budgets by agent; random pairwise distinct normalized budgets when empty.
    std::vector<Rational> budgets;
};

Market random_market(const RandomMarketParams& params, std::uint64_t seed);

// --- tâtonnement ---------------------------------------------------------------

struct TatonnementParams {
    int max_iters = 500;
    Rational step = Rational(1, 10);
    /// Cap on demanded-bundle combinations tried per round.
    std::uint64_t max_combinations = 10'000;
};

/// Best-effort price adjustment. Returns a certificate only when it verifies;
/// nothing means inconclusive, never nonexistence.
std::optional<CECertificate> tatonnement(const Market& market, const TatonnementParams& params = {});

} // namespace fisherce
