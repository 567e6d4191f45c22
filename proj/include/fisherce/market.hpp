#pragma once

#include "fisherce/bundle.hpp"
#include "fisherce/preference.hpp"
#include "fisherce/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fisherce {

inline constexpr int kDefaultItemCap = 12;

/// How an agent's preference was written down. Kept so markets serialize back in
/// the form they were read, and so solvers can use a known encoding directly.
namespace source {
struct Ordinal {};
struct Cardinal {
    CardinalValuation valuation;
};
struct Additive {
    std::vector<Rational> item_values;
};
struct Lexicographic {
    std::vector<int> ranking; // most preferred first
};
struct Leveled {
    std::vector<std::vector<std::vector<Bundle>>> by_cardinality;
};
} // namespace source

using PreferenceSource =
    std::variant<source::Ordinal, source::Cardinal, source::Additive, source::Lexicographic, source::Leveled>;

struct Agent {
    std::string name;
    Rational budget;
    OrdinalPreference preference;
    PreferenceSource source = source::Ordinal{};

    static Agent ordinal(std::string name, Rational budget, OrdinalPreference pref);
    static Agent cardinal(std::string name, Rational budget, CardinalValuation v);
    static Agent additive(std::string name, Rational budget, std::vector<Rational> item_values);
    static Agent lexicographic(std::string name, Rational budget, int item_count, std::vector<int> ranking);
    static Agent leveled(std::string name, Rational budget, int item_count,
                         std::vector<std::vector<std::vector<Bundle>>> by_cardinality);
};

/// Splits a key such as "AC" into the named items, in any order. Throws
/// InvalidBundle if the key does not decompose or decomposes in two ways.
Bundle parse_bundle_key(const std::vector<std::string>& items, std::string_view key);

/// Strictly positive budgets kept in descending order.
class Budgets {
  public:
    explicit Budgets(std::vector<Rational> values);

    std::span<const Rational> values() const { return values_; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    Rational total() const;
    bool normalized() const { return total() == 1; }
    Budgets normalize() const;
    bool pairwise_distinct() const;

  private:
    std::vector<Rational> values_;
};

/// n agents with monotone preferences over m named items.
///
/// Agents are stored in canonical order: descending budget, ties kept in input
/// order. Every index-based API (allocations, verdicts, solvers) uses canonical
/// indices; input_index() maps back to the order the agents were given in.
class Market {
  public:
    Market(std::vector<std::string> items, std::vector<Agent> agents, int item_cap = kDefaultItemCap);

    int item_count() const { return static_cast<int>(items_.size()); }
    int agent_count() const { return static_cast<int>(agents_.size()); }

    const std::vector<std::string>& items() const { return items_; }
    const std::vector<Agent>& agents() const { return agents_; }
    const Agent& agent(int i) const { return agents_[static_cast<std::size_t>(i)]; }
    const Rational& budget(int i) const { return agent(i).budget; }
    const OrdinalPreference& preference(int i) const { return agent(i).preference; }
    Budgets budgets() const;
    Rational total_budget() const;

    int input_index(int canonical) const { return input_index_[static_cast<std::size_t>(canonical)]; }
    /// Canonical index of the named agent; throws InvalidInput if absent.
    int agent_index(std::string_view name) const;
    int item_index(std::string_view name) const;

    /// Concatenated item names in item order ("" for the empty bundle).
    std::string bundle_name(Bundle s) const;
    /// Parses a concatenated bundle key; any order of item names is accepted,
    /// ambiguous keys are rejected.
    Bundle parse_bundle_key(std::string_view key) const;

    /// Same preferences with new budgets, given per canonical agent index. The
    /// result is re-canonicalized, so agent indices may move.
    Market with_budgets(std::span<const Rational> budgets) const;
    /// Budgets scaled to sum to 1.
    Market normalized() const;

  private:
    std::vector<std::string> items_;
    std::vector<Agent> agents_;
    std::vector<int> input_index_;
    int item_cap_ = kDefaultItemCap;
};

/// A full assignment of items to agents: every item has exactly one owner.
/// Agents may receive the empty bundle.
class Allocation {
  public:
    Allocation(int agent_count, std::vector<int> owner);
    static Allocation from_bundles(int item_count, std::span<const Bundle> bundles);

    int agent_count() const { return agent_count_; }
    int item_count() const { return static_cast<int>(owner_.size()); }
    int owner(int item) const { return owner_[static_cast<std::size_t>(item)]; }
    std::span<const int> owners() const { return owner_; }
    Bundle bundle(int agent) const;
    std::vector<Bundle> bundles() const;

    friend bool operator==(const Allocation&, const Allocation&) = default;

  private:
    int agent_count_ = 0;
    std::vector<int> owner_;
};

/// Nonnegative item prices.
class PriceVector {
  public:
    PriceVector() = default;
    explicit PriceVector(std::vector<Rational> prices);

    std::size_t size() const { return prices_.size(); }
    const Rational& operator[](std::size_t j) const { return prices_[j]; }
    std::span<const Rational> values() const { return prices_; }
    Rational price(Bundle s) const;

    friend bool operator==(const PriceVector&, const PriceVector&) = default;

  private:
    std::vector<Rational> prices_;
};

} // namespace fisherce
