#include "fisherce/market.hpp"

#include "fisherce/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fisherce {

Agent Agent::ordinal(std::string name, Rational budget, OrdinalPreference pref) {
    return Agent{std::move(name), std::move(budget), std::move(pref), source::Ordinal{}};
}

Agent Agent::cardinal(std::string name, Rational budget, CardinalValuation v) {
    auto pref = valuation_to_preference(v);
    return Agent{std::move(name), std::move(budget), std::move(pref), source::Cardinal{std::move(v)}};
}

Agent Agent::additive(std::string name, Rational budget, std::vector<Rational> item_values) {
    for (const auto& u : item_values)
        if (u < 0)
            throw InvalidInput("agent " + name + ": additive item values must be nonnegative");
    auto pref = valuation_to_preference(CardinalValuation::additive(item_values));
    return Agent{std::move(name), std::move(budget), std::move(pref), source::Additive{std::move(item_values)}};
}

Agent Agent::lexicographic(std::string name, Rational budget, int item_count, std::vector<int> ranking) {
    auto pref = lexicographic_preference(item_count, ranking);
    return Agent{std::move(name), std::move(budget), std::move(pref), source::Lexicographic{std::move(ranking)}};
}

Agent Agent::leveled(std::string name, Rational budget, int item_count,
                     std::vector<std::vector<std::vector<Bundle>>> by_cardinality) {
    auto pref = leveled_preference(item_count, by_cardinality);
    return Agent{std::move(name), std::move(budget), std::move(pref), source::Leveled{std::move(by_cardinality)}};
}

Budgets::Budgets(std::vector<Rational> values) : values_(std::move(values)) {
    for (const auto& b : values_)
        if (b <= 0)
            throw InvalidInput("budget " + to_string(b) + " is not strictly positive");
    std::stable_sort(values_.begin(), values_.end(), [](const Rational& a, const Rational& b) { return a > b; });
}

Rational Budgets::total() const {
    Rational sum = 0;
    for (const auto& b : values_)
        sum += b;
    return sum;
}

Budgets Budgets::normalize() const {
    Rational sum = total();
    std::vector<Rational> scaled;
    scaled.reserve(values_.size());
    for (const auto& b : values_)
        scaled.emplace_back(b / sum);
    return Budgets(std::move(scaled));
}

bool Budgets::pairwise_distinct() const {
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i - 1] == values_[i])
            return false;
    return true;
}

Market::Market(std::vector<std::string> items, std::vector<Agent> agents, int item_cap)
    : items_(std::move(items)), item_cap_(item_cap) {
    if (items_.empty())
        throw InvalidInput("market needs at least one item");
    if (agents.empty())
        throw InvalidInput("market needs at least one agent");
    if (item_cap > kMaxRepresentableItems)
        item_cap_ = kMaxRepresentableItems;
    if (item_count() > item_cap_)
        throw InvalidInput("market has " + std::to_string(item_count()) + " items; the cap is " +
                           std::to_string(item_cap_));
    std::set<std::string> seen;
    for (const auto& name : items_) {
        if (name.empty())
            throw InvalidInput("item names must be non-empty");
        if (!seen.insert(name).second)
            throw InvalidInput("duplicate item name \"" + name + "\"");
    }
    seen.clear();
    auto braces = [&](Bundle b) {
        std::string out = "{";
        for (int j : b.items())
            out += (out.size() > 1 ? "," : "") + items_[static_cast<std::size_t>(j)];
        return out + "}";
    };
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const Agent& a = agents[k];
        const std::string where = "agents[" + std::to_string(k) + "] (\"" + a.name + "\"): ";
        if (!seen.insert(a.name).second)
            throw InvalidInput("duplicate agent name \"" + a.name + "\"");
        if (a.budget <= 0)
            throw InvalidInput(where + "budget " + to_string(a.budget) + " is not strictly positive");
        if (a.preference.item_count() != item_count())
            throw InvalidInput(where + "preference covers " + std::to_string(a.preference.item_count()) +
                               " items, market has " + std::to_string(item_count()));
        if (auto bad = check_monotone(a.preference); !bad.empty())
            throw InvalidInput(where + "preference is not monotone: " + braces(bad.front().first) +
                               " is preferred to its superset " + braces(bad.front().second));
    }

    std::vector<int> order(agents.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return agents[static_cast<std::size_t>(a)].budget > agents[static_cast<std::size_t>(b)].budget;
    });
    agents_.reserve(agents.size());
    for (int k : order)
        agents_.push_back(std::move(agents[static_cast<std::size_t>(k)]));
    input_index_ = std::move(order);
}

Budgets Market::budgets() const {
    std::vector<Rational> values;
    for (const auto& a : agents_)
        values.push_back(a.budget);
    return Budgets(std::move(values));
}

Rational Market::total_budget() const {
    Rational sum = 0;
    for (const auto& a : agents_)
        sum += a.budget;
    return sum;
}

int Market::agent_index(std::string_view name) const {
    for (int i = 0; i < agent_count(); ++i)
        if (agent(i).name == name)
            return i;
    throw InvalidInput("unknown agent \"" + std::string(name) + "\"");
}

int Market::item_index(std::string_view name) const {
    for (int j = 0; j < item_count(); ++j)
        if (items_[static_cast<std::size_t>(j)] == name)
            return j;
    throw InvalidInput("unknown item \"" + std::string(name) + "\"");
}

std::string Market::bundle_name(Bundle s) const {
    std::string out;
    for (int j : s.items())
        out += items_[static_cast<std::size_t>(j)];
    return out;
}

namespace {

void decompose(std::string_view rest, Bundle acc, const std::vector<std::string>& items, std::set<Bundle>& found) {
    if (found.size() > 1)
        return;
    if (rest.empty()) {
        found.insert(acc);
        return;
    }
    for (std::size_t j = 0; j < items.size(); ++j) {
        const auto& name = items[j];
        if (acc.contains(static_cast<int>(j)) || rest.substr(0, name.size()) != name)
            continue;
        decompose(rest.substr(name.size()), acc.with(static_cast<int>(j)), items, found);
    }
}

} // namespace

Bundle parse_bundle_key(const std::vector<std::string>& items, std::string_view key) {
    std::set<Bundle> found;
    decompose(key, Bundle{}, items, found);
    if (found.empty())
        throw InvalidBundle("\"" + std::string(key) + "\" is not a concatenation of distinct item names");
    if (found.size() > 1)
        throw InvalidBundle("bundle key \"" + std::string(key) + "\" is ambiguous");
    return *found.begin();
}

Bundle Market::parse_bundle_key(std::string_view key) const { return fisherce::parse_bundle_key(items_, key); }

Market Market::with_budgets(std::span<const Rational> budgets) const {
    if (static_cast<int>(budgets.size()) != agent_count())
        throw InvalidInput("expected " + std::to_string(agent_count()) + " budgets, got " +
                           std::to_string(budgets.size()));
    std::vector<Agent> copy = agents_;
    for (std::size_t i = 0; i < copy.size(); ++i)
        copy[i].budget = budgets[i];
    return Market(items_, std::move(copy), item_cap_);
}

Market Market::normalized() const {
    Rational total = total_budget();
    std::vector<Rational> scaled;
    for (const auto& a : agents_)
        scaled.emplace_back(a.budget / total);
    return with_budgets(scaled);
}

Allocation::Allocation(int agent_count, std::vector<int> owner) : agent_count_(agent_count), owner_(std::move(owner)) {
    if (agent_count <= 0)
        throw InvalidInput("allocation needs at least one agent");
    for (std::size_t j = 0; j < owner_.size(); ++j)
        if (owner_[j] < 0 || owner_[j] >= agent_count)
            throw InvalidInput("item " + std::to_string(j) + " assigned to nonexistent agent " +
                               std::to_string(owner_[j]));
}

Allocation Allocation::from_bundles(int item_count, std::span<const Bundle> bundles) {
    std::vector<int> owner(static_cast<std::size_t>(item_count), -1);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        if (!bundles[i].within(item_count))
            throw InvalidBundle("bundle of agent " + std::to_string(i) + " is outside the item range");
        for (int j : bundles[i].items()) {
            if (owner[static_cast<std::size_t>(j)] != -1)
                throw InvalidInput("item " + std::to_string(j) + " allocated twice");
            owner[static_cast<std::size_t>(j)] = static_cast<int>(i);
        }
    }
    for (int j = 0; j < item_count; ++j)
        if (owner[static_cast<std::size_t>(j)] == -1)
            throw InvalidInput("item " + std::to_string(j) + " is not allocated");
    return Allocation(static_cast<int>(bundles.size()), std::move(owner));
}

Bundle Allocation::bundle(int agent) const {
    Bundle s;
    for (std::size_t j = 0; j < owner_.size(); ++j)
        if (owner_[j] == agent)
            s = s.with(static_cast<int>(j));
    return s;
}

std::vector<Bundle> Allocation::bundles() const {
    std::vector<Bundle> out(static_cast<std::size_t>(agent_count_));
    for (std::size_t j = 0; j < owner_.size(); ++j)
        out[static_cast<std::size_t>(owner_[j])] = out[static_cast<std::size_t>(owner_[j])].with(static_cast<int>(j));
    return out;
}

PriceVector::PriceVector(std::vector<Rational> prices) : prices_(std::move(prices)) {
    for (const auto& p : prices_)
        if (p < 0)
            throw InvalidInput("negative price " + to_string(p));
}

Rational PriceVector::price(Bundle s) const {
    Rational sum = 0;
    for (int j : s.items())
        sum += prices_[static_cast<std::size_t>(j)];
    return sum;
}

} // namespace fisherce
