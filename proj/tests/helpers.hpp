#pragma once

#include "fisherce/ce_engine.hpp"
#include "fisherce/market.hpp"

#include <map>
#include <string>
#include <vector>

namespace testing_support {

using namespace fisherce;

inline std::vector<std::string> item_names(int m) {
    std::vector<std::string> out;
    for (int j = 0; j < m; ++j)
        out.push_back(std::string(1, static_cast<char>('A' + j)));
    return out;
}

inline std::vector<Rational> rationals(std::initializer_list<const char*> texts) {
    std::vector<Rational> out;
    for (const char* t : texts)
        out.push_back(parse_rational(t));
    return out;
}

/// Additive agents named a1, a2, ... with the given budgets and item values.
inline Market additive_market(const std::vector<Rational>& budgets, const std::vector<std::vector<Rational>>& values) {
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < budgets.size(); ++i)
        agents.push_back(Agent::additive("a" + std::to_string(i + 1), budgets[i], values[i]));
    return Market(item_names(static_cast<int>(values[0].size())), std::move(agents));
}

/// Value of a bundle under additive item values; independent of CardinalValuation.
inline Rational additive_sum(const std::vector<Rational>& values, Bundle s) {
    Rational total = 0;
    for (int j : s.items())
        total += values[static_cast<std::size_t>(j)];
    return total;
}

/// Fixture values recomputed from the defining rule: a private value on the
/// {A, B} part plus 201, 202, 203 for C, D, E.
inline Rational fixture_value(bool alice, Bundle s) {
    const bool a = s.contains(0), b = s.contains(1);
    Rational head = 0;
    if (alice)
        head = a && b ? 700 : a ? 10 : b ? 20 : 0;
    else
        head = a && b ? 502 : a ? 500 : b ? 501 : 0;
    for (int j = 2; j < 5; ++j)
        if (s.contains(j))
            head += 199 + j;
    return head;
}

/// Independent CE check straight from the definition: every agent can afford her
/// bundle and no strictly preferred bundle is affordable.
inline bool is_ce_by_definition(const Market& market, const Allocation& x, const PriceVector& p) {
    for (int i = 0; i < market.agent_count(); ++i) {
        const Bundle held = x.bundle(i);
        if (p.price(held) > market.budget(i))
            return false;
        for (Bundle t : all_bundles(market.item_count()))
            if (market.preference(i).prefers(t, held) && p.price(t) <= market.budget(i))
                return false;
    }
    return true;
}

/// Independent Pareto check: no allocation makes everyone weakly and someone
/// strictly better off.
inline bool pareto_by_definition(const Market& market, const Allocation& x) {
    const int n = market.agent_count(), m = market.item_count();
    std::vector<int> owner(static_cast<std::size_t>(m), 0);
    while (true) {
        const Allocation y(n, owner);
        bool weak = true, strict = false;
        for (int i = 0; i < n && weak; ++i) {
            const auto& pref = market.preference(i);
            weak = pref.weakly_prefers(y.bundle(i), x.bundle(i));
            strict = strict || pref.prefers(y.bundle(i), x.bundle(i));
        }
        if (weak && strict)
            return false;
        int j = m - 1;
        while (j >= 0 && owner[static_cast<std::size_t>(j)] == n - 1)
            owner[static_cast<std::size_t>(j--)] = 0;
        if (j < 0)
            return true;
        ++owner[static_cast<std::size_t>(j)];
    }
}

} // namespace testing_support
