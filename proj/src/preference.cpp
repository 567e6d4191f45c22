#include "fisherce/preference.hpp"

#include "fisherce/errors.hpp"

#include <algorithm>
#include <string>

namespace fisherce {

namespace {

void check_item_count(int item_count) {
    if (item_count < 0 || item_count > kMaxRepresentableItems)
        throw InvalidInput("item count " + std::to_string(item_count) + " outside [0, " +
                           std::to_string(kMaxRepresentableItems) + "]");
}

} // namespace

OrdinalPreference::OrdinalPreference(int item_count, std::vector<int> rank)
    : item_count_(item_count), rank_(std::move(rank)) {
    check_item_count(item_count);
    if (rank_.size() != bundle_count(item_count))
        throw InvalidInput("preference must rank all " + std::to_string(bundle_count(item_count)) + " bundles");
    int classes = rank_.empty() ? 0 : *std::max_element(rank_.begin(), rank_.end()) + 1;
    levels_.assign(static_cast<std::size_t>(classes), {});
    for (std::size_t mask = 0; mask < rank_.size(); ++mask) {
        if (rank_[mask] < 0)
            throw InvalidInput("negative class index");
        levels_[static_cast<std::size_t>(rank_[mask])].emplace_back(static_cast<Bundle::Mask>(mask));
    }
    for (const auto& level : levels_)
        if (level.empty())
            throw InvalidInput("empty indifference class");
    strict_ = levels_.size() == rank_.size();
}

OrdinalPreference OrdinalPreference::from_levels(int item_count, std::vector<std::vector<Bundle>> levels) {
    check_item_count(item_count);
    std::vector<int> rank(bundle_count(item_count), -1);
    int c = 0;
    for (const auto& level : levels) {
        if (level.empty())
            throw InvalidInput("indifference class " + std::to_string(c) + " is empty");
        for (Bundle s : level) {
            if (!s.within(item_count))
                throw InvalidBundle("bundle outside the item range in class " + std::to_string(c));
            if (rank[s.bits()] != -1)
                throw InvalidInput("bundle listed twice (class " + std::to_string(rank[s.bits()]) + " and " +
                                   std::to_string(c) + ")");
            rank[s.bits()] = c;
        }
        ++c;
    }
    for (std::size_t mask = 0; mask < rank.size(); ++mask)
        if (rank[mask] == -1)
            throw InvalidInput("bundle with mask " + std::to_string(mask) + " is not ranked");
    return OrdinalPreference(item_count, std::move(rank));
}

int OrdinalPreference::rank(Bundle s) const {
    if (!s.within(item_count_))
        throw InvalidBundle("bundle mask " + std::to_string(s.bits()) + " outside a " +
                            std::to_string(item_count_) + "-item preference");
    return rank_[s.bits()];
}

std::vector<std::pair<Bundle, Bundle>> check_monotone(const OrdinalPreference& pref) {
    std::vector<std::pair<Bundle, Bundle>> violations;
    const auto ranks = pref.ranks();
    const Bundle::Mask full = Bundle::full(pref.item_count()).bits();
    for (Bundle::Mask t = 0; t <= full; ++t) {
        // enumerate proper subsets s of t
        for (Bundle::Mask s = (t - 1) & t;; s = (s - 1) & t) {
            if (s != t && ranks[s] > ranks[t])
                violations.emplace_back(Bundle(s), Bundle(t));
            if (s == 0)
                break;
        }
        if (t == full)
            break;
    }
    std::sort(violations.begin(), violations.end());
    return violations;
}

CardinalValuation CardinalValuation::from_values(int item_count, std::vector<Rational> values) {
    check_item_count(item_count);
    if (values.size() != bundle_count(item_count))
        throw InvalidInput("valuation must give a value for all " + std::to_string(bundle_count(item_count)) +
                           " bundles");
    if (values[0] != 0)
        throw InvalidInput("valuation must assign 0 to the empty bundle");
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
        if (values[mask] < 0)
            throw InvalidInput("negative value on bundle mask " + std::to_string(mask));
        for (int j = 0; j < item_count; ++j) {
            if ((mask >> j) & 1U)
                continue;
            std::size_t up = mask | (std::size_t{1} << j);
            if (values[up] < values[mask])
                throw InvalidInput("valuation is not monotone: mask " + std::to_string(up) + " is worth less than " +
                                   std::to_string(mask));
        }
    }
    return CardinalValuation(item_count, std::move(values));
}

CardinalValuation CardinalValuation::additive(std::span<const Rational> item_values) {
    const int m = static_cast<int>(item_values.size());
    check_item_count(m);
    std::vector<Rational> values(bundle_count(m));
    for (std::size_t mask = 1; mask < values.size(); ++mask) {
        int low = std::countr_zero(static_cast<Bundle::Mask>(mask));
        values[mask] = values[mask & (mask - 1)] + item_values[static_cast<std::size_t>(low)];
    }
    return from_values(m, std::move(values));
}

OrdinalPreference valuation_to_preference(const CardinalValuation& v) {
    return OrdinalPreference::from_scores(v.item_count(), v.values());
}

bool represents(const CardinalValuation& v, const OrdinalPreference& pref) {
    if (v.item_count() != pref.item_count())
        return false;
    // Equivalent to the pairwise biconditionals: v is constant on each class and
    // strictly increasing across consecutive classes.
    const Rational* previous = nullptr;
    for (const auto& level : pref.levels()) {
        const Rational& first = v.value(level.front());
        for (Bundle s : level)
            if (v.value(s) != first)
                return false;
        if (previous != nullptr && !(*previous < first))
            return false;
        previous = &first;
    }
    return true;
}

OrdinalPreference lexicographic_preference(int item_count, std::span<const int> ranking) {
    check_item_count(item_count);
    if (static_cast<int>(ranking.size()) != item_count)
        throw InvalidInput("lexicographic ranking must list every item exactly once");
    std::vector<bool> seen(static_cast<std::size_t>(item_count), false);
    for (int j : ranking) {
        if (j < 0 || j >= item_count || seen[static_cast<std::size_t>(j)])
            throw InvalidInput("lexicographic ranking must list every item exactly once");
        seen[static_cast<std::size_t>(j)] = true;
    }
    // Weight 2^(m-1-position): the best item outweighs everything ranked below it.
    std::vector<std::uint64_t> score(bundle_count(item_count), 0);
    for (std::size_t mask = 1; mask < score.size(); ++mask) {
        std::uint64_t total = 0;
        for (int pos = 0; pos < item_count; ++pos)
            if ((mask >> ranking[static_cast<std::size_t>(pos)]) & 1U)
                total |= std::uint64_t{1} << (item_count - 1 - pos);
        score[mask] = total;
    }
    return OrdinalPreference::from_scores<std::uint64_t>(item_count, score);
}

OrdinalPreference leveled_preference(int item_count,
                                     const std::vector<std::vector<std::vector<Bundle>>>& by_cardinality) {
    check_item_count(item_count);
    if (static_cast<int>(by_cardinality.size()) != item_count)
        throw InvalidInput("leveled preference needs one ranking per cardinality 1.." + std::to_string(item_count));
    std::vector<std::vector<Bundle>> levels{{Bundle{}}};
    for (int k = 1; k <= item_count; ++k) {
        for (const auto& group : by_cardinality[static_cast<std::size_t>(k - 1)]) {
            for (Bundle s : group)
                if (s.size() != k)
                    throw InvalidInput("bundle of size " + std::to_string(s.size()) + " listed among size " +
                                       std::to_string(k));
            levels.push_back(group);
        }
    }
    return OrdinalPreference::from_levels(item_count, std::move(levels));
}

} // namespace fisherce
