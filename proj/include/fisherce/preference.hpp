#pragma once

#include "fisherce/bundle.hpp"
#include "fisherce/rational.hpp"

#include <algorithm>
#include <compare>
#include <span>
#include <utility>
#include <vector>

namespace fisherce {

/// A total preorder over all 2^m bundles, stored as an ordered partition into
/// indifference classes (least preferred first) plus a per-bundle class index.
///
/// Construction checks only the partition structure; monotonicity is a separate
/// property (see check_monotone) that Market enforces for every agent.
class OrdinalPreference {
  public:
    /// `levels[c]` is the c-th indifference class, least preferred first. Every
    /// bundle of the m-item universe must occur exactly once.
    static OrdinalPreference from_levels(int item_count, std::vector<std::vector<Bundle>> levels);

    /// Builds the preorder "S ⪯ T iff score[S] <= score[T]" from any per-bundle
    /// score (indexed by mask). Used for valuations and compact encodings.
    template <class Score>
    static OrdinalPreference from_scores(int item_count, std::span<const Score> score);

    int item_count() const { return item_count_; }
    int class_count() const { return static_cast<int>(levels_.size()); }
    bool strict() const { return strict_; }

    /// Index of the indifference class holding `s` (0 = least preferred).
    int rank(Bundle s) const;
    const std::vector<std::vector<Bundle>>& levels() const { return levels_; }
    std::span<const int> ranks() const { return rank_; }

    std::weak_ordering compare(Bundle s, Bundle t) const { return rank(s) <=> rank(t); }
    bool prefers(Bundle s, Bundle t) const { return rank(s) > rank(t); }
    bool weakly_prefers(Bundle s, Bundle t) const { return rank(s) >= rank(t); }
    bool indifferent(Bundle s, Bundle t) const { return rank(s) == rank(t); }

    friend bool operator==(const OrdinalPreference& a, const OrdinalPreference& b) {
        return a.item_count_ == b.item_count_ && a.rank_ == b.rank_;
    }

  private:
    OrdinalPreference(int item_count, std::vector<int> rank);

    int item_count_ = 0;
    std::vector<int> rank_;
    std::vector<std::vector<Bundle>> levels_;
    bool strict_ = false;
};

/// Pairs (S, T) with S ⊂ T but T ≺ S. Empty iff the preference is monotone.
std::vector<std::pair<Bundle, Bundle>> check_monotone(const OrdinalPreference& pref);

/// Exact nonnegative values on all bundles with v(∅) = 0 and S ⊆ T ⇒ v(S) ≤ v(T).
class CardinalValuation {
  public:
    /// `values` is indexed by bundle mask. Throws InvalidInput when v(∅) ≠ 0, a
    /// value is negative, or monotonicity fails.
    static CardinalValuation from_values(int item_count, std::vector<Rational> values);
    static CardinalValuation additive(std::span<const Rational> item_values);

    int item_count() const { return item_count_; }
    const Rational& value(Bundle s) const { return values_[s.bits()]; }
    const Rational& operator()(Bundle s) const { return value(s); }
    std::span<const Rational> values() const { return values_; }

  private:
    CardinalValuation(int item_count, std::vector<Rational> values)
        : item_count_(item_count), values_(std::move(values)) {}

    int item_count_ = 0;
    std::vector<Rational> values_;
};

/// Level sets of v ordered by value.
OrdinalPreference valuation_to_preference(const CardinalValuation& v);

/// True iff S ⪰ T ⇔ v(S) ≥ v(T) and S ≻ T ⇔ v(S) > v(T) for all bundle pairs.
bool represents(const CardinalValuation& v, const OrdinalPreference& pref);

/// Lexicographic preference induced by an item ranking (most preferred first):
/// S ≻ T iff the best item of S∖T beats the best item of T∖S.
OrdinalPreference lexicographic_preference(int item_count, std::span<const int> ranking);

/// Leveled preference: larger bundles always win; `by_cardinality[k-1]` orders the
/// bundles of size k as tie groups, least preferred first.
OrdinalPreference leveled_preference(int item_count,
                                     const std::vector<std::vector<std::vector<Bundle>>>& by_cardinality);

template <class Score>
OrdinalPreference OrdinalPreference::from_scores(int item_count, std::span<const Score> score) {
    std::vector<std::size_t> order(score.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
    std::vector<int> rank(score.size());
    int current = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || score[order[k - 1]] < score[order[k]])
            ++current;
        rank[order[k]] = current;
    }
    return OrdinalPreference(item_count, std::move(rank));
}

} // namespace fisherce
