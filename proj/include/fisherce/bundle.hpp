#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace fisherce {

/// Hard representation limit; markets are further capped by
/// MarketLimits::max_items (default 12) because the model enumerates 2^m bundles.
inline constexpr int kMaxRepresentableItems = 24;

/// A set of item indices, stored as a bit mask. Equality and ordering are on the
/// mask, which is also the "bundle encoding" used for deterministic tie-breaks.
class Bundle {
  public:
    using Mask = std::uint32_t;

    constexpr Bundle() = default;
    constexpr explicit Bundle(Mask bits) : bits_(bits) {}

    static constexpr Bundle of(std::initializer_list<int> items) {
        Mask bits = 0;
        for (int j : items)
            bits |= Mask{1} << j;
        return Bundle(bits);
    }
    static constexpr Bundle full(int item_count) {
        return Bundle(item_count >= 32 ? ~Mask{0} : (Mask{1} << item_count) - 1);
    }
    static constexpr Bundle single(int item) { return Bundle(Mask{1} << item); }

    constexpr Mask bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int item) const { return (bits_ >> item) & 1U; }
    constexpr bool subset_of(Bundle other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool proper_subset_of(Bundle other) const { return subset_of(other) && bits_ != other.bits_; }
    constexpr bool disjoint(Bundle other) const { return (bits_ & other.bits_) == 0; }
    /// True when every member is an item index below `item_count`.
    constexpr bool within(int item_count) const { return subset_of(full(item_count)); }

    constexpr Bundle with(int item) const { return Bundle(bits_ | (Mask{1} << item)); }
    constexpr Bundle without(int item) const { return Bundle(bits_ & ~(Mask{1} << item)); }

    std::vector<int> items() const {
        std::vector<int> out;
        for (Mask b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr Bundle operator|(Bundle a, Bundle b) { return Bundle(a.bits_ | b.bits_); }
    friend constexpr Bundle operator&(Bundle a, Bundle b) { return Bundle(a.bits_ & b.bits_); }
    friend constexpr Bundle operator-(Bundle a, Bundle b) { return Bundle(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(Bundle, Bundle) = default;
    friend constexpr auto operator<=>(Bundle, Bundle) = default;

  private:
    Mask bits_ = 0;
};

constexpr std::size_t bundle_count(int item_count) { return std::size_t{1} << item_count; }

/// All bundles of an m-item market in mask order (∅ first).
inline std::vector<Bundle> all_bundles(int item_count) {
    std::vector<Bundle> out;
    out.reserve(bundle_count(item_count));
    for (std::size_t mask = 0; mask < bundle_count(item_count); ++mask)
        out.emplace_back(static_cast<Bundle::Mask>(mask));
    return out;
}

} // namespace fisherce
