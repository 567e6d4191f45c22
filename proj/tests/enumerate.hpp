#pragma once

#include "fisherce/preference.hpp"

#include <functional>
#include <vector>

namespace testing_support {

using namespace fisherce;

/// Calls `visit` on every monotone total preorder of the m-item bundles (only
/// the strict ones when `strict_only`). The next level, from the bottom, may be
/// any nonempty set of unplaced bundles whose proper subsets are placed or in
/// the same level.
inline void for_each_monotone_preference(int m, bool strict_only,
                                         const std::function<void(const OrdinalPreference&)>& visit) {
    const int total = 1 << m;
    std::vector<std::vector<Bundle>> levels;
    std::vector<char> placed(static_cast<std::size_t>(total), 0);

    auto fits = [&](const std::vector<int>& level) {
        std::vector<char> in_level(static_cast<std::size_t>(total), 0);
        for (int s : level)
            in_level[static_cast<std::size_t>(s)] = 1;
        for (int s : level)
            for (int j = 0; j < m; ++j)
                if (s >> j & 1) {
                    const auto sub = static_cast<std::size_t>(s & ~(1 << j));
                    if (!placed[sub] && !in_level[sub])
                        return false;
                }
        return true;
    };

    std::function<void(int)> grow = [&](int remaining) {
        if (remaining == 0) {
            visit(OrdinalPreference::from_levels(m, levels));
            return;
        }
        std::vector<int> open;
        for (int s = 0; s < total; ++s)
            if (!placed[static_cast<std::size_t>(s)])
                open.push_back(s);
        std::vector<std::vector<int>> candidates;
        if (strict_only) {
            for (int s : open)
                candidates.push_back({s});
        } else {
            for (std::uint32_t pick = 1; pick < (1U << open.size()); ++pick) {
                std::vector<int> level;
                for (std::size_t i = 0; i < open.size(); ++i)
                    if (pick >> i & 1U)
                        level.push_back(open[i]);
                candidates.push_back(std::move(level));
            }
        }
        for (const auto& level : candidates) {
            if (!fits(level))
                continue;
            std::vector<Bundle> bundles;
            for (int s : level) {
                placed[static_cast<std::size_t>(s)] = 1;
                bundles.emplace_back(static_cast<Bundle::Mask>(s));
            }
            levels.push_back(std::move(bundles));
            grow(remaining - static_cast<int>(level.size()));
            levels.pop_back();
            for (int s : level)
                placed[static_cast<std::size_t>(s)] = 0;
        }
    };
    grow(total);
}

} // namespace testing_support
