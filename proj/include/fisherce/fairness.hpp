#pragma once

#include "fisherce/market.hpp"

#include <cstdint>
#include <vector>

namespace fisherce {

struct MmsLimits {
    int max_d = 4;
    std::uint64_t max_partitions = 1'000'000;
};

struct MmsThreshold {
    Bundle bundle;
    /// The d parts of a partition attaining the threshold (parts may be empty).
    std::vector<Bundle> partition;
};

/// Best bundle the agent can secure by splitting the items into d parts and
/// receiving the least preferred union of ℓ of them. Ties go to the smaller mask,
/// both among ℓ-subsets and among partitions.
MmsThreshold mms_threshold(const OrdinalPreference& pref, int ell, int d, const MmsLimits& limits = {});

struct MmsVerdict {
    int agent = 0;
    int ell = 0;
    int d = 0;
    bool passes = false;
    Bundle held;
    MmsThreshold threshold;
};

struct MmsReport {
    std::vector<MmsVerdict> verdicts;

    bool passes() const;
    std::vector<MmsVerdict> failures() const;
};

/// For every agent i and every 1 <= ℓ <= d <= d_max with ℓ/d at most i's budget
/// share b_i / Σb, checks that i weakly prefers her bundle to the ℓ-out-of-d threshold.
MmsReport check_mms_guarantee(const Market& market, const Allocation& allocation, int d_max,
                              const MmsLimits& limits = {});

} // namespace fisherce
