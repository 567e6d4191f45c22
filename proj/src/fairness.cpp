#include "fisherce/fairness.hpp"

#include "fisherce/ce_engine.hpp"
#include "fisherce/errors.hpp"

#include <algorithm>

namespace fisherce {

namespace {

// Strictly worse, or equally good with a smaller mask.
bool worse(const OrdinalPreference& pref, Bundle a, Bundle b) {
    const int ra = pref.rank(a), rb = pref.rank(b);
    return ra < rb || (ra == rb && a.bits() < b.bits());
}

bool better(const OrdinalPreference& pref, Bundle a, Bundle b) {
    const int ra = pref.rank(a), rb = pref.rank(b);
    return ra > rb || (ra == rb && a.bits() < b.bits());
}

} // namespace

MmsThreshold mms_threshold(const OrdinalPreference& pref, int ell, int d, const MmsLimits& limits) {
    if (d < 1 || ell < 1 || ell > d)
        throw InvalidInput("maximin share needs 1 <= l <= d, got l=" + std::to_string(ell) + " d=" + std::to_string(d));
    if (d > limits.max_d)
        throw ResourceLimit("d=" + std::to_string(d) + " exceeds the cap of " + std::to_string(limits.max_d));
    const int m = pref.item_count();
    const std::uint64_t total = allocation_count(d, m);
    if (total > limits.max_partitions)
        throw ResourceLimit("maximin share needs d^m = " + std::to_string(d) + "^" + std::to_string(m) +
                            " partitions, above the limit of " + std::to_string(limits.max_partitions));

    // Part-index subsets of size ℓ, as bit masks over the d parts.
    std::vector<unsigned> choices;
    for (unsigned c = 0; c < (1U << d); ++c)
        if (std::popcount(c) == ell)
            choices.push_back(c);

    std::optional<MmsThreshold> best;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto parts = allocation_at(d, m, idx).bundles();
        std::optional<Bundle> worst;
        for (unsigned c : choices) {
            Bundle u;
            for (int k = 0; k < d; ++k)
                if (c >> k & 1U)
                    u = u | parts[static_cast<std::size_t>(k)];
            if (!worst || worse(pref, u, *worst))
                worst = u;
        }
        if (!best || better(pref, *worst, best->bundle))
            best = MmsThreshold{*worst, parts};
    }
    return *best;
}

bool MmsReport::passes() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const MmsVerdict& v) { return v.passes; });
}

std::vector<MmsVerdict> MmsReport::failures() const {
    std::vector<MmsVerdict> out;
    for (const auto& v : verdicts)
        if (!v.passes)
            out.push_back(v);
    return out;
}

MmsReport check_mms_guarantee(const Market& market, const Allocation& allocation, int d_max,
                              const MmsLimits& limits) {
    if (allocation.agent_count() != market.agent_count() || allocation.item_count() != market.item_count())
        throw InvalidInput("allocation shape does not match the market");
    if (d_max < 1)
        throw InvalidInput("d_max must be at least 1");
    const Rational total = market.total_budget();
    MmsReport report;
    for (int i = 0; i < market.agent_count(); ++i) {
        const Rational share = market.budget(i) / total;
        const auto& pref = market.preference(i);
        const Bundle held = allocation.bundle(i);
        for (int d = 1; d <= d_max; ++d) {
            for (int ell = 1; ell <= d; ++ell) {
                if (ratio(ell, d) > share)
                    continue;
                auto threshold = mms_threshold(pref, ell, d, limits);
                const bool ok = pref.weakly_prefers(held, threshold.bundle);
                report.verdicts.push_back({i, ell, d, ok, held, std::move(threshold)});
            }
        }
    }
    return report;
}

} // namespace fisherce
