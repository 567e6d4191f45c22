#include "fisherce/ce_engine.hpp"

#include "fisherce/errors.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

namespace fisherce {

bool CECertificate::valid() const {
    return std::all_of(report.begin(), report.end(), [](const DemandVerdict& v) { return v.passes(); });
}

std::vector<Bundle> demanded_bundles(const OrdinalPreference& pref, const Rational& budget,
                                     const PriceVector& prices) {
    const int m = pref.item_count();
    if (static_cast<int>(prices.size()) != m)
        throw InvalidInput("price vector has " + std::to_string(prices.size()) + " entries for " +
                           std::to_string(m) + " items");
    int best = -1;
    std::vector<Bundle> out;
    for (Bundle s : all_bundles(m)) {
        if (prices.price(s) > budget)
            continue;
        int r = pref.rank(s);
        if (r > best) {
            best = r;
            out.clear();
        }
        if (r == best)
            out.push_back(s);
    }
    return out;
}

namespace {

void check_shape(const Market& market, const Allocation& allocation) {
    if (allocation.agent_count() != market.agent_count() || allocation.item_count() != market.item_count())
        throw InvalidInput("allocation is for " + std::to_string(allocation.agent_count()) + " agents and " +
                           std::to_string(allocation.item_count()) + " items; market has " +
                           std::to_string(market.agent_count()) + " and " + std::to_string(market.item_count()));
}

} // namespace

CECertificate verify_ce(const Market& market, const Allocation& allocation, const PriceVector& prices) {
    check_shape(market, allocation);
    if (static_cast<int>(prices.size()) != market.item_count())
        throw InvalidInput("price vector has " + std::to_string(prices.size()) + " entries for " +
                           std::to_string(market.item_count()) + " items");
    CECertificate cert{allocation, prices, {}};
    const auto bundles = allocation.bundles();
    for (int i = 0; i < market.agent_count(); ++i) {
        const auto& pref = market.preference(i);
        const Rational& b = market.budget(i);
        const Bundle held = bundles[static_cast<std::size_t>(i)];
        DemandVerdict v{i, prices.price(held) <= b, std::nullopt};
        int held_rank = pref.rank(held);
        int best_rank = held_rank;
        for (Bundle t : all_bundles(market.item_count())) {
            int r = pref.rank(t);
            if (r > best_rank && prices.price(t) <= b) {
                best_rank = r;
                v.blocking = t;
            }
        }
        cert.report.push_back(v);
    }
    return cert;
}

PriceVector exhaust_budgets(const Market& market, const Allocation& allocation, const PriceVector& prices) {
    const auto cert = verify_ce(market, allocation, prices);
    if (!cert.valid())
        throw PreconditionError("budget exhaustion needs a valid CE as input");
    std::vector<Rational> p(prices.values().begin(), prices.values().end());
    const auto bundles = allocation.bundles();
    for (int i = 0; i < market.agent_count(); ++i) {
        const Bundle s = bundles[static_cast<std::size_t>(i)];
        // An agent holding nothing cannot pay anything; raising other prices
        // keeps her demand unchanged.
        if (s.empty())
            continue;
        p[static_cast<std::size_t>(s.items().front())] += market.budget(i) - prices.price(s);
    }
    PriceVector out(std::move(p));
    if (!verify_ce(market, allocation, out).valid())
        throw SolverBug("budget-exhausting prices failed verification");
    return out;
}

std::vector<Bundle> minimal_blocking_sets(const OrdinalPreference& pref, Bundle s) {
    const int held = pref.rank(s);
    std::vector<Bundle> out;
    for (Bundle t : all_bundles(pref.item_count())) {
        if (pref.rank(t) <= held)
            continue;
        bool minimal = true;
        for (int j : t.items())
            if (pref.rank(t.without(j)) > held) {
                minimal = false;
                break;
            }
        if (minimal)
            out.push_back(t);
    }
    return out;
}

namespace {

// Per-agent lazily filled table of minimal blocking sets, keyed by held bundle.
class BlockingCache {
  public:
    explicit BlockingCache(const Market& market)
        : market_(market), table_(static_cast<std::size_t>(market.agent_count())) {
        for (auto& row : table_)
            row.resize(bundle_count(market.item_count()));
    }

    const std::vector<Bundle>& get(int agent, Bundle s) {
        auto& slot = table_[static_cast<std::size_t>(agent)][s.bits()];
        if (!slot)
            slot = minimal_blocking_sets(market_.preference(agent), s);
        return *slot;
    }

  private:
    const Market& market_;
    std::vector<std::vector<std::optional<std::vector<Bundle>>>> table_;
};

SupportAnalysis build_and_solve(const Market& market, const std::vector<Bundle>& bundles, BlockingCache& cache,
                                bool want_certificate) {
    const int n = market.agent_count();
    const int m = market.item_count();
    SupportAnalysis out;
    out.max_budget = market.budget(0);
    const Rational& big = out.max_budget;
    LinearProgram& lp = out.program;
    lp.variables = m + 1;
    lp.objective.assign(static_cast<std::size_t>(m + 1), Rational(0));
    lp.objective[static_cast<std::size_t>(m)] = 1;

    for (int i = 0; i < n; ++i) {
        std::vector<Rational> row(static_cast<std::size_t>(m + 1));
        for (int j : bundles[static_cast<std::size_t>(i)].items())
            row[static_cast<std::size_t>(j)] = 1;
        lp.add_row(std::move(row), market.budget(i));
    }
    for (int i = 0; i < n; ++i) {
        for (Bundle t : cache.get(i, bundles[static_cast<std::size_t>(i)])) {
            std::vector<Rational> row(static_cast<std::size_t>(m + 1));
            for (int j : t.items())
                row[static_cast<std::size_t>(j)] = -1;
            row[static_cast<std::size_t>(m)] = 1;
            lp.add_row(std::move(row), big - market.budget(i));
            out.blocking.emplace_back(i, t);
        }
    }
    lp.add_row([&] {
        std::vector<Rational> row(static_cast<std::size_t>(m + 1));
        row[static_cast<std::size_t>(m)] = 1;
        return row;
    }(), 2 * big);

    LpSolution sol = maximize(lp, big);
    if (sol.status == LpStatus::Unbounded)
        throw SolverBug("support system reported unbounded although every variable is capped");
    if (sol.value > big) {
        out.supported = true;
        out.slack = sol.value - big;
        out.prices = PriceVector(std::vector<Rational>(sol.primal.begin(), sol.primal.begin() + m));
        if (want_certificate &&
            !verify_ce(market, Allocation::from_bundles(m, bundles), *out.prices).valid())
            throw SolverBug("supporting prices failed CE verification");
    } else {
        out.slack = 0;
        out.dual = std::move(sol.dual);
        if (!verify_dual_bound(lp, out.dual, big))
            throw SolverBug("infeasibility multipliers failed their own check");
    }
    return out;
}

// Sound necessary conditions; true means the allocation cannot be supported.
bool obviously_unsupported(const Market& market, const std::vector<Bundle>& bundles, BlockingCache& cache) {
    const int n = market.agent_count();
    for (int i = 0; i < n; ++i) {
        const auto& pref = market.preference(i);
        const Bundle s = bundles[static_cast<std::size_t>(i)];
        // Any bundle of a poorer-or-equal agent costs at most b_i.
        for (int k = 0; k < n; ++k)
            if (k != i && market.budget(k) <= market.budget(i) && pref.prefers(bundles[static_cast<std::size_t>(k)], s))
                return true;
        // A blocking set covered by bundles whose budgets sum to at most b_i is affordable.
        for (Bundle t : cache.get(i, s)) {
            Rational cover = 0;
            for (int k = 0; k < n; ++k)
                if (!t.disjoint(bundles[static_cast<std::size_t>(k)]))
                    cover += market.budget(k);
            if (cover <= market.budget(i))
                return true;
        }
    }
    return false;
}

} // namespace

SupportAnalysis analyze_support(const Market& market, const Allocation& allocation) {
    check_shape(market, allocation);
    BlockingCache cache(market);
    return build_and_solve(market, allocation.bundles(), cache, true);
}

std::optional<PriceVector> supporting_prices(const Market& market, const Allocation& allocation) {
    return analyze_support(market, allocation).prices;
}

std::uint64_t allocation_count(int agent_count, int item_count) {
    std::uint64_t total = 1;
    for (int j = 0; j < item_count; ++j) {
        if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(agent_count))
            return std::numeric_limits<std::uint64_t>::max();
        total *= static_cast<std::uint64_t>(agent_count);
    }
    return total;
}

Allocation allocation_at(int agent_count, int item_count, std::uint64_t index) {
    std::vector<int> owner(static_cast<std::size_t>(item_count));
    for (int j = item_count - 1; j >= 0; --j) {
        owner[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::uint64_t>(agent_count));
        index /= static_cast<std::uint64_t>(agent_count);
    }
    return Allocation(agent_count, std::move(owner));
}

namespace {

std::uint64_t checked_count(const Market& market, const EnumerationLimits& limits) {
    const std::uint64_t total = allocation_count(market.agent_count(), market.item_count());
    if (total > limits.max_allocations)
        throw ResourceLimit("enumeration needs n^m = " + std::to_string(market.agent_count()) + "^" +
                            std::to_string(market.item_count()) + " allocations, above the limit of " +
                            std::to_string(limits.max_allocations));
    return total;
}

// Finds the smallest index in [0, total) accepted by `probe`, splitting the range
// into blocks handed out in increasing order. Each worker gets its own state.
template <class MakeState, class Probe>
std::optional<std::uint64_t> first_match(std::uint64_t total, int jobs, MakeState make_state, Probe probe) {
    constexpr std::uint64_t kBlock = 64;
    const auto none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{none};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            auto state = make_state();
            for (;;) {
                const std::uint64_t start = next.fetch_add(kBlock);
                if (start >= total || start > best.load())
                    return;
                const std::uint64_t stop = std::min(total, start + kBlock);
                for (std::uint64_t idx = start; idx < stop; ++idx) {
                    if (idx > best.load())
                        break;
                    if (probe(state, idx)) {
                        std::uint64_t cur = best.load();
                        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                        }
                        break;
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            best.store(0);
        }
    };

    const int workers = std::max(1, jobs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    if (best.load() == none)
        return std::nullopt;
    return best.load();
}

} // namespace

std::optional<CECertificate> find_ce_bruteforce(const Market& market, const EnumerationLimits& limits) {
    const int n = market.agent_count();
    const int m = market.item_count();
    const std::uint64_t total = checked_count(market, limits);

    auto found = first_match(
        total, limits.jobs, [&] { return BlockingCache(market); },
        [&](BlockingCache& cache, std::uint64_t idx) {
            const auto bundles = allocation_at(n, m, idx).bundles();
            if (obviously_unsupported(market, bundles, cache))
                return false;
            return build_and_solve(market, bundles, cache, false).supported;
        });
    if (!found)
        return std::nullopt;

    const Allocation allocation = allocation_at(n, m, *found);
    const auto prices = supporting_prices(market, allocation);
    if (!prices)
        throw SolverBug("enumeration hit did not reproduce");
    auto cert = verify_ce(market, allocation, *prices);
    if (!cert.valid())
        throw SolverBug("oracle certificate failed verification");
    return cert;
}

ParetoResult is_pareto_optimal(const Market& market, const Allocation& allocation, const EnumerationLimits& limits) {
    check_shape(market, allocation);
    const int n = market.agent_count();
    const int m = market.item_count();
    const std::uint64_t total = checked_count(market, limits);
    std::vector<int> held(static_cast<std::size_t>(n));
    const auto bundles = allocation.bundles();
    for (int i = 0; i < n; ++i)
        held[static_cast<std::size_t>(i)] = market.preference(i).rank(bundles[static_cast<std::size_t>(i)]);

    auto found = first_match(
        total, limits.jobs, [] { return 0; },
        [&](int&, std::uint64_t idx) {
            const auto other = allocation_at(n, m, idx).bundles();
            bool strict = false;
            for (int i = 0; i < n; ++i) {
                int r = market.preference(i).rank(other[static_cast<std::size_t>(i)]);
                if (r < held[static_cast<std::size_t>(i)])
                    return false;
                strict = strict || r > held[static_cast<std::size_t>(i)];
            }
            return strict;
        });
    if (!found)
        return {};
    return ParetoResult{false, allocation_at(n, m, *found)};
}

} // namespace fisherce
