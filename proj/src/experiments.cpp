#include "fisherce/experiments.hpp"

#include "fisherce/classes.hpp"
#include "fisherce/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fisherce {

// --- fixture --------------------------------------------------------------------

namespace {

CardinalValuation split_valuation(const Rational& a, const Rational& b, const Rational& ab) {
    const Rational tail[] = {201, 202, 203};
    std::vector<Rational> v(32);
    for (unsigned mask = 0; mask < 32; ++mask) {
        Rational x = 0;
        const bool has_a = mask & 1U, has_b = mask & 2U;
        if (has_a && has_b)
            x += ab;
        else if (has_a)
            x += a;
        else if (has_b)
            x += b;
        for (int j = 2; j < 5; ++j)
            if (mask >> j & 1U)
                x += tail[j - 2];
        v[mask] = x;
    }
    return CardinalValuation::from_values(5, std::move(v));
}

const std::vector<std::string> kFiveItems{"A", "B", "C", "D", "E"};

} // namespace

CardinalValuation five_items_alice() { return split_valuation(10, 20, 700); }
CardinalValuation five_items_bob() { return split_valuation(500, 501, 502); }

Market example_five_items(const Rational& alice_budget, const Rational& bob_budget) {
    return Market(kFiveItems, {Agent::cardinal("alice", alice_budget, five_items_alice()),
                               Agent::cardinal("bob", bob_budget, five_items_bob())});
}

std::vector<std::map<std::string, std::string>> five_items_split_allocations() {
    std::vector<std::map<std::string, std::string>> out;
    for (const char* x1 : {"A", "B"}) {
        for (const char* y3 : {"C", "D", "E"}) {
            std::map<std::string, std::string> owner;
            for (const auto& item : kFiveItems)
                owner[item] = "alice";
            owner[x1 == std::string("A") ? "B" : "A"] = "bob";
            owner[y3] = "bob";
            out.push_back(std::move(owner));
        }
    }
    return out;
}

Allocation allocation_by_name(const Market& market, const std::map<std::string, std::string>& owner_of_item) {
    std::vector<int> owner;
    for (const auto& item : market.items()) {
        auto it = owner_of_item.find(item);
        if (it == owner_of_item.end())
            throw InvalidInput("item \"" + item + "\" has no owner");
        owner.push_back(market.agent_index(it->second));
    }
    if (owner_of_item.size() != market.items().size())
        throw InvalidInput("allocation names items outside the market");
    return Allocation(market.agent_count(), std::move(owner));
}

// --- grids ----------------------------------------------------------------------

std::vector<Rational> farey_interior(const Rational& lo, const Rational& hi, int count, int max_denominator) {
    std::vector<Rational> out;
    for (int q = 1; q <= max_denominator && static_cast<int>(out.size()) < count; ++q) {
        for (int p = 0; p <= q * 4 && static_cast<int>(out.size()) < count; ++p) {
            if (std::gcd(p, q) != 1)
                continue;
            const Rational x(p, q);
            if (x > lo && x < hi)
                out.push_back(x);
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw InvalidInput("interval too narrow for " + std::to_string(count) + " grid points");
    return out;
}

// --- scans -----------------------------------------------------------------------

std::string to_string(ScanOutcome outcome) {
    switch (outcome) {
    case ScanOutcome::CeFound:
        return "ce found";
    case ScanOutcome::NonexistenceCertified:
        return "nonexistence certified";
    case ScanOutcome::ResourceLimited:
        return "resource limited";
    case ScanOutcome::Supported:
        return "supported";
    case ScanOutcome::NotSupported:
        return "not supported";
    }
    return "?";
}

std::map<std::string, int> ScanReport::counts() const {
    std::map<std::string, int> out;
    for (const auto& e : entries)
        ++out[to_string(e.outcome)];
    return out;
}

Json ScanReport::to_json() const {
    Json doc;
    doc["experiment"] = experiment;
    doc["params"] = params;
    doc["agents"] = agents;
    doc["counts"] = Json::object();
    for (const auto& [k, v] : counts())
        doc["counts"][k] = v;
    doc["checks"] = Json::object();
    for (const auto& [k, v] : checks)
        doc["checks"][k] = v;
    doc["entries"] = Json::array();
    for (const auto& e : entries) {
        Json row;
        row["budgets"] = Json::array();
        for (const auto& b : e.budgets)
            row["budgets"].push_back(fisherce::to_string(b));
        row["provenance"] = e.provenance;
        row["outcome"] = to_string(e.outcome);
        if (!e.witness.is_null())
            row["witness"] = e.witness;
        if (!e.detail.empty())
            row["detail"] = e.detail;
        doc["entries"].push_back(std::move(row));
    }
    return doc;
}

std::string ScanReport::to_csv() const {
    std::ostringstream out;
    out << "index,provenance";
    for (const auto& a : agents)
        out << ",budget_" << a;
    out << ",outcome\n";
    for (std::size_t k = 0; k < entries.size(); ++k) {
        out << k << "," << entries[k].provenance;
        for (const auto& b : entries[k].budgets)
            out << "," << fisherce::to_string(b);
        out << "," << to_string(entries[k].outcome) << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::string> agent_names(const Market& market) {
    std::vector<std::string> out;
    for (const auto& a : market.agents())
        out.push_back(a.name);
    return out;
}

std::string profile_text(const std::vector<Rational>& b) {
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i)
        s += (i ? ", " : "") + fisherce::to_string(b[i]);
    return s + ")";
}

} // namespace

ScanReport nonexistence_scan(const Market& market, const std::vector<std::vector<Rational>>& profiles,
                             const EnumerationLimits& limits) {
    ScanReport report;
    report.experiment = "nonexistence-scan";
    report.agents = agent_names(market);
    report.params["profiles"] = profiles.size();
    report.params["max_allocations"] = limits.max_allocations;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        ScanEntry e;
        e.budgets = profiles[k];
        e.provenance = "grid " + std::to_string(k);
        const Market priced = market.with_budgets(profiles[k]);
        try {
            if (auto cert = find_ce_bruteforce(priced, limits)) {
                e.outcome = ScanOutcome::CeFound;
                e.witness = certificate_to_json(priced, *cert);
            } else {
                e.outcome = ScanOutcome::NonexistenceCertified;
            }
        } catch (const ResourceLimit& err) {
            e.outcome = ScanOutcome::ResourceLimited;
            e.detail = err.what();
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::vector<std::vector<Rational>> five_item_profiles(int count) {
    std::vector<std::vector<Rational>> out;
    for (const auto& b1 : farey_interior(Rational(1, 2), Rational(4, 7), count))
        out.push_back({b1, 1 - b1});
    return out;
}

bool verify_refutation(const BudgetFreeRefutation& r) {
    if (r.facts.size() != r.multipliers.size() || r.facts.empty())
        return false;
    const std::size_t np = r.facts.front().price_coeffs.size();
    const std::size_t nb = r.facts.front().budget_coeffs.size();
    std::vector<Rational> sp(np), sb(nb);
    bool strict = false;
    for (std::size_t k = 0; k < r.facts.size(); ++k) {
        const auto& f = r.facts[k];
        const Rational& w = r.multipliers[k];
        if (w < 0 || f.price_coeffs.size() != np || f.budget_coeffs.size() != nb)
            return false;
        strict = strict || (f.strict && w > 0);
        for (std::size_t j = 0; j < np; ++j)
            sp[j] += w * f.price_coeffs[j];
        for (std::size_t i = 0; i < nb; ++i)
            sb[i] += w * f.budget_coeffs[i];
    }
    auto zero = [](const std::vector<Rational>& v) {
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
    };
    return strict && zero(sp) && zero(sb);
}

std::optional<BudgetFreeRefutation> exchange_refutation(const Market& market, const Allocation& allocation) {
    if (market.agent_count() != 2)
        return std::nullopt;
    const int m = market.item_count();
    const Bundle all = Bundle::full(m);
    for (int a = 0; a < 2; ++a) {
        const int b = 1 - a;
        const Bundle sa = allocation.bundle(a), sb = allocation.bundle(b);
        const auto& pa = market.preference(a);
        if (!market.preference(b).prefers(sa, sb))
            continue;
        for (Bundle t : all_bundles(m)) {
            if (!pa.prefers(t, sa) || !pa.prefers(all - t, sa))
                continue;
            auto fact = [&](Bundle s, int sign, int agent, bool strict, std::string reason) {
                LinearFact f;
                f.price_coeffs.assign(static_cast<std::size_t>(m), Rational(0));
                f.budget_coeffs.assign(2, Rational(0));
                for (int j : s.items())
                    f.price_coeffs[static_cast<std::size_t>(j)] = sign;
                f.budget_coeffs[static_cast<std::size_t>(agent)] = -sign;
                f.strict = strict;
                f.reason = std::move(reason);
                return f;
            };
            const std::string na = market.agent(a).name, nb = market.agent(b).name;
            BudgetFreeRefutation r;
            r.facts.push_back(fact(t, 1, a, true, na + " prefers " + market.bundle_name(t) + " to her bundle"));
            r.facts.push_back(
                fact(all - t, 1, a, true, na + " prefers " + market.bundle_name(all - t) + " to her bundle"));
            r.facts.push_back(fact(sa, 1, b, true, nb + " prefers " + na + "'s bundle to her own"));
            r.facts.push_back(fact(sa, -1, a, false, na + " affords her bundle"));
            r.facts.push_back(fact(sb, -1, b, false, nb + " affords her bundle"));
            r.multipliers = {1, 1, 1, 2, 1};
            return r;
        }
    }
    return std::nullopt;
}

ScanReport second_welfare_probe(const Market& market, const std::map<std::string, std::string>& owner_of_item,
                                const std::vector<std::vector<Rational>>& profiles, const EnumerationLimits& limits) {
    ScanReport report;
    report.experiment = "second-welfare-probe";
    report.agents = agent_names(market);
    report.params["profiles"] = profiles.size();
    Json alloc = Json::object();
    for (const auto& [item, agent] : owner_of_item)
        alloc[item] = agent;
    report.params["allocation"] = alloc;

    const Allocation base = allocation_by_name(market, owner_of_item);
    report.checks["pareto_optimal"] = is_pareto_optimal(market, base, limits).optimal;
    const auto chain = exchange_refutation(market, base);
    report.checks["inequality_chain"] = chain && verify_refutation(*chain);

    bool duals_ok = true;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        ScanEntry e;
        e.budgets = profiles[k];
        e.provenance = "grid " + std::to_string(k);
        const Market priced = market.with_budgets(profiles[k]);
        const Allocation alloc_k = allocation_by_name(priced, owner_of_item);
        const SupportAnalysis s = analyze_support(priced, alloc_k);
        if (s.supported) {
            e.outcome = ScanOutcome::Supported;
            e.witness = certificate_to_json(priced, verify_ce(priced, alloc_k, *s.prices));
        } else {
            e.outcome = ScanOutcome::NotSupported;
            duals_ok = duals_ok && verify_dual_bound(s.program, s.dual, s.max_budget);
            e.detail = "slack <= 0 certified by LP multipliers at budgets " + profile_text(profiles[k]);
        }
        report.entries.push_back(std::move(e));
    }
    report.checks["dual_certificates"] = duals_ok;
    return report;
}

// --- randomness ---------------------------------------------------------------------

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0)
        throw InvalidInput("empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit)
            return x % bound;
    }
}

Budgets perturb_budgets(const Budgets& b, const Rational& eta, std::uint64_t seed) {
    static const mpz_class kScale = 1'000'000'000;
    if (eta <= 0)
        throw InvalidInput("eta must be positive");
    const Rational min_b = b[b.size() - 1];
    if (!(eta < min_b / 2))
        throw InvalidInput("eta = " + to_string(eta) + " must be below half the smallest budget (" +
                           to_string(min_b / 2) + ")");
    // Largest k with k/10^9 < eta.
    const Rational scaled = eta * kScale;
    mpz_class kmax = floor(scaled);
    if (kmax == scaled)
        kmax -= 1;
    if (kmax < 1)
        throw InvalidInput("eta = " + to_string(eta) + " is below the noise grid 10^-9");
    const std::uint64_t width = 2 * kmax.get_ui() + 1;

    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<Rational> out;
        Rational total = 0;
        for (const auto& x : b.values()) {
            const mpz_class k = mpz_class(static_cast<unsigned long>(uniform_below(rng, width))) - kmax;
            out.emplace_back(x + ratio(k, kScale));
            total += out.back();
        }
        for (auto& x : out)
            x /= total;
        Budgets result(std::move(out));
        if (result.pairwise_distinct())
            return result;
    }
}

PreferenceKind parse_preference_kind(std::string_view name) {
    if (name == "gen" || name == "general" || name == "ordinal")
        return PreferenceKind::General;
    if (name == "add" || name == "additive")
        return PreferenceKind::Additive;
    if (name == "lex" || name == "lexicographic")
        return PreferenceKind::Lexicographic;
    if (name == "leveled")
        return PreferenceKind::Leveled;
    throw InvalidInput("unknown preference kind \"" + std::string(name) + "\" (gen, add, lex, leveled)");
}

std::string to_string(PreferenceKind kind) {
    switch (kind) {
    case PreferenceKind::General:
        return "gen";
    case PreferenceKind::Additive:
        return "add";
    case PreferenceKind::Lexicographic:
        return "lex";
    case PreferenceKind::Leveled:
        return "leveled";
    }
    return "?";
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

bool coin(std::mt19937_64& rng, std::uint64_t num, std::uint64_t den) { return uniform_below(rng, den) < num; }

// Groups a least-to-most sequence into levels, merging neighbours at random
// unless strict.
std::vector<std::vector<Bundle>> group(const std::vector<Bundle>& seq, bool strict, std::mt19937_64& rng) {
    std::vector<std::vector<Bundle>> levels;
    for (Bundle s : seq) {
        if (levels.empty() || strict || !coin(rng, 1, 3))
            levels.push_back({s});
        else
            levels.back().push_back(s);
    }
    return levels;
}

OrdinalPreference random_general(int m, bool strict, std::mt19937_64& rng) {
    const std::size_t total = bundle_count(m);
    std::vector<char> placed(total, 0);
    std::vector<Bundle> seq{Bundle{}};
    placed[0] = 1;
    while (seq.size() < total) {
        std::vector<Bundle> ready;
        for (Bundle s : all_bundles(m)) {
            if (placed[s.bits()])
                continue;
            bool ok = true;
            for (int j : s.items())
                ok = ok && placed[s.without(j).bits()];
            if (ok)
                ready.push_back(s);
        }
        const Bundle pick = ready[uniform_below(rng, ready.size())];
        placed[pick.bits()] = 1;
        seq.push_back(pick);
    }
    // ∅ stays alone in the bottom class only when strict; otherwise it may tie.
    return OrdinalPreference::from_levels(m, group(seq, strict, rng));
}

std::vector<Rational> random_additive(int m, bool strict, std::mt19937_64& rng) {
    for (;;) {
        std::vector<Rational> u;
        for (int j = 0; j < m; ++j)
            u.emplace_back(static_cast<unsigned long>(strict ? 1 + uniform_below(rng, 1U << 20) : uniform_below(rng, 5)));
        if (!strict)
            return u;
        std::set<mpq_class> sums;
        for (Bundle s : all_bundles(m)) {
            Rational x = 0;
            for (int j : s.items())
                x += u[static_cast<std::size_t>(j)];
            sums.insert(x);
        }
        if (sums.size() == bundle_count(m))
            return u;
    }
}

} // namespace

Market random_market(const RandomMarketParams& params, std::uint64_t seed) {
    const int n = params.agents, m = params.items;
    if (n < 1 || m < 1 || m > kMaxRepresentableItems)
        throw InvalidInput("random market needs n >= 1 and 1 <= m <= " + std::to_string(kMaxRepresentableItems));
    if (m > 26)
        throw InvalidInput("random markets name items with single letters (m <= 26)");
    std::mt19937_64 rng(seed);

    std::vector<Rational> budgets = params.budgets;
    if (budgets.empty()) {
        for (;;) {
            budgets.clear();
            Rational total = 0;
            for (int i = 0; i < n; ++i) {
                budgets.emplace_back(static_cast<unsigned long>(1 + uniform_below(rng, 1'000'000)));
                total += budgets.back();
            }
            for (auto& b : budgets)
                b /= total;
            if (Budgets(budgets).pairwise_distinct())
                break;
        }
    } else if (static_cast<int>(budgets.size()) != n) {
        throw InvalidInput("random market: expected " + std::to_string(n) + " budgets");
    }

    std::vector<std::string> items;
    for (int j = 0; j < m; ++j)
        items.emplace_back(1, static_cast<char>('A' + j));
    std::vector<Agent> agents;
    for (int i = 0; i < n; ++i) {
        const std::string name = "a" + std::to_string(i + 1);
        const Rational& b = budgets[static_cast<std::size_t>(i)];
        switch (params.kind) {
        case PreferenceKind::General:
            agents.push_back(Agent::ordinal(name, b, random_general(m, params.strict, rng)));
            break;
        case PreferenceKind::Additive:
            agents.push_back(Agent::additive(name, b, random_additive(m, params.strict, rng)));
            break;
        case PreferenceKind::Lexicographic: {
            std::vector<int> order(static_cast<std::size_t>(m));
            std::iota(order.begin(), order.end(), 0);
            shuffle(order, rng);
            agents.push_back(Agent::lexicographic(name, b, m, std::move(order)));
            break;
        }
        case PreferenceKind::Leveled: {
            std::vector<std::vector<std::vector<Bundle>>> by_cardinality(static_cast<std::size_t>(m));
            for (int k = 1; k <= m; ++k) {
                std::vector<Bundle> of_size;
                for (Bundle s : all_bundles(m))
                    if (s.size() == k)
                        of_size.push_back(s);
                shuffle(of_size, rng);
                by_cardinality[static_cast<std::size_t>(k - 1)] = group(of_size, params.strict, rng);
            }
            agents.push_back(Agent::leveled(name, b, m, std::move(by_cardinality)));
            break;
        }
        }
    }
    return Market(std::move(items), std::move(agents), std::max(kDefaultItemCap, m));
}

// --- tâtonnement ---------------------------------------------------------------------

namespace {

Rational to_grid(const Rational& x) {
    static const mpz_class kScale = 1'000'000'000;
    mpz_class k = floor(x * kScale + Rational(1, 2));
    if (k < 1)
        k = 1;
    return ratio(k, kScale);
}

bool find_partition(const std::vector<std::vector<Bundle>>& demanded, std::size_t agent, Bundle used, Bundle all,
                    std::vector<Bundle>& pick, std::uint64_t& budget) {
    if (agent == demanded.size())
        return used == all;
    for (Bundle s : demanded[agent]) {
        if (budget == 0)
            return false;
        --budget;
        if (!s.disjoint(used))
            continue;
        pick[agent] = s;
        if (find_partition(demanded, agent + 1, used | s, all, pick, budget))
            return true;
    }
    return false;
}

} // namespace

std::optional<CECertificate> tatonnement(const Market& market, const TatonnementParams& params) {
    const int n = market.agent_count(), m = market.item_count();
    const Bundle all = Bundle::full(m);
    std::vector<Rational> p(static_cast<std::size_t>(m), to_grid(market.total_budget() / m));
    const Rational up = 1 + params.step;
    for (int iter = 0; iter < params.max_iters; ++iter) {
        const PriceVector prices(p);
        std::vector<std::vector<Bundle>> demanded;
        for (int i = 0; i < n; ++i)
            demanded.push_back(demanded_bundles(market.preference(i), market.budget(i), prices));
        std::vector<Bundle> pick(static_cast<std::size_t>(n));
        std::uint64_t budget = params.max_combinations;
        if (find_partition(demanded, 0, Bundle{}, all, pick, budget)) {
            auto cert = verify_ce(market, Allocation::from_bundles(m, pick), prices);
            if (cert.valid())
                return cert;
        }
        std::vector<int> count(static_cast<std::size_t>(m), 0);
        for (const auto& d : demanded)
            for (int j : d.front().items())
                ++count[static_cast<std::size_t>(j)];
        for (int j = 0; j < m; ++j) {
            auto& pj = p[static_cast<std::size_t>(j)];
            if (count[static_cast<std::size_t>(j)] > 1)
                pj = to_grid(pj * up);
            else if (count[static_cast<std::size_t>(j)] == 0)
                pj = to_grid(pj / up);
        }
    }
    return std::nullopt;
}

} // namespace fisherce
