#include "fisherce/classes.hpp"

#include "fisherce/errors.hpp"
#include "fisherce/lp.hpp"

#include <algorithm>
#include <numeric>

namespace fisherce {

std::vector<std::string> ClassLabelSet::labels() const {
    std::vector<std::string> out;
    const std::pair<bool, const char*> flags[] = {{lex, "LEX"},           {add, "ADD"},
                                                  {rspn, "RSPN"},         {satattop, "SATATTOP"},
                                                  {submodular, "SUBMODULAR"}, {leveled, "LEVELED"},
                                                  {strict, "STRICT"},     {gen, "GEN"}};
    for (const auto& [on, name] : flags)
        if (on)
            out.emplace_back(name);
    return out;
}

bool has_label(const ClassLabelSet& set, const std::string& label) {
    if (label == "LEX") return set.lex;
    if (label == "ADD") return set.add;
    if (label == "RSPN") return set.rspn;
    if (label == "SATATTOP") return set.satattop;
    if (label == "SUBMODULAR") return set.submodular;
    if (label == "LEVELED") return set.leveled;
    if (label == "STRICT") return set.strict;
    if (label == "GEN") return set.gen;
    throw InvalidInput("unknown class label \"" + label + "\"");
}

namespace {

// Items by descending singleton rank, ties by index.
std::vector<int> singleton_order(const OrdinalPreference& pref) {
    std::vector<int> order(static_cast<std::size_t>(pref.item_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pref.rank(Bundle::single(a)) > pref.rank(Bundle::single(b));
    });
    return order;
}

void require_monotone(const OrdinalPreference& pref) {
    if (!check_monotone(pref).empty())
        throw InvalidInput("preference is not monotone");
}

} // namespace

std::optional<std::vector<int>> lexicographic_order(const OrdinalPreference& pref) {
    if (!pref.strict())
        return std::nullopt;
    auto order = singleton_order(pref);
    if (lexicographic_preference(pref.item_count(), order) != pref)
        return std::nullopt;
    return order;
}

bool is_leveled(const OrdinalPreference& pref) {
    const int m = pref.item_count();
    std::vector<int> lo(static_cast<std::size_t>(m + 1), pref.class_count());
    std::vector<int> hi(static_cast<std::size_t>(m + 1), -1);
    for (Bundle s : all_bundles(m)) {
        const auto k = static_cast<std::size_t>(s.size());
        lo[k] = std::min(lo[k], pref.rank(s));
        hi[k] = std::max(hi[k], pref.rank(s));
    }
    for (int k = 0; k < m; ++k)
        if (hi[static_cast<std::size_t>(k)] >= lo[static_cast<std::size_t>(k + 1)])
            return false;
    return true;
}

std::optional<std::vector<int>> responsive_order(const OrdinalPreference& pref) {
    const int m = pref.item_count();
    for (Bundle s : all_bundles(m)) {
        for (int j = 0; j < m; ++j) {
            if (s.contains(j))
                continue;
            for (int k = j + 1; k < m; ++k) {
                if (s.contains(k))
                    continue;
                if (pref.compare(s.with(j), s.with(k)) != pref.compare(Bundle::single(j), Bundle::single(k)))
                    return std::nullopt;
            }
        }
    }
    return singleton_order(pref);
}

std::optional<SatiationViolation> find_satiation_violation(const OrdinalPreference& pref) {
    const int m = pref.item_count();
    // For each item j, the bundles at which j adds nothing must be closed upward;
    // checking immediate supersets suffices.
    for (Bundle t : all_bundles(m)) {
        for (int j = 0; j < m; ++j) {
            if (t.contains(j) || !pref.indifferent(t, t.with(j)))
                continue;
            for (int k = 0; k < m; ++k) {
                if (k == j || t.contains(k))
                    continue;
                const Bundle s = t.with(k);
                if (!pref.indifferent(s, s.with(j)))
                    return SatiationViolation{t, s, j};
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Rational>> is_additive_representable(const OrdinalPreference& pref) {
    const int m = pref.item_count();
    if (!responsive_order(pref))
        return std::nullopt;
    if (auto order = lexicographic_order(pref)) {
        std::vector<Rational> u(static_cast<std::size_t>(m));
        for (int pos = 0; pos < m; ++pos)
            u[static_cast<std::size_t>((*order)[static_cast<std::size_t>(pos)])] =
                Rational(mpz_class(1) << (m - 1 - pos));
        return u;
    }

    // Variables u_0..u_{m-1}, δ. Members of a class sum equally; consecutive
    // class representatives are at least δ apart; δ <= 1. Positive optimum iff
    // additive values exist.
    LinearProgram lp;
    lp.variables = m + 1;
    lp.objective.assign(static_cast<std::size_t>(m + 1), Rational(0));
    lp.objective[static_cast<std::size_t>(m)] = 1;
    auto diff_row = [&](Bundle plus, Bundle minus) {
        std::vector<Rational> row(static_cast<std::size_t>(m + 1));
        for (int j : plus.items())
            row[static_cast<std::size_t>(j)] += 1;
        for (int j : minus.items())
            row[static_cast<std::size_t>(j)] -= 1;
        return row;
    };
    const auto& levels = pref.levels();
    for (const auto& level : levels) {
        for (std::size_t k = 1; k < level.size(); ++k) {
            lp.add_row(diff_row(level[k], level[0]), 0);
            lp.add_row(diff_row(level[0], level[k]), 0);
        }
    }
    for (std::size_t c = 0; c + 1 < levels.size(); ++c) {
        auto row = diff_row(levels[c][0], levels[c + 1][0]);
        row[static_cast<std::size_t>(m)] = 1;
        lp.add_row(std::move(row), 0);
    }
    {
        std::vector<Rational> row(static_cast<std::size_t>(m + 1));
        row[static_cast<std::size_t>(m)] = 1;
        lp.add_row(std::move(row), 1);
    }
    const LpSolution sol = maximize(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverBug("additive representation program did not reach an optimum");
    if (sol.value <= 0) {
        if (!verify_dual_bound(lp, sol.dual, 0))
            throw SolverBug("additive infeasibility multipliers failed their own check");
        return std::nullopt;
    }
    std::vector<Rational> u(sol.primal.begin(), sol.primal.begin() + m);
    if (!represents(CardinalValuation::additive(u), pref))
        throw SolverBug("additive witness does not represent the preference");
    return u;
}

ClassLabelSet classify(const OrdinalPreference& pref) {
    require_monotone(pref);
    ClassLabelSet out;
    out.strict = pref.strict();
    out.leveled = is_leveled(pref);
    out.lex = lexicographic_order(pref).has_value();
    out.rspn = responsive_order(pref).has_value();
    out.add = out.rspn && is_additive_representable(pref).has_value();
    out.satattop = !find_satiation_violation(pref);
    out.submodular = out.satattop;
    out.gen = true;
    return out;
}

CardinalValuation lex_to_additive(const OrdinalPreference& pref) {
    auto order = lexicographic_order(pref);
    if (!order)
        throw PreconditionError("preference is not lexicographic");
    const int m = pref.item_count();
    std::vector<Rational> u(static_cast<std::size_t>(m));
    for (int pos = 0; pos < m; ++pos)
        u[static_cast<std::size_t>((*order)[static_cast<std::size_t>(pos)])] = Rational(mpz_class(1) << (m - 1 - pos));
    return CardinalValuation::additive(u);
}

LayerAssignment layer_assignment(const OrdinalPreference& pref) {
    LayerAssignment out;
    out.by_class.resize(static_cast<std::size_t>(pref.class_count()));
    std::iota(out.by_class.begin(), out.by_class.end(), 0);
    out.by_bundle.assign(pref.ranks().begin(), pref.ranks().end());
    return out;
}

namespace {

CardinalValuation from_layers(const OrdinalPreference& pref, const LayerAssignment& layers) {
    std::vector<Rational> v;
    v.reserve(layers.by_bundle.size());
    for (int l : layers.by_bundle)
        v.emplace_back(1 - Rational(1, mpz_class(1) << l));
    return CardinalValuation::from_values(pref.item_count(), std::move(v));
}

std::string mask_text(Bundle s) { return "mask " + std::to_string(s.bits()); }

} // namespace

CardinalValuation layer_valuation(const OrdinalPreference& pref) {
    require_monotone(pref);
    return from_layers(pref, layer_assignment(pref));
}

SubmodularRepresentation satattop_to_submodular(const OrdinalPreference& pref) {
    require_monotone(pref);
    if (auto bad = find_satiation_violation(pref))
        throw PreconditionError("item " + std::to_string(bad->item) + " adds nothing to " + mask_text(bad->smaller) +
                                " but improves its superset " + mask_text(bad->larger));
    auto layers = layer_assignment(pref);
    auto v = from_layers(pref, layers);
    if (!represents(v, pref) || !is_submodular_valuation(v))
        throw SolverBug("layer valuation failed its own checks");
    return {std::move(v), std::move(layers)};
}

std::optional<SubmodularityViolation> find_submodularity_violation(const CardinalValuation& v) {
    const int m = v.item_count();
    for (Bundle s : all_bundles(m)) {
        for (int j = 0; j < m; ++j) {
            if (s.contains(j))
                continue;
            const Rational gain = v(s.with(j)) - v(s);
            for (int k = 0; k < m; ++k) {
                if (k == j || s.contains(k))
                    continue;
                const Bundle t = s.with(k);
                if (v(t.with(j)) - v(t) > gain)
                    return SubmodularityViolation{s, t, j};
            }
        }
    }
    return std::nullopt;
}

std::vector<HierarchyWitness> hierarchy_witnesses() {
    std::vector<HierarchyWitness> out;

    out.push_back({"LEX", {"a", "b", "c"}, lexicographic_preference(3, std::vector<int>{0, 1, 2}), "LEX", ""});

    {
        const std::vector<Rational> u{3, 2, 2};
        out.push_back({"ADD\\LEX", {"a", "b", "c"}, valuation_to_preference(CardinalValuation::additive(u)), "ADD",
                       "LEX"});
    }

    {
        // Sums of (12, 8, 4, 2, 1) with ties broken by a code below 1/2 that makes
        // AD beat BCD and BCE beat AE; no additive values can do both.
        const int u[] = {12, 8, 4, 2, 1};
        std::vector<long> score(32);
        for (unsigned mask = 0; mask < 32; ++mask) {
            long value = 0;
            unsigned reversed = 0;
            for (int j = 0; j < 5; ++j)
                if (mask >> j & 1U) {
                    value += u[j];
                    reversed |= 1U << (4 - j);
                }
            unsigned code = reversed;
            if (reversed == 0b01101)
                code = 0b10001; // BCE takes AE's code
            else if (reversed == 0b10001)
                code = 0b01101;
            score[mask] = 64 * value + static_cast<long>(code);
        }
        out.push_back({"RSPN\\ADD", {"A", "B", "C", "D", "E"},
                       OrdinalPreference::from_scores(5, std::span<const long>(score)), "RSPN", "ADD"});
    }

    {
        const int a = 0b001, b = 0b010, c = 0b100;
        const std::vector<Bundle> chain{Bundle(0), Bundle(c), Bundle(b), Bundle(a), Bundle(a | c),
                                        Bundle(b | c), Bundle(a | b), Bundle(a | b | c)};
        std::vector<std::vector<Bundle>> levels;
        for (Bundle s : chain)
            levels.push_back({s});
        out.push_back({"SUBMODULAR\\RSPN", {"A", "B", "C"}, OrdinalPreference::from_levels(3, std::move(levels)),
                       "SUBMODULAR", "RSPN"});
    }

    {
        std::vector<std::vector<Bundle>> levels{{Bundle(0), Bundle(0b01)}, {Bundle(0b10)}, {Bundle(0b11)}};
        out.push_back({"GEN\\SUBMODULAR", {"A", "B"}, OrdinalPreference::from_levels(2, std::move(levels)), "GEN",
                       "SUBMODULAR"});
    }
    return out;
}

} // namespace fisherce
