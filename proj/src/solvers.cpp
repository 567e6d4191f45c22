#include "fisherce/solvers.hpp"

#include "fisherce/classes.hpp"
#include "fisherce/errors.hpp"

#include <array>

namespace fisherce {

namespace {

std::string q(const Rational& x) { return to_string(x); }

// Best bundle of exactly `k` items from `among`; ties go to the smallest mask.
Bundle best_of_size(const OrdinalPreference& pref, Bundle among, int k) {
    std::optional<Bundle> best;
    for (Bundle s : all_bundles(pref.item_count())) {
        if (s.size() != k || !s.subset_of(among))
            continue;
        if (!best || pref.prefers(s, *best))
            best = s;
    }
    if (!best)
        throw SolverBug("no bundle of the requested size");
    return *best;
}

int top_item(const OrdinalPreference& pref, Bundle among) {
    return best_of_size(pref, among, 1).items().front();
}

ConstructiveResult finish(const Market& market, std::vector<Bundle> bundles, std::vector<Rational> prices,
                          SolverPlan plan, const std::string& solver) {
    bundles.resize(static_cast<std::size_t>(market.agent_count()));
    auto allocation = Allocation::from_bundles(market.item_count(), bundles);
    auto cert = verify_ce(market, allocation, PriceVector(std::move(prices)));
    if (!cert.valid())
        throw SolverBug(solver + " (" + plan.case_label + ") built a certificate that fails verification");
    return {std::move(cert), std::move(plan)};
}

void note_midpoint(SolverPlan& plan, const Rational& eps, const std::string& lo, const std::string& hi) {
    plan.epsilon = eps;
    plan.notes.push_back("epsilon = " + q(eps) + ", midpoint of (" + lo + ", " + hi + ")");
}

} // namespace

ConstructiveResult solve_three_items(const Market& market) {
    const int n = market.agent_count();
    const int m = market.item_count();
    if (m > 3)
        throw PreconditionError("three-item solver needs m <= 3, got " + std::to_string(m));
    const Bundle all = Bundle::full(m);
    const Rational b1 = market.budget(0);
    SolverPlan plan;
    std::vector<Rational> p(static_cast<std::size_t>(m));
    auto set_all = [&](Bundle s, const Rational& price) {
        for (int j : s.items())
            p[static_cast<std::size_t>(j)] = price;
    };
    const std::string name = "three-item solver";

    if (n == 1) {
        plan.case_label = "single agent";
        set_all(all, b1 / m);
        return finish(market, {all}, p, plan, name);
    }
    const Rational b2 = market.budget(1);
    if (b1 == b2)
        throw PreconditionError("three-item solver needs b1 > b2");
    if (m == 1) {
        plan.case_label = "m=1";
        p[0] = b1;
        return finish(market, {all}, p, plan, name);
    }
    const Rational b3 = n >= 3 ? market.budget(2) : Rational(0);
    if (n >= 3 && b2 == b3)
        throw PreconditionError("three-item solver needs b2 > b3");
    const auto& p0 = market.preference(0);
    const auto& p1 = market.preference(1);
    auto need_b3_above_b4 = [&] {
        if (n >= 4 && market.budget(3) == b3)
            throw PreconditionError("three-item solver needs b3 > b4 in case \"" + plan.case_label + "\"");
    };

    if (m == 2) {
        plan.case_label = "m=2";
        const int x = top_item(p0, all);
        const Bundle bx = Bundle::single(x);
        p[static_cast<std::size_t>(x)] = b1;
        set_all(all - bx, b2);
        return finish(market, {bx, all - bx}, p, plan, name);
    }

    const bool guards[] = {b1 > 3 * b2, 3 * b2 >= b1 && b1 > 2 * b2, 2 * b2 >= b1 && b1 > b2 + b3,
                           b1 == b2 + b3, b2 + b3 > b1 && b1 > b2};
    int fired = -1;
    for (int c = 0; c < 5; ++c)
        if (guards[c]) {
            if (fired != -1)
                throw SolverBug("three-item case guards overlap");
            fired = c;
        }
    if (fired == -1)
        throw SolverBug("no three-item case guard fired");

    switch (fired) {
    case 0:
        plan.case_label = "b1>3b2";
        set_all(all, b1 / 3);
        return finish(market, {all}, p, plan, name);
    case 1: {
        plan.case_label = "3b2>=b1>2b2";
        const Bundle pair = best_of_size(p0, all, 2);
        set_all(pair, b1 / 2);
        set_all(all - pair, b2);
        return finish(market, {pair, all - pair}, p, plan, name);
    }
    case 2: {
        plan.case_label = "2b2>=b1>b2+b3";
        const Bundle pair = best_of_size(p0, all, 2);
        const int outside = (all - pair).items().front();
        const Bundle top1 = best_of_size(p1, all, 1);
        if (p1.indifferent(Bundle::single(outside), top1)) {
            set_all(pair, b1 / 2);
            p[static_cast<std::size_t>(outside)] = b2;
            return finish(market, {pair, Bundle::single(outside)}, p, plan, name);
        }
        // Agent 1's favourite t lies in the pair; s is the best of the rest,
        // preferring the item outside the pair on ties.
        const int t = top1.items().front();
        int s = -1;
        for (int j : (all - Bundle::single(t)).items())
            if (s == -1 || p1.prefers(Bundle::single(j), Bundle::single(s)) ||
                (p1.indifferent(Bundle::single(j), Bundle::single(s)) && j == outside))
                s = j;
        if (s == outside) {
            const int u = (pair - Bundle::single(t)).items().front();
            const Rational eps = (b1 - b2 - b3) / 2;
            note_midpoint(plan, eps, "0", "b1-b2-b3");
            plan.case_label += ", t in pair, s outside";
            p[static_cast<std::size_t>(t)] = b2 + eps;
            p[static_cast<std::size_t>(u)] = b1 - b2 - eps;
            p[static_cast<std::size_t>(s)] = b2;
            return finish(market, {pair, Bundle::single(s)}, p, plan, name);
        }
        const int w = outside;
        const Bundle tw = Bundle::of({t, w});
        const Bundle sw = Bundle::of({s, w});
        if (p0.weakly_prefers(tw, sw)) {
            const Rational eps = (b1 - b2 - b3) / 2;
            note_midpoint(plan, eps, "0", "b1-b2-b3");
            plan.case_label += ", pair={t,s}, {t,w} kept";
            p[static_cast<std::size_t>(t)] = b2 + eps;
            p[static_cast<std::size_t>(w)] = b1 - b2 - eps;
            p[static_cast<std::size_t>(s)] = b2;
            return finish(market, {tw, Bundle::single(s)}, p, plan, name);
        }
        const Rational eps = (b2 - b3) / 2;
        note_midpoint(plan, eps, "0", "b2-b3");
        plan.case_label += ", pair={t,s}, {s,w} kept";
        p[static_cast<std::size_t>(t)] = b2;
        p[static_cast<std::size_t>(s)] = b1 - b2 + eps;
        p[static_cast<std::size_t>(w)] = b2 - eps;
        return finish(market, {sw, Bundle::single(t)}, p, plan, name);
    }
    case 3: {
        plan.case_label = "b1=b2+b3";
        for (int x = 0; x < 3; ++x) {
            const Bundle bx = Bundle::single(x);
            if (!p0.weakly_prefers(bx, all - bx))
                continue;
            plan.case_label += ", single item beats the other pair";
            need_b3_above_b4();
            const Bundle rest = all - bx;
            const int y = top_item(p1, rest);
            const int z = (rest - Bundle::single(y)).items().front();
            p[static_cast<std::size_t>(x)] = b1;
            p[static_cast<std::size_t>(y)] = b2;
            p[static_cast<std::size_t>(z)] = b3;
            return finish(market, {bx, Bundle::single(y), Bundle::single(z)}, p, plan, name);
        }
        plan.case_label += ", every single item loses to its complement";
        const int t = top_item(p1, all);
        const Bundle bt = Bundle::single(t);
        set_all(all - bt, b1 / 2);
        p[static_cast<std::size_t>(t)] = b2;
        return finish(market, {all - bt, bt}, p, plan, name);
    }
    default: {
        plan.case_label = "b2+b3>b1>b2";
        need_b3_above_b4();
        const int x = top_item(p0, all);
        const int y = top_item(p1, all - Bundle::single(x));
        const int z = (all - Bundle::of({x, y})).items().front();
        p[static_cast<std::size_t>(x)] = b1;
        p[static_cast<std::size_t>(y)] = b2;
        p[static_cast<std::size_t>(z)] = b3;
        return finish(market, {Bundle::single(x), Bundle::single(y), Bundle::single(z)}, p, plan, name);
    }
    }
}

namespace {

// Items named by role letters A..D, mapped onto actual item indices.
struct Labels {
    std::array<int, 4> item{};

    Bundle operator()(std::initializer_list<int> roles) const {
        Bundle s;
        for (int r : roles)
            s = s.with(item[static_cast<std::size_t>(r)]);
        return s;
    }
    void swap(int a, int b) { std::swap(item[static_cast<std::size_t>(a)], item[static_cast<std::size_t>(b)]); }
};

constexpr int A = 0, B = 1, C = 2, D = 3;

std::vector<Rational> priced(const Labels& l, std::array<Rational, 4> by_role) {
    std::vector<Rational> p(4);
    for (int r = 0; r < 4; ++r)
        p[static_cast<std::size_t>(l.item[static_cast<std::size_t>(r)])] = by_role[static_cast<std::size_t>(r)];
    return p;
}

ConstructiveResult four_items_mid(const Market& market, const Rational& b1, const Rational& b2, SolverPlan plan) {
    const auto& p0 = market.preference(0);
    const auto& p1 = market.preference(1);
    const Bundle all = Bundle::full(4);
    const std::string name = "four-item solver";
    plan.case_label = "3b2>b1>3b2/2";

    auto give_top_to_second = [&](int f, const std::string& why) {
        plan.case_label += ", " + why;
        const Bundle bf = Bundle::single(f);
        std::vector<Rational> p(4, b1 / 3);
        p[static_cast<std::size_t>(f)] = b2;
        return finish(market, {all - bf, bf}, p, plan, name);
    };

    int min_triple = p0.class_count(), max_pair = -1;
    for (Bundle s : all_bundles(4)) {
        if (s.size() == 3)
            min_triple = std::min(min_triple, p0.rank(s));
        if (s.size() == 2)
            max_pair = std::max(max_pair, p0.rank(s));
    }
    if (min_triple > max_pair)
        return give_top_to_second(top_item(p1, all), "every triple beats every pair");

    Labels l;
    {
        const auto ab = best_of_size(p0, all, 2).items();
        const auto cd = (all - best_of_size(p0, all, 2)).items();
        l.item = {ab[0], ab[1], cd[0], cd[1]};
    }
    const bool over_acd = p0.weakly_prefers(l({A, B}), l({A, C, D}));
    const bool over_bcd = p0.weakly_prefers(l({A, B}), l({B, C, D}));
    const int k = int(over_acd) + int(over_bcd);
    if (k == 0)
        return give_top_to_second(top_item(p1, all), "best pair beats no triple");

    // AB vs CD with A = b2+eps, B = b1-b2-eps; needs AB weakly over BCD and b1 <= 2b2.
    auto pair_split_low = [&](const std::string& why) {
        plan.case_label += ", " + why;
        const Rational eps = (b1 - 3 * b2 / 2) / 2;
        note_midpoint(plan, eps, "0", "b1-3b2/2");
        return finish(market, {l({A, B}), l({C, D})}, priced(l, {b2 + eps, b1 - b2 - eps, b2 / 2, b2 / 2}), plan,
                      name);
    };
    // ACD vs B; needs ACD weakly over BCD and B strictly over CD for agent 2.
    auto triple_split = [&](const std::string& why) {
        plan.case_label += ", " + why;
        const Rational eps = (b1 - b2) / 2;
        plan.delta = b1 - b2;
        note_midpoint(plan, eps, "0", "b1-b2");
        const Rational rest = (b1 - b2 - eps) / 2;
        return finish(market, {l({A, C, D}), l({B})}, priced(l, {b2 + eps, b2, rest, rest}), plan, name);
    };

    if (k == 1) {
        if (over_acd)
            l.swap(A, B); // now AB is weakly over BCD only
        const Bundle top1 = best_of_size(p1, all, 1);
        for (int f = 0; f < 4; ++f)
            if (f != l.item[A] && p1.indifferent(Bundle::single(f), top1))
                return give_top_to_second(f, "one triple below the best pair, agent 2's favourite is not A");
        if (p1.weakly_prefers(l({C, D}), l({B}))) {
            if (b1 > 2 * b2) {
                plan.case_label += ", one triple below the best pair, CD over B, b1>2b2";
                const Rational eps = b2 / 4;
                note_midpoint(plan, eps, "0", "b2/2");
                return finish(market, {l({A, B}), l({C, D})},
                              priced(l, {b1 - b2 + eps, b2 - eps, b2 / 2, b2 / 2}), plan, name);
            }
            return pair_split_low("one triple below the best pair, CD over B, b1<=2b2");
        }
        return triple_split("one triple below the best pair, B over CD");
    }

    if (b1 > 2 * b2) {
        plan.case_label += ", both triples below the best pair, b1>2b2";
        return finish(market, {l({A, B}), l({C, D})}, priced(l, {b1 / 2, b1 / 2, b2 / 2, b2 / 2}), plan, name);
    }
    if (p1.weakly_prefers(l({C, D}), l({B})))
        return pair_split_low("both triples below the best pair, CD over B");
    if (p1.weakly_prefers(l({C, D}), l({A}))) {
        l.swap(A, B);
        return pair_split_low("both triples below the best pair, CD over A");
    }
    if (p0.prefers(l({B, C, D}), l({A, C, D})))
        l.swap(A, B);
    return triple_split("both triples below the best pair, A and B over CD");
}

ConstructiveResult four_items_low(const Market& market, const Rational& b1, const Rational& b2, SolverPlan plan) {
    const auto& p0 = market.preference(0);
    const auto& p1 = market.preference(1);
    const Bundle all = Bundle::full(4);
    const std::string name = "four-item solver";
    plan.case_label = "3b2/2>b1>b2";
    const Rational delta = b1 - b2;
    plan.delta = delta;

    const int a = top_item(p1, all);
    const Bundle ba = Bundle::single(a);
    const Bundle bcd = all - ba;

    std::vector<Bundle> pairs;
    for (Bundle s : all_bundles(4))
        if (s.size() == 2)
            pairs.push_back(s);

    std::optional<Bundle> chosen;
    for (Bundle s : pairs)
        if (p0.prefers(s, bcd) && p1.weakly_prefers(all - s, ba) && (!chosen || p0.prefers(s, *chosen)))
            chosen = s;

    if (chosen) {
        std::vector<Bundle> better;
        for (Bundle s : pairs)
            if (p0.prefers(s, *chosen))
                better.push_back(s);
        const Bundle mine = *chosen;
        const Bundle theirs = all - mine;
        std::vector<Rational> p(4);
        if (better.empty()) {
            plan.case_label += ", qualifying pair is the best pair";
            for (int j = 0; j < 4; ++j)
                p[static_cast<std::size_t>(j)] = mine.contains(j) ? b1 / 2 : b2 / 2;
            return finish(market, {mine, theirs}, p, plan, name);
        }
        if (better.size() == 1) {
            plan.case_label += ", qualifying pair is second best";
            const int bp = (better[0] - ba).items().front();
            const int cp = (mine - ba).items().front();
            const int dp = (all - ba - Bundle::of({bp, cp})).items().front();
            const Rational eps = delta / 2;
            note_midpoint(plan, eps, "0", "delta");
            p[static_cast<std::size_t>(a)] = b1 - b2 / 2;
            p[static_cast<std::size_t>(bp)] = b2 / 2 + eps;
            p[static_cast<std::size_t>(cp)] = b2 / 2;
            p[static_cast<std::size_t>(dp)] = b2 / 2 - eps;
            return finish(market, {mine, theirs}, p, plan, name);
        }
        plan.case_label += ", qualifying pair is third best";
        const int dp = (mine - ba).items().front();
        for (int j : (all - ba - Bundle::single(dp)).items())
            p[static_cast<std::size_t>(j)] = b2 / 2;
        p[static_cast<std::size_t>(a)] = b1 / 2 + delta;
        p[static_cast<std::size_t>(dp)] = b1 / 2 - delta;
        return finish(market, {mine, theirs}, p, plan, name);
    }

    if (p0.weakly_prefers(ba, bcd)) {
        plan.case_label += ", agent 1 takes agent 2's favourite";
        std::vector<Rational> p(4, b2 / 3);
        p[static_cast<std::size_t>(a)] = b1;
        return finish(market, {ba, bcd}, p, plan, name);
    }

    std::vector<Bundle> better;
    for (Bundle s : pairs)
        if (p0.prefers(s, bcd))
            better.push_back(s);
    std::vector<Rational> p(4);
    p[static_cast<std::size_t>(a)] = b2;
    auto one_expensive = [&](int x0) {
        const Rational eps = 3 * delta / 4;
        note_midpoint(plan, eps, "delta/2", "delta");
        for (int j : bcd.items())
            p[static_cast<std::size_t>(j)] = j == x0 ? b1 - 2 * eps : eps;
        return finish(market, {bcd, ba}, p, plan, name);
    };

    switch (better.size()) {
    case 1:
        plan.case_label += ", one pair over BCD";
        return one_expensive((better[0] - ba).items().front());
    case 2: {
        plan.case_label += ", two pairs over BCD";
        const Rational eps = delta / 2;
        note_midpoint(plan, eps, "0", "delta");
        const Bundle xy = (better[0] | better[1]) - ba;
        for (int j : bcd.items())
            p[static_cast<std::size_t>(j)] = xy.contains(j) ? (b1 - eps) / 2 : eps;
        return finish(market, {bcd, ba}, p, plan, name);
    }
    case 3:
        plan.case_label += ", three pairs over BCD";
        for (int j : bcd.items())
            p[static_cast<std::size_t>(j)] = b1 / 3;
        return finish(market, {bcd, ba}, p, plan, name);
    default:
        break;
    }

    // No pair beats BCD for agent 1. Pairs inside BCD that agent 2 ranks above her
    // favourite item must cost more than b2.
    std::vector<Bundle> wanted;
    for (Bundle s : pairs)
        if (s.subset_of(bcd) && p1.prefers(s, ba))
            wanted.push_back(s);
    if (wanted.size() < 3) {
        plan.case_label += ", no pair over BCD, agent 2 wants " + std::to_string(wanted.size()) + " BCD pairs";
        Bundle common = bcd;
        for (Bundle s : wanted)
            common = common & s;
        return one_expensive(common.items().front());
    }
    plan.case_label += ", no pair over BCD, agent 2 wants every BCD pair";
    const Bundle x = best_of_size(p0, all, 2);
    for (int j = 0; j < 4; ++j)
        p[static_cast<std::size_t>(j)] = x.contains(j) ? b1 / 2 : b2 / 2;
    return finish(market, {x, all - x}, p, plan, name);
}

} // namespace

ConstructiveResult solve_four_items(const Market& market) {
    if (market.agent_count() != 2 || market.item_count() != 4)
        throw PreconditionError("four-item solver needs n=2 and m=4");
    const Rational b1 = market.budget(0);
    const Rational b2 = market.budget(1);
    if (b1 == b2)
        throw PreconditionError("four-item solver needs b1 > b2");
    const Rational r = b1 / b2;
    if (r == 4 || r == 3 || r == Rational(3, 2))
        throw PreconditionError("four-item solver needs b1/b2 outside {4, 3, 3/2}, got " + q(r));
    SolverPlan plan;
    const Bundle all = Bundle::full(4);
    const std::string name = "four-item solver";
    if (r > 4) {
        plan.case_label = "b1>4b2";
        return finish(market, {all}, std::vector<Rational>(4, b1 / 4), plan, name);
    }
    if (r > 3) {
        plan.case_label = "4b2>b1>3b2";
        const Bundle t = best_of_size(market.preference(0), all, 3);
        std::vector<Rational> p(4, b1 / 3);
        p[static_cast<std::size_t>((all - t).items().front())] = b2;
        return finish(market, {t, all - t}, p, plan, name);
    }
    if (r > Rational(3, 2))
        return four_items_mid(market, b1, b2, plan);
    return four_items_low(market, b1, b2, plan);
}

ConstructiveResult solve_leveled_two_agents(const Market& market) {
    if (market.agent_count() != 2)
        throw PreconditionError("leveled solver needs exactly 2 agents");
    for (int i = 0; i < 2; ++i)
        if (!is_leveled(market.preference(i)))
            throw PreconditionError("leveled solver: agent \"" + market.agent(i).name + "\" is not leveled");
    const int m = market.item_count();
    const Rational total = market.total_budget();
    const Rational s1 = market.budget(0) / total;
    const Rational s2 = market.budget(1) / total;
    if (is_integer(m * s1))
        throw PreconditionError("leveled solver needs m*b1 not an integer (budget shares), got " + q(m * s1));
    const int k1 = static_cast<int>(floor(m * s1).get_si());
    const int k2 = static_cast<int>(floor(m * s2).get_si());
    if (k1 + k2 != m - 1)
        throw SolverBug("k1 + k2 != m - 1");
    const Rational low1 = s1 / (k1 + 1);
    const Rational low2 = s2 / (k2 + 1);
    if (low1 == low2)
        throw PreconditionError("leveled solver needs b1/(k1+1) != b2/(k2+1)");

    SolverPlan plan;
    plan.p_star = Rational(1, m);
    plan.k1 = k1;
    plan.k2 = k2;
    const auto& p0 = market.preference(0);
    const auto& p1 = market.preference(1);
    const Bundle all = Bundle::full(m);
    std::vector<Rational> p(static_cast<std::size_t>(m));
    const std::string name = "leveled solver";

    if (low1 > low2) {
        plan.case_label = "b1/(k1+1)>b2/(k2+1)";
        if (!(low1 < *plan.p_star) || (k2 > 0 && !(*plan.p_star < s2 / k2)))
            throw SolverBug("leveled price chain b1/(k1+1) < 1/m < b2/k2 fails");
        const Bundle theirs = best_of_size(p1, all, k2);
        for (int j = 0; j < m; ++j)
            p[static_cast<std::size_t>(j)] = total * (theirs.contains(j) ? s2 / k2 : low1);
        return finish(market, {all - theirs, theirs}, p, plan, name);
    }
    plan.case_label = "b1/(k1+1)<b2/(k2+1)";
    if (k1 == 0)
        throw SolverBug("mirror leveled case with k1 = 0");
    const Bundle mine = best_of_size(p0, all, k1);
    for (int j = 0; j < m; ++j)
        p[static_cast<std::size_t>(j)] = total * (mine.contains(j) ? s1 / k1 : low2);
    return finish(market, {mine, all - mine}, p, plan, name);
}

ConstructiveResult solve_lexicographic(const Market& market) {
    const int n = market.agent_count();
    const int m = market.item_count();
    std::vector<std::vector<int>> orders;
    for (int i = 0; i < n; ++i) {
        auto order = lexicographic_order(market.preference(i));
        if (!order)
            throw PreconditionError("lexicographic solver: agent \"" + market.agent(i).name +
                                    "\" is not lexicographic");
        orders.push_back(std::move(*order));
    }
    if (!market.budgets().pairwise_distinct())
        throw PreconditionError("lexicographic solver needs pairwise distinct budgets");

    SolverPlan plan;
    plan.case_label = "serial dictatorship";
    std::vector<Bundle> bundles(static_cast<std::size_t>(n));
    std::vector<Rational> p(static_cast<std::size_t>(m));
    Bundle left = Bundle::full(m);
    for (int i = 0; i + 1 < n && !left.empty(); ++i) {
        for (int j : orders[static_cast<std::size_t>(i)])
            if (left.contains(j)) {
                bundles[static_cast<std::size_t>(i)] = Bundle::single(j);
                p[static_cast<std::size_t>(j)] = market.budget(i);
                left = left.without(j);
                break;
            }
    }
    if (!left.empty()) {
        bundles[static_cast<std::size_t>(n - 1)] = left;
        for (int j : left.items())
            p[static_cast<std::size_t>(j)] = market.budget(n - 1) / left.size();
    }
    return finish(market, bundles, p, plan, "lexicographic solver");
}

SolveOutcome solve(const Market& market, const EnumerationLimits& limits) {
    SolveOutcome out;
    using Solver = ConstructiveResult (*)(const Market&);
    const std::pair<const char*, Solver> chain[] = {{"lexicographic", &solve_lexicographic},
                                                    {"leveled", &solve_leveled_two_agents},
                                                    {"three-items", &solve_three_items},
                                                    {"four-items", &solve_four_items}};
    for (const auto& [name, fn] : chain) {
        try {
            auto result = fn(market);
            out.strategy = name;
            out.certificate = std::move(result.certificate);
            out.plan = std::move(result.plan);
            return out;
        } catch (const PreconditionError& e) {
            out.skipped.push_back(std::string(name) + ": " + e.what());
        }
    }
    out.strategy = "brute-force";
    out.certificate = find_ce_bruteforce(market, limits);
    return out;
}

} // namespace fisherce
