#include "helpers.hpp"

#include "fisherce/errors.hpp"
#include "fisherce/experiments.hpp"
#include "fisherce/io.hpp"

#include <doctest.h>

#include <algorithm>

using namespace fisherce;
using namespace testing_support;

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("9/20") == Rational(9, 20));
    CHECK(parse_rational("0.45") == Rational(9, 20));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("1e-6") == Rational(1, 1000000));
    CHECK(parse_rational("-3") == -3);
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    for (const char* bad : {"", "abc", "1/0", "1/", "0x10", "1.2.3", "nan"})
        CHECK_THROWS_AS(parse_rational(bad), InvalidInput);
}

TEST_CASE("bundles are bit sets") {
    const Bundle s = Bundle::of({0, 2});
    CHECK(s.size() == 2);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.subset_of(Bundle::full(3)));
    CHECK((s | Bundle::single(1)) == Bundle::full(3));
    CHECK((Bundle::full(3) - s) == Bundle::single(1));
    CHECK(s.items() == std::vector<int>{0, 2});
    CHECK(all_bundles(3).size() == 8);
}

TEST_CASE("compare follows the fixture values") {
    const Market market = example_five_items();
    const auto& alice = market.preference(market.agent_index("alice"));
    const Bundle a = Bundle::single(0), b = Bundle::single(1);
    CHECK(alice.compare(a, a) == std::weak_ordering::equivalent);
    CHECK(alice.compare(a, b) == std::weak_ordering::less);
    CHECK(alice.compare(Bundle::of({0, 1}), Bundle::of({2, 3, 4})) == std::weak_ordering::greater);
    for (Bundle s : all_bundles(5))
        CHECK(five_items_alice()(s) == fixture_value(true, s));
    CHECK(five_items_alice()(Bundle::of({0, 1, 2, 3})) == 1103);
}

TEST_CASE("monotonicity check") {
    const auto bad = OrdinalPreference::from_levels(1, {{Bundle::single(0)}, {Bundle()}});
    CHECK(check_monotone(bad) == std::vector<std::pair<Bundle, Bundle>>{{Bundle(), Bundle::single(0)}});
    CHECK(check_monotone(valuation_to_preference(five_items_alice())).empty());
    const auto lev = leveled_preference(2, {{{Bundle::single(1), Bundle::single(0)}}, {{Bundle::full(2)}}});
    CHECK(check_monotone(lev).empty());
    CHECK_THROWS_AS(Market({"A"}, {Agent::ordinal("x", 1, bad)}), InvalidInput);
}

TEST_CASE("valuation to preference") {
    const auto p = valuation_to_preference(CardinalValuation::additive(rationals({"1", "2"})));
    CHECK(p.strict());
    CHECK(p.levels() == std::vector<std::vector<Bundle>>{{Bundle()}, {Bundle(1)}, {Bundle(2)}, {Bundle(3)}});
    const auto tie = valuation_to_preference(CardinalValuation::from_values(2, rationals({"0", "1", "1", "2"})));
    CHECK(tie.indifferent(Bundle::single(0), Bundle::single(1)));

    // Bob's order from the defining rule. Equal sums such as A+D = B+C tie.
    const auto bob = valuation_to_preference(five_items_bob());
    CHECK_FALSE(bob.strict());
    CHECK(bob.class_count() == 24);
    for (Bundle s : all_bundles(5))
        for (Bundle t : all_bundles(5))
            CHECK((bob.rank(s) < bob.rank(t)) == (fixture_value(false, s) < fixture_value(false, t)));
    CHECK(bob.levels()[22] == std::vector<Bundle>{Bundle::of({1, 2, 3, 4})});
    CHECK(bob.levels()[23] == std::vector<Bundle>{Bundle::full(5)});
    CHECK(valuation_to_preference(five_items_alice()).strict());
}

TEST_CASE("represents") {
    const auto v = CardinalValuation::additive(rationals({"1", "2"}));
    CHECK(represents(v, valuation_to_preference(v)));
    const auto wrong =
        OrdinalPreference::from_levels(2, {{Bundle()}, {Bundle(1)}, {Bundle(3)}, {Bundle(2)}});
    CHECK_FALSE(represents(v, wrong));
    CHECK_THROWS_AS(CardinalValuation::from_values(2, rationals({"0", "2", "1", "1"})), InvalidInput);
    CHECK_THROWS_AS(CardinalValuation::from_values(1, rationals({"1", "2"})), InvalidInput);
}

TEST_CASE("market canonical order and lookups") {
    const Market market = additive_market(rationals({"0.3", "0.7"}), {rationals({"1", "2"}), rationals({"2", "1"})});
    CHECK(market.agent(0).name == "a2");
    CHECK(market.input_index(0) == 1);
    CHECK(market.agent_index("a1") == 1);
    CHECK_THROWS_AS(market.agent_index("zed"), InvalidInput);
    CHECK(market.parse_bundle_key("BA") == Bundle::full(2));
    CHECK(market.bundle_name(Bundle::full(2)) == "AB");
    CHECK_THROWS_AS(market.parse_bundle_key("AC"), InvalidBundle);
    CHECK_THROWS_AS(parse_bundle_key({"A", "AB", "B"}, "AB"), InvalidBundle);
    CHECK(parse_bundle_key({"x", "yz"}, "yzx") == Bundle::full(2));
    const Market swapped = market.with_budgets(rationals({"0.2", "0.8"}));
    CHECK(swapped.agent(0).name == "a1");
    CHECK(market.normalized().total_budget() == 1);
}

TEST_CASE("market rejects bad shapes") {
    CHECK_THROWS_AS(additive_market(rationals({"0", "1"}), {rationals({"1"}), rationals({"1"})}), InvalidInput);
    CHECK_THROWS_AS(Market({"A", "A"}, {Agent::additive("x", 1, rationals({"1", "1"}))}), InvalidInput);
    CHECK_THROWS_AS(Market({"A"}, {Agent::additive("x", 1, rationals({"1"})), Agent::additive("x", 1, rationals({"1"}))}),
                    InvalidInput);
    CHECK_THROWS_AS(Market({"A", "B"}, {Agent::additive("x", 1, rationals({"1"}))}), InvalidInput);
    std::vector<std::string> many = item_names(13);
    CHECK_THROWS_AS(Market(many, {Agent::additive("x", 1, std::vector<Rational>(13, 1))}), InvalidInput);
    CHECK_NOTHROW(Market(many, {Agent::additive("x", 1, std::vector<Rational>(13, 1))}, 13));
}

TEST_CASE("allocations and prices") {
    const Allocation x(2, {1, 0, 1});
    CHECK(x.bundle(1) == Bundle::of({0, 2}));
    const std::vector<Bundle> parts{Bundle::single(1), Bundle::of({0, 2})};
    CHECK(Allocation::from_bundles(3, parts) == x);
    const std::vector<Bundle> overlap{Bundle::of({0, 1}), Bundle::of({1, 2})};
    CHECK_THROWS_AS(Allocation::from_bundles(3, overlap), InvalidInput);
    const std::vector<Bundle> missing{Bundle::single(0), Bundle::single(1)};
    CHECK_THROWS_AS(Allocation::from_bundles(3, missing), InvalidInput);
    CHECK_THROWS_AS(Allocation(2, {0, 2}), InvalidInput);
    const PriceVector p(rationals({"1/4", "1/2", "1/8"}));
    CHECK(p.price(Bundle::of({0, 2})) == Rational(3, 8));
    CHECK_THROWS_AS(PriceVector(rationals({"-1"})), InvalidInput);
}

TEST_CASE("budgets") {
    const Budgets b(rationals({"1", "3"}));
    CHECK(b[0] == 3);
    CHECK(b.total() == 4);
    CHECK(b.normalize()[1] == Rational(1, 4));
    CHECK_FALSE(Budgets(rationals({"1/2", "1/2"})).pairwise_distinct());
    CHECK_THROWS_AS(Budgets(rationals({"1", "-1"})), InvalidInput);
}

TEST_CASE("market files round trip") {
    const Market fixture = example_five_items();
    const Market back = parse_market(serialize_market(fixture));
    CHECK(back.items() == fixture.items());
    for (int i = 0; i < 2; ++i) {
        CHECK(back.agent(i).name == fixture.agent(i).name);
        CHECK(back.budget(i) == fixture.budget(i));
        CHECK(back.preference(i) == fixture.preference(i));
    }
    const char* leveled = R"({"items": ["A", "B"], "agents": [
        {"name": "x", "budget": "0.6", "preference": {"kind": "leveled", "by_cardinality": [[["B"], ["A"]], [["A", "B"]]]}},
        {"name": "y", "budget": "0.4", "preference": {"kind": "lexicographic", "order": ["B", "A"]}}]})";
    const Market m = parse_market(leveled);
    CHECK(m.preference(0).prefers(Bundle::single(0), Bundle::single(1)));
    CHECK(m.preference(1).prefers(Bundle::single(1), Bundle::single(0)));
    CHECK(parse_market(serialize_market(m)).preference(1) == m.preference(1));

    const char* levels = R"({"items": ["A", "B"], "agents": [
        {"name": "x", "budget": "1", "preference": {"kind": "ordinal", "levels": [["A"], [["B"], ["A", "B"]]]}}]})";
    const Market o = parse_market(levels);
    CHECK(o.preference(0).indifferent(Bundle::single(1), Bundle::full(2)));
    CHECK(o.preference(0).rank(Bundle()) == 0);
}

TEST_CASE("market file errors carry a location") {
    auto message = [](const char* text) {
        try {
            parse_market(text);
        } catch (const InvalidInput& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("{").find("JSON") != std::string::npos);
    CHECK(message(R"({"items": ["A"], "agents": [{"name": "x", "budget": 0.5,
        "preference": {"kind": "additive", "values": {"A": "1"}}}]})")
              .find("agents[0].budget") != std::string::npos);
    CHECK(message(R"({"items": ["A"], "agents": [{"name": "x", "budget": "-1",
        "preference": {"kind": "additive", "values": {"A": "1"}}}]})")
              .find("agents[0]") != std::string::npos);
    CHECK(message(R"({"items": ["A", "B"], "agents": [{"name": "x", "budget": "1",
        "preference": {"kind": "ordinal", "levels": [["A"], ["B"], ["B"], ["A", "B"]]}}]})")
              .find("agents[0].preference") != std::string::npos);
    CHECK(message(R"({"items": ["A"], "agents": [{"name": "x", "budget": "1",
        "preference": {"kind": "ordinal", "levels": [["A"], []]}}]})")
              .find("monoton") != std::string::npos);
}
