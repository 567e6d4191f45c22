#include "fisherce/io.hpp"

#include "fisherce/errors.hpp"

#include <algorithm>
#include <set>

namespace fisherce {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InvalidInput(path + ": " + what);
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
    if (!obj.is_object())
        fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path, std::string("missing \"") + key + "\"");
    return *it;
}

std::string text(const Json& j, const std::string& path) {
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

Rational number(const Json& j, const std::string& path) {
    if (j.is_number_integer())
        return Rational(j.dump());
    if (!j.is_string())
        fail(path, "numbers must be written as strings (\"9/20\", \"0.45\")");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
        fail(path, e.what());
    }
}

Bundle bundle_of(const Json& j, const std::vector<std::string>& items, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected an array of item names");
    Bundle s;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string name = text(j[k], path + "[" + std::to_string(k) + "]");
        auto it = std::find(items.begin(), items.end(), name);
        if (it == items.end())
            fail(path, "unknown item \"" + name + "\"");
        const int idx = static_cast<int>(it - items.begin());
        if (s.contains(idx))
            fail(path, "item \"" + name + "\" repeated");
        s = s.with(idx);
    }
    return s;
}

// A level is one bundle (array of item names, [] for ∅) or a tie group (array
// of such arrays).
std::vector<Bundle> level_of(const Json& j, const std::vector<std::string>& items, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected a bundle or a group of bundles");
    const bool group = !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_array(); });
    if (!group)
        return {bundle_of(j, items, path)};
    std::vector<Bundle> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(bundle_of(j[k], items, path + "[" + std::to_string(k) + "]"));
    return out;
}

Json level_to_json(const std::vector<std::string>& items, const std::vector<Bundle>& level) {
    auto one = [&](Bundle s) {
        Json a = Json::array();
        for (int j : s.items())
            a.push_back(items[static_cast<std::size_t>(j)]);
        return a;
    };
    if (level.size() == 1)
        return one(level.front());
    Json g = Json::array();
    for (Bundle s : level)
        g.push_back(one(s));
    return g;
}

Agent agent_from_json(const Json& j, const std::vector<std::string>& items, const std::string& path) {
    const std::string name = text(member(j, path, "name"), path + ".name");
    const Rational budget = number(member(j, path, "budget"), path + ".budget");
    if (budget <= 0)
        fail(path + ".budget", "budget " + to_string(budget) + " is not strictly positive");
    const std::string ppath = path + ".preference";
    const Json& pref = member(j, path, "preference");
    const std::string kind = text(member(pref, ppath, "kind"), ppath + ".kind");
    const int m = static_cast<int>(items.size());

    try {
        if (kind == "ordinal") {
            const Json& levels = member(pref, ppath, "levels");
            if (!levels.is_array())
                fail(ppath + ".levels", "expected an array");
            std::vector<std::vector<Bundle>> parsed;
            bool has_empty = false;
            for (std::size_t k = 0; k < levels.size(); ++k) {
                parsed.push_back(level_of(levels[k], items, ppath + ".levels[" + std::to_string(k) + "]"));
                for (Bundle s : parsed.back())
                    has_empty = has_empty || s.empty();
            }
            if (!has_empty)
                parsed.insert(parsed.begin(), std::vector<Bundle>{Bundle{}});
            return Agent::ordinal(name, budget, OrdinalPreference::from_levels(m, std::move(parsed)));
        }
        if (kind == "cardinal") {
            const Json& values = member(pref, ppath, "values");
            if (!values.is_object())
                fail(ppath + ".values", "expected an object keyed by bundle");
            std::vector<std::optional<Rational>> v(bundle_count(m));
            v[0] = Rational(0);
            for (const auto& [key, val] : values.items()) {
                const std::string vpath = ppath + ".values[\"" + key + "\"]";
                Bundle s;
                try {
                    s = parse_bundle_key(items, key);
                } catch (const InvalidInput& e) {
                    fail(vpath, e.what());
                }
                if (s.empty()) {
                    if (number(val, vpath) != 0)
                        fail(vpath, "the empty bundle must have value 0");
                    continue;
                }
                if (v[s.bits()])
                    fail(vpath, "bundle given twice");
                v[s.bits()] = number(val, vpath);
            }
            std::vector<Rational> full;
            for (std::size_t mask = 0; mask < v.size(); ++mask) {
                if (!v[mask])
                    fail(ppath + ".values", "missing value for bundle mask " + std::to_string(mask));
                full.push_back(*v[mask]);
            }
            return Agent::cardinal(name, budget, CardinalValuation::from_values(m, std::move(full)));
        }
        if (kind == "additive") {
            const Json& values = member(pref, ppath, "values");
            if (!values.is_object())
                fail(ppath + ".values", "expected an object keyed by item");
            std::vector<Rational> u;
            for (const auto& item : items) {
                auto it = values.find(item);
                if (it == values.end())
                    fail(ppath + ".values", "missing value for item \"" + item + "\"");
                u.push_back(number(*it, ppath + ".values[\"" + item + "\"]"));
            }
            if (values.size() != items.size())
                fail(ppath + ".values", "keys must be exactly the item names");
            return Agent::additive(name, budget, std::move(u));
        }
        if (kind == "lexicographic") {
            const Json& order = member(pref, ppath, "order");
            Bundle s = bundle_of(order, items, ppath + ".order");
            if (s != Bundle::full(m))
                fail(ppath + ".order", "must list every item exactly once");
            std::vector<int> ranking;
            for (const auto& e : order)
                ranking.push_back(static_cast<int>(std::find(items.begin(), items.end(), e.get<std::string>()) -
                                                   items.begin()));
            return Agent::lexicographic(name, budget, m, std::move(ranking));
        }
        if (kind == "leveled") {
            const Json& by = member(pref, ppath, "by_cardinality");
            if (!by.is_array())
                fail(ppath + ".by_cardinality", "expected an array");
            std::vector<std::vector<std::vector<Bundle>>> parsed;
            for (std::size_t k = 0; k < by.size(); ++k) {
                const std::string kpath = ppath + ".by_cardinality[" + std::to_string(k) + "]";
                if (!by[k].is_array())
                    fail(kpath, "expected an array of levels");
                parsed.emplace_back();
                for (std::size_t l = 0; l < by[k].size(); ++l)
                    parsed.back().push_back(level_of(by[k][l], items, kpath + "[" + std::to_string(l) + "]"));
            }
            return Agent::leveled(name, budget, m, std::move(parsed));
        }
    } catch (const InvalidInput& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0)
            throw;
        fail(ppath, msg);
    }
    fail(ppath + ".kind", "unknown preference kind \"" + kind + "\"");
}

} // namespace

Market market_from_json(const Json& doc, int item_cap) {
    const Json& items_json = member(doc, "$", "items");
    if (!items_json.is_array())
        fail("items", "expected an array of item names");
    std::vector<std::string> items;
    for (std::size_t k = 0; k < items_json.size(); ++k)
        items.push_back(text(items_json[k], "items[" + std::to_string(k) + "]"));
    if (items.empty())
        fail("items", "market needs at least one item");
    if (static_cast<int>(items.size()) > std::min(item_cap, kMaxRepresentableItems))
        fail("items", std::to_string(items.size()) + " items exceed the cap of " + std::to_string(item_cap));
    std::set<std::string> seen;
    for (const auto& item : items)
        if (item.empty() || !seen.insert(item).second)
            fail("items", "item names must be non-empty and distinct");

    const Json& agents_json = member(doc, "$", "agents");
    if (!agents_json.is_array())
        fail("agents", "expected an array");
    std::vector<Agent> agents;
    for (std::size_t k = 0; k < agents_json.size(); ++k)
        agents.push_back(agent_from_json(agents_json[k], items, "agents[" + std::to_string(k) + "]"));
    return Market(std::move(items), std::move(agents), item_cap);
}

Market parse_market(std::string_view text, int item_cap) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    return market_from_json(doc, item_cap);
}

Json bundle_to_json(const Market& market, Bundle s) {
    Json a = Json::array();
    for (int j : s.items())
        a.push_back(market.items()[static_cast<std::size_t>(j)]);
    return a;
}

Json market_to_json(const Market& market) {
    Json doc;
    doc["items"] = market.items();
    doc["agents"] = Json::array();
    const int m = market.item_count();
    for (const auto& agent : market.agents()) {
        Json a;
        a["name"] = agent.name;
        a["budget"] = to_string(agent.budget);
        Json p;
        std::visit(
            [&](const auto& src) {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, source::Ordinal>) {
                    p["kind"] = "ordinal";
                    p["levels"] = Json::array();
                    for (const auto& level : agent.preference.levels())
                        p["levels"].push_back(level_to_json(market.items(), level));
                } else if constexpr (std::is_same_v<T, source::Cardinal>) {
                    p["kind"] = "cardinal";
                    p["values"] = Json::object();
                    for (Bundle s : all_bundles(m))
                        if (!s.empty())
                            p["values"][market.bundle_name(s)] = to_string(src.valuation(s));
                } else if constexpr (std::is_same_v<T, source::Additive>) {
                    p["kind"] = "additive";
                    p["values"] = Json::object();
                    for (int j = 0; j < m; ++j)
                        p["values"][market.items()[static_cast<std::size_t>(j)]] =
                            to_string(src.item_values[static_cast<std::size_t>(j)]);
                } else if constexpr (std::is_same_v<T, source::Lexicographic>) {
                    p["kind"] = "lexicographic";
                    p["order"] = Json::array();
                    for (int j : src.ranking)
                        p["order"].push_back(market.items()[static_cast<std::size_t>(j)]);
                } else {
                    p["kind"] = "leveled";
                    p["by_cardinality"] = Json::array();
                    for (const auto& levels : src.by_cardinality) {
                        Json k = Json::array();
                        for (const auto& level : levels)
                            k.push_back(level_to_json(market.items(), level));
                        p["by_cardinality"].push_back(std::move(k));
                    }
                }
            },
            agent.source);
        a["preference"] = std::move(p);
        doc["agents"].push_back(std::move(a));
    }
    return doc;
}

std::string serialize_market(const Market& market) { return market_to_json(market).dump(2) + "\n"; }

Json certificate_to_json(const Market& market, const CECertificate& cert) {
    Json doc;
    doc["allocation"] = Json::object();
    doc["prices"] = Json::object();
    for (int j = 0; j < market.item_count(); ++j) {
        const auto& item = market.items()[static_cast<std::size_t>(j)];
        doc["allocation"][item] = market.agent(cert.allocation.owner(j)).name;
        doc["prices"][item] = to_string(cert.prices[static_cast<std::size_t>(j)]);
    }
    doc["valid"] = cert.valid();
    doc["verdicts"] = Json::array();
    for (const auto& v : cert.report) {
        const Bundle held = cert.allocation.bundle(v.agent);
        Json e;
        e["agent"] = market.agent(v.agent).name;
        e["budget"] = to_string(market.budget(v.agent));
        e["bundle"] = bundle_to_json(market, held);
        e["cost"] = to_string(cert.prices.price(held));
        e["affordable"] = v.affordable;
        e["blocking"] = v.blocking ? bundle_to_json(market, *v.blocking) : Json(nullptr);
        e["passes"] = v.passes();
        doc["verdicts"].push_back(std::move(e));
    }
    return doc;
}

CertificateInput certificate_from_json(const Market& market, const Json& doc) {
    const Json& alloc = member(doc, "$", "allocation");
    const Json& prices = member(doc, "$", "prices");
    if (!alloc.is_object() || !prices.is_object())
        fail("$", "\"allocation\" and \"prices\" must be objects keyed by item");
    std::vector<int> owner;
    std::vector<Rational> p;
    for (const auto& item : market.items()) {
        auto a = alloc.find(item);
        auto q = prices.find(item);
        if (a == alloc.end())
            fail("allocation", "item \"" + item + "\" is not allocated");
        if (q == prices.end())
            fail("prices", "item \"" + item + "\" has no price");
        try {
            owner.push_back(market.agent_index(text(*a, "allocation." + item)));
        } catch (const InvalidInput& e) {
            fail("allocation." + item, e.what());
        }
        p.push_back(number(*q, "prices." + item));
        if (p.back() < 0)
            fail("prices." + item, "negative price");
    }
    if (alloc.size() != market.items().size() || prices.size() != market.items().size())
        fail("$", "allocation and prices must name exactly the market's items");
    return {Allocation(market.agent_count(), std::move(owner)), PriceVector(std::move(p))};
}

CertificateInput parse_certificate(const Market& market, std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    return certificate_from_json(market, doc);
}

} // namespace fisherce
