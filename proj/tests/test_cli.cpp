#include "cli.hpp"

#include "fisherce/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace fisherce;

namespace {

struct Run {
    int code;
    Json out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, Json::parse(out.str()), err.str()};
}

std::string data(const std::string& name) { return std::string(FISHERCE_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) { return std::string(FISHERCE_TEMP_DIR) + "/" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("cli: oracle certifies nonexistence on the five-item fixture") {
    const auto r = run({"oracle", data("five-items-0.55.json")});
    CHECK(r.code == 1);
    CHECK(r.out["status"] == "nonexistence certified");
    const auto s = run({"solve", data("five-items-0.55.json"), "--jobs", "2"});
    CHECK(s.code == 1);
    CHECK(s.out["strategy"] == "brute-force");
}

TEST_CASE("cli: solve prints a certificate") {
    const auto r = run({"solve", data("two-items.json")});
    CHECK(r.code == 0);
    CHECK(r.out["status"] == "ce found");
    CHECK(r.out["certificate"]["valid"] == true);
    const auto lev = run({"solve", data("leveled.json")});
    CHECK(lev.code == 0);
    CHECK(lev.out["strategy"] == "leveled");
    CHECK(lev.out["plan"]["k2"] == 0);
}

TEST_CASE("cli: verify names the blocking bundle") {
    const auto bad = run({"verify", data("market.json"), data("bad-cert.json")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("{AB}") != std::string::npos);
    CHECK(bad.out["certificate"]["valid"] == false);
    CHECK(bad.out["certificate"]["verdicts"][0]["blocking"] == Json::array({"A", "B"}));
    const auto good = run({"verify", data("market.json"), data("good-cert.json")});
    CHECK(good.code == 0);
    CHECK(good.out["certificate"]["valid"] == true);
}

TEST_CASE("cli: classify and represent") {
    const auto c = run({"classify", data("market.json"), "--agent", "alice"});
    CHECK(c.code == 0);
    CHECK(c.out["labels"] == Json::array({"LEX", "ADD", "RSPN", "SATATTOP", "SUBMODULAR", "STRICT", "GEN"}));
    CHECK(c.out["witnesses"]["lexicographic_order"] == Json::array({"A", "B", "C"}));

    const auto sub = run({"represent", data("market.json"), "--agent", "bob", "--as", "submodular"});
    CHECK(sub.code == 0);
    CHECK(sub.out["values"].size() == 7);
    const auto add = run({"represent", data("five-items-0.55.json"), "--agent", "alice", "--as", "additive"});
    CHECK(add.code == 1);
    CHECK(add.out["status"] == "not representable");
    const auto missing = run({"classify", data("market.json"), "--agent", "carol"});
    CHECK(missing.code == 2);
    CHECK(missing.out["error"]["kind"] == "invalid input");
}

TEST_CASE("cli: maximin share check") {
    const auto r = run({"mms", data("market.json"), data("good-cert.json"), "--dmax", "3"});
    CHECK(r.code == 0);
    CHECK(r.out["passes"] == true);
    CHECK(run({"mms", data("market.json"), data("good-cert.json"), "--dmax", "9"}).code == 2);
}

TEST_CASE("cli: scans") {
    const std::string csv = temp_path("scan.csv");
    const auto r = run({"scan", "--fixture", "five-items", "--samples", "4", "--csv", csv});
    CHECK(r.code == 0);
    CHECK(r.out["counts"]["nonexistence certified"] == 4);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("outcome") != std::string::npos);
    const auto w = run({"scan", "--fixture", "second-welfare", "--samples", "5"});
    CHECK(w.code == 0);
    CHECK(w.out["checks"]["pareto_optimal"] == true);
    CHECK(run({"scan", "--fixture", "nothing"}).code == 2);
}

TEST_CASE("cli: perturb and gen produce loadable markets") {
    const auto p = run({"perturb", data("two-items.json"), "--eta", "1/1000", "--seed", "3"});
    CHECK(p.code == 0);
    const Market perturbed = market_from_json(p.out);
    CHECK(perturbed.budgets().pairwise_distinct());
    CHECK(run({"perturb", data("two-items.json"), "--eta", "1/2", "--seed", "3"}).code == 2);

    const auto g = run({"gen", "--n", "3", "--m", "4", "--kind", "leveled", "--seed", "8"});
    CHECK(g.code == 0);
    const Market generated = market_from_json(g.out);
    CHECK(generated.agent_count() == 3);
    CHECK(generated.item_count() == 4);
    const std::string path = temp_path("generated.json");
    write(path, g.out.dump());
    CHECK(run({"solve", path}).code == 0);
}

TEST_CASE("cli: errors are JSON with stable exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto missing = run({"solve", temp_path("does-not-exist.json")});
    CHECK(missing.code == 2);
    CHECK(missing.out.contains("error"));
    const std::string broken = temp_path("broken.json");
    write(broken, R"({"items": ["A"], "agents": [{"name": "x", "budget": "1", "preference": {"kind": "ordinal", "levels": [["A"], []]}}]})");
    const auto bad = run({"solve", broken});
    CHECK(bad.code == 2);
    CHECK(bad.out["error"]["message"].get<std::string>().find("agents[0]") != std::string::npos);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.contains("help"));
}

TEST_CASE("cli: the enumeration cap comes from the environment") {
    ::setenv("FISHERCE_ENUM_LIMIT", "8", 1);
    const auto r = run({"oracle", data("five-items-0.55.json")});
    ::setenv("FISHERCE_ENUM_LIMIT", "junk", 1);
    const auto junk = run({"oracle", data("five-items-0.55.json")});
    ::unsetenv("FISHERCE_ENUM_LIMIT");
    CHECK(r.code == 3);
    CHECK(r.out["error"]["kind"] == "resource limit");
    CHECK(junk.code == 2);
}
