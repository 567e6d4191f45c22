#include "cli.hpp"

#include "fisherce/classes.hpp"
#include "fisherce/errors.hpp"
#include "fisherce/experiments.hpp"
#include "fisherce/fairness.hpp"
#include "fisherce/io.hpp"
#include "fisherce/solvers.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fisherce::cli {

namespace {

constexpr const char* kEnumLimitVar = "FISHERCE_ENUM_LIMIT";

struct Result {
    int code = kOk;
    Json payload;
    std::string summary;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Market load_market(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_market(text);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

CertificateInput load_certificate(const Market& market, const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_certificate(market, text);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

EnumerationLimits limits_from(int jobs) {
    EnumerationLimits limits;
    limits.jobs = jobs;
    if (const char* env = std::getenv(kEnumLimitVar)) {
        try {
            std::size_t used = 0;
            const auto value = std::stoull(env, &used);
            if (used != std::string(env).size() || value == 0)
                throw std::invalid_argument(env);
            limits.max_allocations = value;
        } catch (const std::exception&) {
            throw InvalidInput(std::string(kEnumLimitVar) + " must be a positive integer, got \"" + env + "\"");
        }
    }
    return limits;
}

Json plan_to_json(const SolverPlan& plan) {
    Json j;
    j["case"] = plan.case_label;
    if (plan.p_star)
        j["p_star"] = to_string(*plan.p_star);
    if (plan.k1)
        j["k1"] = *plan.k1;
    if (plan.k2)
        j["k2"] = *plan.k2;
    if (plan.delta)
        j["delta"] = to_string(*plan.delta);
    if (plan.epsilon)
        j["epsilon"] = to_string(*plan.epsilon);
    if (!plan.notes.empty())
        j["notes"] = plan.notes;
    return j;
}

Json bundle_names(const Market& market, Bundle s) { return bundle_to_json(market, s); }

Json values_json(const Market& market, const CardinalValuation& v) {
    Json j = Json::object();
    for (Bundle s : all_bundles(market.item_count()))
        if (!s.empty())
            j[market.bundle_name(s)] = to_string(v(s));
    return j;
}

Result cmd_solve(const std::string& file, int jobs) {
    const Market market = load_market(file);
    const auto outcome = solve(market, limits_from(jobs));
    Result r;
    r.payload["command"] = "solve";
    r.payload["strategy"] = outcome.strategy;
    r.payload["skipped"] = outcome.skipped;
    if (outcome.plan)
        r.payload["plan"] = plan_to_json(*outcome.plan);
    if (outcome.certificate) {
        r.payload["status"] = "ce found";
        r.payload["certificate"] = certificate_to_json(market, *outcome.certificate);
        r.summary = "CE found by " + outcome.strategy;
    } else {
        r.code = kNegative;
        r.payload["status"] = "nonexistence certified";
        r.summary = "no CE exists (exhaustive enumeration)";
    }
    return r;
}

Result cmd_oracle(const std::string& file, int jobs) {
    const Market market = load_market(file);
    const auto cert = find_ce_bruteforce(market, limits_from(jobs));
    Result r;
    r.payload["command"] = "oracle";
    if (cert) {
        r.payload["status"] = "ce found";
        r.payload["certificate"] = certificate_to_json(market, *cert);
        r.summary = "CE found";
    } else {
        r.code = kNegative;
        r.payload["status"] = "nonexistence certified";
        r.summary = "no CE exists";
    }
    return r;
}

Result cmd_verify(const std::string& file, const std::string& cert_file) {
    const Market market = load_market(file);
    const CertificateInput in = load_certificate(market, cert_file);
    const auto cert = verify_ce(market, in.allocation, in.prices);
    Result r;
    r.payload["command"] = "verify";
    r.payload["certificate"] = certificate_to_json(market, cert);
    if (cert.valid()) {
        r.summary = "certificate is a CE";
    } else {
        r.code = kNegative;
        for (const auto& v : cert.report)
            if (!v.passes()) {
                r.summary = "agent " + market.agent(v.agent).name +
                            (v.affordable ? " can afford the preferred bundle {" +
                                                market.bundle_name(*v.blocking) + "}"
                                          : " cannot afford her bundle");
                break;
            }
    }
    return r;
}

Result cmd_classify(const std::string& file, const std::string& agent) {
    const Market market = load_market(file);
    const auto& pref = market.preference(market.agent_index(agent));
    const auto labels = classify(pref);
    Result r;
    r.payload["command"] = "classify";
    r.payload["agent"] = agent;
    r.payload["labels"] = labels.labels();
    Json w = Json::object();
    auto names = [&](const std::vector<int>& order) {
        Json a = Json::array();
        for (int j : order)
            a.push_back(market.items()[static_cast<std::size_t>(j)]);
        return a;
    };
    if (auto order = lexicographic_order(pref))
        w["lexicographic_order"] = names(*order);
    if (auto order = responsive_order(pref))
        w["responsive_order"] = names(*order);
    if (auto u = is_additive_representable(pref)) {
        Json vals = Json::object();
        for (int j = 0; j < market.item_count(); ++j)
            vals[market.items()[static_cast<std::size_t>(j)]] = to_string((*u)[static_cast<std::size_t>(j)]);
        w["additive_values"] = vals;
    }
    if (auto bad = find_satiation_violation(pref)) {
        w["satiation_violation"] = {{"smaller", bundle_names(market, bad->smaller)},
                                    {"larger", bundle_names(market, bad->larger)},
                                    {"item", market.items()[static_cast<std::size_t>(bad->item)]}};
    }
    r.payload["witnesses"] = w;
    std::string joined;
    for (const auto& l : labels.labels())
        joined += (joined.empty() ? "" : " ") + l;
    r.summary = agent + ": " + joined;
    return r;
}

Result cmd_represent(const std::string& file, const std::string& agent, const std::string& as) {
    const Market market = load_market(file);
    const auto& pref = market.preference(market.agent_index(agent));
    Result r;
    r.payload["command"] = "represent";
    r.payload["agent"] = agent;
    r.payload["as"] = as;
    if (as == "additive") {
        auto u = is_additive_representable(pref);
        if (!u) {
            r.code = kNegative;
            r.payload["status"] = "not representable";
            r.summary = "no additive valuation represents " + agent;
            return r;
        }
        r.payload["status"] = "represented";
        r.payload["values"] = values_json(market, CardinalValuation::additive(*u));
        Json items = Json::object();
        for (int j = 0; j < market.item_count(); ++j)
            items[market.items()[static_cast<std::size_t>(j)]] = to_string((*u)[static_cast<std::size_t>(j)]);
        r.payload["item_values"] = items;
        r.summary = "additive representation found";
        return r;
    }
    if (as != "submodular")
        throw InvalidInput("--as must be submodular or additive");
    if (auto bad = find_satiation_violation(pref)) {
        r.code = kNegative;
        r.payload["status"] = "not representable";
        r.payload["violation"] = {{"smaller", bundle_names(market, bad->smaller)},
                                  {"larger", bundle_names(market, bad->larger)},
                                  {"item", market.items()[static_cast<std::size_t>(bad->item)]}};
        r.summary = "item " + market.items()[static_cast<std::size_t>(bad->item)] +
                    " satiates below the top, so no submodular valuation exists";
        return r;
    }
    const auto rep = satattop_to_submodular(pref);
    r.payload["status"] = "represented";
    r.payload["values"] = values_json(market, rep.valuation);
    r.payload["layers_by_class"] = rep.layers.by_class;
    r.summary = "submodular layer valuation with " + std::to_string(pref.class_count()) + " layers";
    return r;
}

Result cmd_mms(const std::string& file, const std::string& cert_file, int dmax) {
    const Market market = load_market(file);
    const CertificateInput in = load_certificate(market, cert_file);
    const auto report = check_mms_guarantee(market, in.allocation, dmax);
    Result r;
    r.payload["command"] = "mms";
    r.payload["d_max"] = dmax;
    r.payload["verdicts"] = Json::array();
    for (const auto& v : report.verdicts) {
        Json e;
        e["agent"] = market.agent(v.agent).name;
        e["l"] = v.ell;
        e["d"] = v.d;
        e["passes"] = v.passes;
        e["bundle"] = bundle_names(market, v.held);
        e["threshold"] = bundle_names(market, v.threshold.bundle);
        if (!v.passes) {
            e["partition"] = Json::array();
            for (Bundle part : v.threshold.partition)
                e["partition"].push_back(bundle_names(market, part));
        }
        r.payload["verdicts"].push_back(std::move(e));
    }
    r.payload["passes"] = report.passes();
    const auto failures = report.failures();
    r.code = failures.empty() ? kOk : kNegative;
    r.summary = failures.empty() ? "maximin share guarantee holds"
                                 : std::to_string(failures.size()) + " maximin share checks fail";
    return r;
}

Result cmd_scan(const std::string& fixture, int samples, const std::string& alice_items, const std::string& csv_path,
                int jobs) {
    const auto limits = limits_from(jobs);
    ScanReport report;
    bool as_predicted = true;
    if (fixture == "five-items") {
        report = nonexistence_scan(example_five_items(), five_item_profiles(samples), limits);
        for (const auto& e : report.entries)
            as_predicted = as_predicted && e.outcome == ScanOutcome::NonexistenceCertified;
    } else if (fixture == "second-welfare") {
        std::vector<std::vector<Rational>> profiles;
        for (const auto& b : farey_interior(0, 1, samples))
            profiles.push_back({b, 1 - b});
        const Market market = example_five_items();
        const Bundle alice = parse_bundle_key(market.items(), alice_items);
        std::map<std::string, std::string> owner;
        for (int j = 0; j < market.item_count(); ++j)
            owner[market.items()[static_cast<std::size_t>(j)]] = alice.contains(j) ? "alice" : "bob";
        report = second_welfare_probe(market, owner, profiles, limits);
        for (const auto& e : report.entries)
            as_predicted = as_predicted && e.outcome == ScanOutcome::NotSupported;
        for (const auto& [name, ok] : report.checks)
            as_predicted = as_predicted && ok;
    } else {
        throw InvalidInput("--fixture must be five-items or second-welfare");
    }
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv)
            throw InvalidInput("cannot write " + csv_path);
        csv << report.to_csv();
    }
    Result r;
    r.payload = report.to_json();
    r.payload["command"] = "scan";
    r.payload["as_predicted"] = as_predicted;
    const auto counts = report.counts();
    if (counts.count(to_string(ScanOutcome::ResourceLimited)))
        r.code = kResourceLimit;
    else if (!as_predicted)
        r.code = kNegative;
    std::string s;
    for (const auto& [k, v] : counts)
        s += (s.empty() ? "" : ", ") + std::to_string(v) + " " + k;
    r.summary = fixture + ": " + s;
    return r;
}

Result cmd_perturb(const std::string& file, const std::string& eta, std::uint64_t seed) {
    const Market market = load_market(file);
    const auto budgets = perturb_budgets(market.budgets(), parse_rational(eta), seed);
    // Both orders are descending, so canonical agent i keeps the i-th budget.
    const Market out = market.with_budgets(std::vector<Rational>(budgets.values().begin(), budgets.values().end()));
    Result r;
    r.payload = market_to_json(out);
    r.summary = "budgets perturbed (eta " + eta + ", seed " + std::to_string(seed) + ")";
    return r;
}

Result cmd_gen(int n, int m, const std::string& kind, std::uint64_t seed, bool weak) {
    RandomMarketParams params;
    params.agents = n;
    params.items = m;
    params.kind = parse_preference_kind(kind);
    params.strict = !weak;
    if (m > kDefaultItemCap)
        throw InvalidInput("m = " + std::to_string(m) + " exceeds the item cap of " + std::to_string(kDefaultItemCap));
    Result r;
    r.payload = market_to_json(random_market(params, seed));
    r.summary = "generated " + std::to_string(n) + "-agent " + std::to_string(m) + "-item " + kind + " market";
    return r;
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Competitive equilibria in Fisher markets with indivisible goods"};
    app.name("fisherce");
    app.require_subcommand(1);
    app.fallthrough();
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for enumeration")->check(CLI::PositiveNumber);

    std::string file, cert_file, agent, as = "submodular", fixture, csv_path, eta, kind = "gen", alice_items = "ACD";
    int dmax = 3, samples = 20, n = 2, m = 3;
    std::uint64_t seed = 0;
    bool weak = false;

    auto* solve_cmd = app.add_subcommand("solve", "find a CE, constructively when a solver applies");
    solve_cmd->add_option("file", file)->required();
    auto* verify_cmd = app.add_subcommand("verify", "check a certificate against a market");
    verify_cmd->add_option("file", file)->required();
    verify_cmd->add_option("cert", cert_file)->required();
    auto* oracle_cmd = app.add_subcommand("oracle", "decide CE existence by enumeration");
    oracle_cmd->add_option("file", file)->required();
    auto* classify_cmd = app.add_subcommand("classify", "preference class membership");
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_option("--agent", agent)->required();
    auto* represent_cmd = app.add_subcommand("represent", "cardinal representation of a preference");
    represent_cmd->add_option("file", file)->required();
    represent_cmd->add_option("--agent", agent)->required();
    represent_cmd->add_option("--as", as)->check(CLI::IsMember({"submodular", "additive"}));
    auto* mms_cmd = app.add_subcommand("mms", "l-out-of-d maximin share check");
    mms_cmd->add_option("file", file)->required();
    mms_cmd->add_option("cert", cert_file)->required();
    mms_cmd->add_option("--dmax", dmax)->check(CLI::Range(1, 4));
    auto* scan_cmd = app.add_subcommand("scan", "fixture experiments");
    scan_cmd->add_option("--fixture", fixture)->required()->check(CLI::IsMember({"five-items", "second-welfare"}));
    scan_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
    scan_cmd->add_option("--csv", csv_path, "also write the report as CSV");
    scan_cmd->add_option("--alice", alice_items, "second-welfare: items held by alice, e.g. ACD");
    auto* perturb_cmd = app.add_subcommand("perturb", "generic budgets by small noise");
    perturb_cmd->add_option("file", file)->required();
    perturb_cmd->add_option("--eta", eta)->required();
    perturb_cmd->add_option("--seed", seed);
    auto* gen_cmd = app.add_subcommand("gen", "random market");
    gen_cmd->add_option("--n", n)->check(CLI::Range(1, 8));
    gen_cmd->add_option("--m", m)->check(CLI::Range(1, 12));
    gen_cmd->add_option("--kind", kind)->check(CLI::IsMember({"gen", "add", "lex", "leveled"}));
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_flag("--weak", weak, "allow indifference");

    Result result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (solve_cmd->parsed())
            result = cmd_solve(file, jobs);
        else if (verify_cmd->parsed())
            result = cmd_verify(file, cert_file);
        else if (oracle_cmd->parsed())
            result = cmd_oracle(file, jobs);
        else if (classify_cmd->parsed())
            result = cmd_classify(file, agent);
        else if (represent_cmd->parsed())
            result = cmd_represent(file, agent, as);
        else if (mms_cmd->parsed())
            result = cmd_mms(file, cert_file, dmax);
        else if (scan_cmd->parsed())
            result = cmd_scan(fixture, samples, alice_items, csv_path, jobs);
        else if (perturb_cmd->parsed())
            result = cmd_perturb(file, eta, seed);
        else
            result = cmd_gen(n, m, kind, seed, weak);
    } catch (const CLI::CallForHelp&) {
        out << Json{{"help", app.help()}}.dump(2) << "\n";
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << Json{{"help", app.help("", CLI::AppFormatMode::All)}}.dump(2) << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        result = {kInputError, error_json("usage", e.what()), e.what()};
    } catch (const InvalidInput& e) {
        result = {kInputError, error_json("invalid input", e.what()), e.what()};
    } catch (const PreconditionError& e) {
        result = {kInputError, error_json("precondition", e.what()), e.what()};
    } catch (const ResourceLimit& e) {
        result = {kResourceLimit, error_json("resource limit", e.what()), e.what()};
    } catch (const SolverBug& e) {
        result = {kInputError, error_json("internal", e.what()), e.what()};
    }
    out << result.payload.dump(2) << "\n";
    if (!result.summary.empty())
        err << result.summary << "\n";
    return result.code;
}

} // namespace fisherce::cli
