// One line per acceptance criterion; exit status 0 only when all pass.

#include "enumerate.hpp"
#include "helpers.hpp"

#include "fisherce/classes.hpp"
#include "fisherce/errors.hpp"
#include "fisherce/experiments.hpp"
#include "fisherce/fairness.hpp"
#include "fisherce/solvers.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace fisherce;
using namespace testing_support;

namespace {

struct Criterion {
    bool pass = true;
    std::ostringstream detail;
};

int failures = 0;
std::map<int, std::string> lines; // printed in criterion order at the end

void report(int id, const std::string& name, Criterion& c) {
    lines[id] = std::string(c.pass ? "PASS" : "FAIL") + " [" + std::to_string(id) + "] " + name + ": " + c.detail.str();
    failures += c.pass ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Budgets drawn by random_market, then moved by noise below eta.
Market perturbed(const Market& market, std::uint64_t seed) {
    Rational eta(1, 1000000);
    const Rational smallest = market.budgets().values().back();
    if (eta >= smallest / 2)
        eta = smallest / 4;
    const auto b = perturb_budgets(market.budgets(), eta, seed);
    return market.with_budgets(std::vector<Rational>(b.values().begin(), b.values().end()));
}

std::vector<std::pair<Market, CECertificate>> certificates; // every valid certificate seen

void criterion_five_items() {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    const auto profiles = five_item_profiles(20);
    const auto report_ = nonexistence_scan(example_five_items(), profiles);
    const double elapsed = seconds_since(start);
    int certified = 0;
    for (const auto& e : report_.entries)
        certified += e.outcome == ScanOutcome::NonexistenceCertified;
    bool inside = true;
    for (const auto& b : profiles)
        inside = inside && b[0] + b[1] == 1 && b[1] < b[0] && b[0] < Rational(4, 3) * b[1];
    c.pass = inside && certified == 20 && profiles.size() == 20 && elapsed < 10;
    c.detail << certified << "/" << profiles.size() << " profiles certified in " << elapsed << " s";
    report(1, "five-item nonexistence", c);
}

void criterion_second_welfare() {
    Criterion c;
    const Market base = example_five_items();
    std::vector<std::vector<Rational>> grid;
    for (const auto& b : farey_interior(0, 1, 50))
        grid.push_back({b, 1 - b});
    int po_exceptions = 0, support_exceptions = 0, checked = 0;
    std::string dominated;
    for (const auto& owner : five_items_split_allocations()) {
        const Allocation x = allocation_by_name(base, owner);
        const auto po = is_pareto_optimal(base, x);
        if (!po.optimal) {
            ++po_exceptions;
            const int a = base.agent_index("alice"), b = base.agent_index("bob");
            dominated += " alice " + base.bundle_name(x.bundle(a)) + "/bob " + base.bundle_name(x.bundle(b)) +
                         " dominated by alice " + base.bundle_name(po.dominating->bundle(a)) + "/bob " +
                         base.bundle_name(po.dominating->bundle(b)) + ",";
        }
        for (const auto& profile : grid) {
            const Market m = base.with_budgets(std::vector<Rational>{profile[0], profile[1]});
            ++checked;
            if (supporting_prices(m, allocation_by_name(m, owner)))
                ++support_exceptions;
        }
    }
    c.pass = po_exceptions == 0 && support_exceptions == 0;
    c.detail << "supporting prices found in " << support_exceptions << "/" << checked
             << " (allocation, profile) pairs; Pareto exceptions " << po_exceptions << "/6";
    if (po_exceptions > 0)
        c.detail << " (" << dominated.substr(1, dominated.size() - 2) << ")";
    report(2, "second-welfare refutation", c);
}

struct Family {
    std::string name;
    std::function<Market(std::uint64_t)> make;
    std::function<ConstructiveResult(const Market&)> solve;
};

void criterion_solver_families() {
    std::vector<Family> families;
    families.push_back({"m<=3, n<=4",
                        [](std::uint64_t seed) {
                            RandomMarketParams p;
                            p.agents = 1 + static_cast<int>(seed % 4);
                            p.items = 1 + static_cast<int>(seed / 4 % 3);
                            p.kind = static_cast<PreferenceKind>(seed / 12 % 4);
                            p.strict = seed % 5 != 0;
                            return perturbed(random_market(p, seed), seed);
                        },
                        solve_three_items});
    families.push_back({"m=4, n=2",
                        [](std::uint64_t seed) {
                            RandomMarketParams p;
                            p.items = 4;
                            p.kind = static_cast<PreferenceKind>(seed % 4);
                            p.strict = seed % 5 != 0;
                            return perturbed(random_market(p, seed), seed);
                        },
                        solve_four_items});
    families.push_back({"leveled, n=2, m<=6",
                        [](std::uint64_t seed) {
                            RandomMarketParams p;
                            p.items = 1 + static_cast<int>(seed % 6);
                            p.kind = PreferenceKind::Leveled;
                            p.strict = seed % 3 != 0;
                            return perturbed(random_market(p, seed), seed);
                        },
                        solve_leveled_two_agents});
    families.push_back({"lexicographic, n<=4, m<=6",
                        [](std::uint64_t seed) {
                            RandomMarketParams p;
                            p.agents = 1 + static_cast<int>(seed % 4);
                            p.items = 1 + static_cast<int>(seed / 4 % 6);
                            p.kind = PreferenceKind::Lexicographic;
                            return perturbed(random_market(p, seed), seed);
                        },
                        solve_lexicographic});
    Criterion c;
    std::uint64_t offset = 0;
    for (const auto& family : families) {
        offset += 10000;
        int verified = 0, confirmed = 0;
        std::string first_error;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const Market m = family.make(offset + seed);
            try {
                const auto r = family.solve(m);
                const auto again = verify_ce(m, r.certificate.allocation, r.certificate.prices);
                if (again.valid() && is_ce_by_definition(m, r.certificate.allocation, r.certificate.prices)) {
                    ++verified;
                    certificates.emplace_back(m, again);
                }
                if (find_ce_bruteforce(m))
                    ++confirmed;
            } catch (const Error& e) {
                if (first_error.empty())
                    first_error = e.what();
            }
        }
        const bool ok = verified == 500 && confirmed == 500;
        c.pass = c.pass && ok;
        c.detail << family.name << " " << verified << "/500 verified, " << confirmed << "/500 oracle-confirmed";
        if (!first_error.empty())
            c.detail << " (first error: " << first_error << ")";
        c.detail << (family.name == families.back().name ? "" : "; ");
    }
    report(3, "constructive solvers on perturbed budgets", c);
}

void criterion_leveled_branches() {
    Criterion c;
    int solved = 0, explicit_case = 0, mirrored = 0, attempts = 0;
    std::string first_error;
    for (std::uint64_t seed = 0; solved + static_cast<int>(!first_error.empty()) < 200 && attempts < 400; ++seed) {
        RandomMarketParams p;
        p.items = 3 + static_cast<int>(seed % 4);
        p.kind = PreferenceKind::Leveled;
        p.strict = seed % 2 == 0;
        const Market m = random_market(p, 50000 + seed);
        if (is_integer(m.item_count() * m.budget(0) / m.total_budget()))
            continue;
        ++attempts;
        try {
            const auto r = solve_leveled_two_agents(m);
            if (!r.certificate.valid())
                continue;
            ++solved;
            certificates.emplace_back(m, r.certificate);
            if (r.plan.case_label == "b1/(k1+1)>b2/(k2+1)")
                ++explicit_case;
            else
                ++mirrored;
        } catch (const Error& e) {
            if (first_error.empty())
                first_error = e.what();
        }
    }
    c.pass = attempts == 200 && solved == 200 && explicit_case >= 30 && mirrored >= 30;
    c.detail << solved << "/" << attempts << " solved; b1/(k1+1)>b2/(k2+1) " << explicit_case
             << ", b1/(k1+1)<b2/(k2+1) " << mirrored;
    if (!first_error.empty())
        c.detail << " (first error: " << first_error << ")";
    report(6, "leveled two-agent solver", c);
}

void criterion_mms() {
    Criterion c;
    int found = 0, failures_ = 0;
    for (std::uint64_t seed = 0; found < 100 && seed < 1000; ++seed) {
        RandomMarketParams p;
        p.items = 1 + static_cast<int>(seed % 5);
        p.kind = static_cast<PreferenceKind>(seed / 5 % 4);
        p.strict = seed % 3 != 0;
        const Market m = random_market(p, 70000 + seed);
        const auto cert = find_ce_bruteforce(m);
        if (!cert)
            continue;
        ++found;
        certificates.emplace_back(m, *cert);
        failures_ += static_cast<int>(check_mms_guarantee(m, cert->allocation, 3).failures().size());
    }
    c.pass = found == 100 && failures_ == 0;
    c.detail << found << " oracle CEs, " << failures_ << " failed (l, d) checks with d_max = 3";
    report(7, "maximin share guarantee", c);
}

void criterion_knife_edge() {
    Criterion c;
    auto one_item = [](const Rational& b1, const Rational& b2) {
        return Market({"A"}, {Agent::additive("a1", b1, {Rational(1)}), Agent::additive("a2", b2, {Rational(1)})});
    };
    const Rational eps(1, 1000000);
    const auto tie = find_ce_bruteforce(one_item(Rational(1, 2), Rational(1, 2)));
    const Market split = one_item(Rational(1, 2) + eps, Rational(1, 2) - eps);
    const auto generic = find_ce_bruteforce(split);
    if (generic)
        certificates.emplace_back(split, *generic);
    c.pass = !tie && generic && generic->valid();
    c.detail << "(1/2, 1/2): " << (tie ? "CE found" : "nonexistence certified") << "; (1/2+1e-6, 1/2-1e-6): "
             << (generic ? "CE found, item priced " + to_string(generic->prices[0]) : "no CE");
    report(8, "single-item knife edge", c);
}

void criterion_hierarchy() {
    Criterion c;
    int checked = 0, mismatches = 0, not_satattop = 0;
    auto check = [&](const OrdinalPreference& p) {
        ++checked;
        const bool flag = classify(p).satattop;
        bool built = false, good = false;
        try {
            const auto rep = satattop_to_submodular(p);
            built = true;
            good = is_submodular_valuation(rep.valuation) && represents(rep.valuation, p);
        } catch (const PreconditionError&) {
        }
        not_satattop += !flag;
        mismatches += !(flag == built && built == good);
    };
    for_each_monotone_preference(3, true, check);
    const int strict3 = checked;
    for_each_monotone_preference(3, false, check);
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        RandomMarketParams p;
        p.agents = 1;
        p.items = 4;
        p.strict = seed % 2 == 0;
        p.kind = seed % 4 == 3 ? PreferenceKind::Leveled : PreferenceKind::General;
        check(random_market(p, 90000 + seed).preference(0));
    }
    for (const auto& w : hierarchy_witnesses())
        if (w.items.size() <= 4)
            check(w.preference);

    int misplaced = 0;
    std::string where;
    for (const auto& w : hierarchy_witnesses()) {
        const auto labels = classify(w.preference);
        bool ok = has_label(labels, w.member_of) && (w.excluded_from.empty() || !has_label(labels, w.excluded_from));
        if (w.gap == "RSPN\\ADD")
            ok = ok && !is_additive_representable(w.preference);
        if (!ok) {
            ++misplaced;
            where += " " + w.gap;
        }
    }
    c.pass = mismatches == 0 && misplaced == 0 && not_satattop > 0;
    c.detail << "(a) " << checked << " preferences (" << strict3 << " strict m=3, all weak m=3, 400 sampled m=4, small witnesses), "
             << not_satattop << " outside SATATTOP, " << mismatches << " mismatches; (b) " << misplaced
             << "/5 witnesses misplaced" << where;
    report(5, "preference hierarchy", c);
}

void criterion_pareto() {
    Criterion c;
    int strict_total = 0, strict_failed = 0, weak_total = 0, weak_failed = 0;
    for (const auto& [m, cert] : certificates) {
        if (!cert.valid())
            continue;
        bool strict = true;
        for (const auto& a : m.agents())
            strict = strict && a.preference.strict();
        const bool optimal = is_pareto_optimal(m, cert.allocation).optimal;
        if (optimal != pareto_by_definition(m, cert.allocation))
            throw SolverBug("Pareto checks disagree");
        (strict ? strict_total : weak_total) += 1;
        (strict ? strict_failed : weak_failed) += optimal ? 0 : 1;
    }
    c.pass = certificates.size() >= 1000 && strict_failed == 0 && weak_failed == 0;
    c.detail << certificates.size() << " certificates; strict preferences: " << strict_failed << "/" << strict_total
             << " not Pareto optimal; with indifferences: " << weak_failed << "/" << weak_total
             << " not Pareto optimal";
    report(4, "first welfare property", c);
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_five_items();
    criterion_second_welfare();
    criterion_solver_families();
    criterion_hierarchy();
    criterion_leveled_branches();
    criterion_mms();
    criterion_knife_edge();
    criterion_pareto(); // uses the certificates collected above
    for (const auto& [id, line] : lines)
        std::cout << line << "\n";
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << " ("
              << seconds_since(start) << " s)\n";
    return failures == 0 ? 0 : 1;
}
