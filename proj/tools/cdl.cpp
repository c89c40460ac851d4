// cdl: command-line front end for the Cayley-Dickson loop engine.
//
// All results go to stdout as JSON; diagnostics go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cdl/analytics.hpp"
#include "cdl/decompose.hpp"
#include "cdl/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

json big(const cdl::BigInt& v) {
    if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(v);
    return v.str();  // beyond 64 bits: decimal string
}

json rational(const cdl::Rational& r) {
    return {{"num", big(r.numerator())}, {"den", big(r.denominator())}, {"decimal", r.decimal(12)}};
}

json report(const cdl::DegreeReport& r) {
    return {{"degree", rational(r.degree)},
            {"favorable", r.favorable},
            {"total", r.total},
            {"method", cdl::to_string(r.method)},
            {"parameters", {{"m", r.m}, {"n", r.n}, {"z_order", r.z_order}}}};
}

std::string scalar_label(const cdl::Scalar& s) {
    if (cdl::is_one(s)) return "+1";
    if (cdl::is_minus_one(s)) return "-1";
    return std::to_string(s.exponent);
}

json census(const cdl::RankCensus& c) { return c.counts; }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Globals {
    std::uint64_t max_elements = 0;

    cdl::Budget budget() const {
        auto b = cdl::default_budget();
        if (max_elements) b.max_elements = max_elements;
        return b;
    }
};

std::vector<std::uint32_t> parse_orders(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations on Cayley-Dickson loops and their central products"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-elements", g.max_elements, "Enumeration budget (default 2^20 or $CDL_MAX_ELEMENTS)");

    int z_order = 2;
    std::string gammas, factors, table_path, other_path, out_path;
    unsigned n = 0;

    // build
    auto* build = app.add_subcommand("build", "Construct a loop and summarize its relations");
    build->add_option("--z-order", z_order, "Order of the cyclic scalar group")->required();
    build->add_option("--gammas", gammas, "Comma-separated gammas (+1, -1 or exponents)")->required();

    // degrees
    std::string kind = "commutativity", method = "both";
    unsigned workers = 1;
    auto* degrees = app.add_subcommand("degrees", "Commutativity or associativity degree");
    degrees->add_option("--kind", kind)->check(CLI::IsMember({"commutativity", "associativity"}));
    degrees->add_option("--z-order", z_order);
    degrees->add_option("--factors", factors, "Semicolon-separated gamma lists (commutativity)");
    degrees->add_option("--n", n, "Loop size n (associativity, all gammas -1 unless --gammas)");
    degrees->add_option("--gammas", gammas, "Explicit gammas (associativity)");
    degrees->add_option("--method", method)->check(CLI::IsMember({"brute", "closed", "both"}));
    degrees->add_option("--workers", workers, "Worker threads for the brute-force pair count");

    // census
    auto* census_cmd = app.add_subcommand("census", "Rank census of a central product");
    census_cmd->add_option("--z-order", z_order);
    census_cmd->add_option("--factors", factors)->required();

    // limits
    std::string mode = "grow_n";
    unsigned fixed = 2, from = 1, to = 10;
    auto* limits = app.add_subcommand("limits", "Closed-form commutativity degree along a parameter");
    limits->add_option("--mode", mode)->check(CLI::IsMember({"grow_n", "grow_m"}));
    limits->add_option("--fixed", fixed, "Value of the parameter held fixed");
    limits->add_option("--from", from);
    limits->add_option("--to", to);

    // export / import
    auto* exp = app.add_subcommand("export", "Write a loop-table v1 file");
    exp->add_option("--z-order", z_order);
    auto* exp_g = exp->add_option("--gammas", gammas);
    auto* exp_f = exp->add_option("--factors", factors);
    exp_g->excludes(exp_f);
    exp->add_option("--out", out_path, "Output file (default stdout)");
    auto* imp = app.add_subcommand("import", "Validate a loop-table v1 file and summarize it");
    imp->add_option("--table", table_path)->required();

    // iso
    auto* iso = app.add_subcommand("iso", "Search for an isomorphism between two tables");
    iso->add_option("--table", table_path)->required();
    iso->add_option("--other", other_path)->required();

    // decompose
    auto* decomp = app.add_subcommand("decompose", "Recover central-product factors from a table");
    decomp->add_option("--table", table_path)->required();
    decomp->add_option("--n", n)->required();
    decomp->add_option("--match-against", other_path);

    // verify
    cdl::VerifyOptions vopt;
    std::string z_list = "2,4";
    auto* verify = app.add_subcommand("verify", "Re-derive every closed-form value by enumeration");
    verify->add_option("--max-n", vopt.max_n);
    verify->add_option("--max-m", vopt.max_m);
    verify->add_option("--max-mn", vopt.max_mn);
    verify->add_option("--z-orders", z_list);
    verify->add_option("--trials", vopt.decompose_trials);
    verify->add_option("--seed", vopt.seed);
    bool failures_only = false;
    verify->add_flag("--failures-only", failures_only, "List only failed and skipped checks");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto budget = g.budget();
        if (*build) {
            const auto loop = cdl::CDLoop::parse(cdl::ScalarGroup(z_order), gammas);
            json squares = json::array(), comms = json::array(), assocs = json::array();
            for (unsigned i = 1; i <= loop.n(); ++i) {
                const auto l = loop.generator(i);
                squares.push_back({{"generator", i}, {"square", scalar_label(loop.mul(l, l).scalar)}});
                for (unsigned j = i + 1; j <= loop.n(); ++j) {
                    comms.push_back({{"pair", {i, j}},
                                     {"value", scalar_label(loop.commutator(l, loop.generator(j)).scalar)}});
                    for (unsigned k = j + 1; k <= loop.n(); ++k) {
                        assocs.push_back(
                            {{"triple", {i, j, k}},
                             {"value", scalar_label(loop.associator(l, loop.generator(j), loop.generator(k)).scalar)}});
                    }
                }
            }
            json gl = json::array();
            for (const auto& s : loop.gammas()) gl.push_back(scalar_label(s));
            emit({{"n", loop.n()},
                  {"z_order", loop.z().order()},
                  {"gammas", gl},
                  {"order", loop.order()},
                  {"squares", squares},
                  {"commutators", comms},
                  {"associators", assocs}});
        } else if (*degrees) {
            const cdl::ScalarGroup z(z_order);
            std::vector<cdl::DegreeReport> reports;
            if (kind == "commutativity") {
                if (factors.empty()) throw cdl::ValidationError("--factors is required for commutativity");
                const auto a = cdl::CentralProduct::parse(z, factors);
                if (method != "closed") reports.push_back(cdl::commutativity_degree_brute(a, workers, budget));
                if (method != "brute") {
                    cdl::DegreeReport r;
                    r.degree = cdl::commutativity_degree_closed(a.m(), a.n());
                    r.m = a.m();
                    r.n = a.n();
                    r.z_order = z.order();
                    reports.push_back(r);
                }
            } else {
                const auto loop = gammas.empty() ? cdl::CDLoop(z, std::vector<cdl::Scalar>(n, z.minus_one()))
                                                 : cdl::CDLoop::parse(z, gammas);
                if (method != "closed") reports.push_back(cdl::associativity_degree_brute(loop, budget));
                if (method != "brute") {
                    bool all_minus = true;
                    for (const auto& s : loop.gammas()) all_minus = all_minus && cdl::is_minus_one(s);
                    if (!all_minus) {
                        std::cerr << "cdl: the closed form is stated only for all gammas = -1\n";
                        if (method == "closed") return 2;
                    } else {
                        cdl::DegreeReport r;
                        r.degree = cdl::associativity_degree_closed(loop.n());
                        r.n = loop.n();
                        r.z_order = z.order();
                        reports.push_back(r);
                    }
                }
            }
            if (reports.size() == 1) {
                emit(report(reports.front()));
            } else {
                json j = report(reports.front());
                j["method"] = "both";
                j["agree"] = reports[0].degree == reports[1].degree;
                j["reports"] = {report(reports[0]), report(reports[1])};
                emit(j);
                if (!j["agree"].get<bool>()) return 1;
            }
        } else if (*census_cmd) {
            const auto a = cdl::CentralProduct::parse(cdl::ScalarGroup(z_order), factors);
            const auto brute = cdl::rank_census_brute(a, budget);
            const auto closed = cdl::rank_census_closed(a.m(), a.n(), a.z().order());
            emit({{"m", a.m()},
                  {"n", a.n()},
                  {"z_order", a.z().order()},
                  {"counts", census(brute)},
                  {"closed", census(closed)},
                  {"total", brute.total()},
                  {"agree", brute == closed}});
        } else if (*limits) {
            const auto rows = cdl::pc_limit_table(mode == "grow_n" ? cdl::LimitMode::GrowN : cdl::LimitMode::GrowM,
                                                  fixed, from, to);
            json r = json::array();
            for (const auto& [p, v] : rows) r.push_back({{mode == "grow_n" ? "n" : "m", p}, {"degree", rational(v)}});
            emit({{"mode", mode}, {"fixed", fixed}, {"rows", r}});
        } else if (*exp) {
            const cdl::ScalarGroup z(z_order);
            if (gammas.empty() && factors.empty()) throw cdl::ValidationError("give --gammas or --factors");
            const auto table = factors.empty() ? cdl::to_table(cdl::CDLoop::parse(z, gammas), budget)
                                               : cdl::to_table(cdl::CentralProduct::parse(z, factors), budget);
            if (out_path.empty()) {
                cdl::write_loop_table(std::cout, table);
            } else {
                cdl::write_loop_table_file(out_path, table);
            }
        } else if (*imp) {
            const auto loop = cdl::read_loop_table_file(table_path);
            emit({{"size", loop.size()}, {"identity", loop.identity()}, {"center", cdl::center(loop)}});
        } else if (*iso) {
            const auto a = cdl::read_loop_table_file(table_path);
            const auto b = cdl::read_loop_table_file(other_path);
            const auto w = cdl::find_isomorphism(a, b);
            json j = {{"isomorphic", w.has_value()}};
            if (w) {
                j["mapping"] = w->mapping;
                j["preserves_center"] = w->preserves_center;
                j["fixes_center_pointwise"] = w->fixes_center_pointwise;
            }
            emit(j);
        } else if (*decomp) {
            const auto loop = cdl::read_loop_table_file(table_path);
            const auto d = cdl::recover_factors(loop, n);
            std::map<unsigned, std::size_t> hist;
            for (auto r : d.ranks) ++hist[r];
            json h = json::object();
            for (const auto& [r, c] : hist) h[std::to_string(r)] = c;
            json fs = json::array();
            for (const auto& f : d.factors) fs.push_back(f.elements);
            json j = {{"n", n},
                      {"m", d.shape.m},
                      {"z_size", d.shape.z_size},
                      {"center", d.shape.center},
                      {"factors", fs},
                      {"ranks", h},
                      {"pivot_independent", cdl::partition_is_pivot_independent(loop, n)}};
            if (!other_path.empty()) {
                const auto e = cdl::recover_factors(cdl::read_loop_table_file(other_path), n);
                if (e.factors.size() != d.factors.size()) {
                    j["sigma"] = nullptr;
                    j["isomorphic"] = json::array();
                } else {
                    const auto match = cdl::match_factors(d, e);
                    j["sigma"] = match.sigma ? json(*match.sigma) : json(nullptr);
                    j["isomorphic"] = match.isomorphic;
                }
            }
            emit(j);
        } else if (*verify) {
            vopt.z_orders = parse_orders(z_list);
            vopt.budget = budget;
            const auto rep = cdl::run_verify(vopt);
            json checks = json::array();
            for (const auto& c : rep.checks) {
                if (failures_only && (c.status == cdl::CheckStatus::Pass || c.status == cdl::CheckStatus::Info))
                    continue;
                checks.push_back({{"group", c.group},
                                  {"name", c.name},
                                  {"expected", c.expected},
                                  {"actual", c.actual},
                                  {"basis", c.basis},
                                  {"status", cdl::to_string(c.status)},
                                  {"detail", c.detail}});
            }
            emit({{"passed", rep.passed()},
                  {"counts",
                   {{"pass", rep.count(cdl::CheckStatus::Pass)},
                    {"fail", rep.count(cdl::CheckStatus::Fail)},
                    {"skip", rep.count(cdl::CheckStatus::Skip)},
                    {"info", rep.count(cdl::CheckStatus::Info)}}},
                  {"parameters",
                   {{"max_n", vopt.max_n}, {"max_m", vopt.max_m}, {"max_mn", vopt.max_mn},
                    {"z_orders", vopt.z_orders}, {"trials", vopt.decompose_trials}, {"seed", vopt.seed}}},
                  {"checks", checks}});
            std::cerr << "cdl verify: " << rep.checks.size() << " checks in " << rep.seconds << " s\n";
            return rep.passed() ? 0 : 1;
        }
    } catch (const cdl::BudgetExceeded& e) {
        std::cerr << "cdl: resource limit: " << e.what() << '\n';
        return 3;
    } catch (const cdl::DecompositionError& e) {
        std::cerr << "cdl: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cdl: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
