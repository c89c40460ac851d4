#include "cdl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "cdl/analytics.hpp"
#include "cdl/decompose.hpp"

namespace cdl {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
        case CheckStatus::Info: return "info";
    }
    return "?";
}

std::size_t VerifyReport::count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

namespace {

std::string params(unsigned m, unsigned n, std::uint32_t z) {
    return "m=" + std::to_string(m) + " n=" + std::to_string(n) + " |Z|=" + std::to_string(z);
}

std::string gamma_label(const CDLoop& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.gammas().size(); ++i) {
        const auto& g = l.gammas()[i];
        if (i) s += ',';
        s += is_one(g) ? "+1" : is_minus_one(g) ? "-1" : "z^" + std::to_string(g.exponent);
    }
    return s + ")_" + std::to_string(l.z().order());
}

// A few gamma vectors per (n, |Z|): all -1, all +1, alternating signs, and a
// non-real generator of Z when |Z| > 2.
std::vector<CDLoop> sample_loops(unsigned n, std::uint32_t z_order) {
    const ScalarGroup z(z_order);
    std::vector<std::vector<Scalar>> vecs;
    vecs.emplace_back(n, z.minus_one());
    vecs.emplace_back(n, z.one());
    std::vector<Scalar> alt;
    for (unsigned i = 0; i < n; ++i) alt.push_back(i % 2 ? z.minus_one() : z.one());
    vecs.push_back(alt);
    if (z_order > 2 && n > 0) {
        std::vector<Scalar> g(n, z.minus_one());
        g[0] = z.make(1);
        vecs.push_back(g);
    }
    std::vector<CDLoop> out;
    for (auto& v : vecs) {
        CDLoop l(z, v);
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    return out;
}

class Runner {
public:
    explicit Runner(const VerifyOptions& o) : opt_(o) {}

    void add(std::string group, std::string name, std::string expected, std::string actual, std::string basis,
             bool ok, std::string detail = {}) {
        report_.checks.push_back({std::move(group), std::move(name), std::move(expected), std::move(actual),
                                  std::move(basis), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
    }

    // Runs `body`, turning a budget overrun into a skipped check.
    void guarded(const std::string& group, const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const BudgetExceeded& e) {
            report_.checks.push_back({group, name, "", "", "", CheckStatus::Skip, e.what()});
        } catch (const std::exception& e) {
            report_.checks.push_back({group, name, "", "", "", CheckStatus::Fail, e.what()});
        }
    }

    VerifyReport run() {
        const auto t0 = std::chrono::steady_clock::now();
        associativity();
        commutativity();
        commutants_and_census();
        limits();
        decomposition();
        structure();
        report_.options = opt_;
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(report_);
    }

private:
    std::vector<std::pair<unsigned, unsigned>> product_grid() const {
        std::vector<std::pair<unsigned, unsigned>> g;
        for (unsigned m = 1; m <= opt_.max_m; ++m)
            for (unsigned n = 1; n <= opt_.max_n; ++n)
                if (m * n <= opt_.max_mn) g.emplace_back(m, n);
        return g;
    }

    void associativity() {
        const std::vector<std::pair<unsigned, Rational>> published{{2, Rational(1)}, {3, Rational(43, 64)}};
        for (const auto& [n, value] : published) {
            if (n > opt_.max_n) continue;
            const auto closed = associativity_degree_closed(n);
            add("associativity", "closed form n=" + std::to_string(n), value.str(), closed.str(), "formula",
                closed == value);
        }
        for (unsigned n = 1; n <= opt_.max_n; ++n) {
            for (auto zo : opt_.z_orders) {
                const std::string name = "brute = closed, all -1, " + params(1, n, zo);
                guarded("associativity", name, [&] {
                    const ScalarGroup z(zo);
                    const CDLoop loop(z, std::vector<Scalar>(n, z.minus_one()));
                    const auto brute = associativity_degree_brute(loop, opt_.budget);
                    const auto closed = associativity_degree_closed(n);
                    add("associativity", name, closed.str(), brute.degree.str(), "enumeration",
                        brute.degree == closed,
                        std::to_string(brute.favorable) + "/" + std::to_string(brute.total) + " triples");
                });
            }
        }
    }

    void commutativity() {
        for (unsigned n = 1; n <= opt_.max_n; ++n) {
            if (2 > opt_.max_m) break;
            const auto formula = commutativity_degree_two_factor_formula(n);
            const auto closed = commutativity_degree_closed(2, n);
            add("commutativity", "two-factor formula = general closed form, n=" + std::to_string(n), formula.str(),
                closed.str(), "formula", formula == closed);
        }
        const std::vector<std::pair<unsigned, Rational>> derived{{2, Rational(17, 32)}, {3, Rational(281, 512)}};
        for (const auto& [n, value] : derived) {
            if (n > opt_.max_n || opt_.max_m < 2) continue;
            const auto closed = commutativity_degree_two_factor_formula(n);
            add("commutativity", "m=2 value n=" + std::to_string(n), value.str(), closed.str(), "formula",
                closed == value);
        }
        auto grid = product_grid();
        if (opt_.max_m >= 2) {
            for (unsigned n = 1; n <= opt_.max_n; ++n)
                if (2 * n > opt_.max_mn) grid.emplace_back(2, n);  // m=2 is swept up to max_n regardless
        }
        for (const auto& [m, n] : grid) {
            for (auto zo : opt_.z_orders) {
                const std::string name = "brute = closed, " + params(m, n, zo);
                guarded("commutativity", name, [&] {
                    const ScalarGroup z(zo);
                    const auto loops = sample_loops(n, zo);
                    std::vector<CDLoop> factors;
                    for (unsigned i = 0; i < m; ++i) factors.push_back(loops[i % loops.size()]);
                    const CentralProduct a(factors);
                    const auto brute = commutativity_degree_brute(a, 1, opt_.budget);
                    const auto closed = commutativity_degree_closed(m, n);
                    add("commutativity", name, closed.str(), brute.degree.str(), "enumeration",
                        brute.degree == closed);
                });
            }
        }
    }

    void commutants_and_census() {
        for (const auto& [m, n] : product_grid()) {
            for (auto zo : opt_.z_orders) {
                const std::string suffix = params(m, n, zo);
                guarded("commutant", "densities " + suffix, [&] {
                    const auto loops = sample_loops(n, zo);
                    std::vector<CDLoop> factors;
                    for (unsigned i = 0; i < m; ++i) factors.push_back(loops[(i + 1) % loops.size()]);
                    const CentralProduct a(factors);
                    opt_.budget.require(a.order(), "commutant sweep");
                    const std::uint64_t cosets = a.coset_count(), size = a.order();
                    const std::uint32_t zo2 = a.z().order();
                    std::size_t bad = 0;
                    std::uint64_t rank1 = 0;
                    bool rank1_ok = true;
                    // every element y = (s, u) against every element w = (t, v)
                    for (std::uint64_t i = 0; i < size; ++i) {
                        const std::uint64_t u = i % cosets;
                        std::uint64_t c = 0;
                        for (std::uint64_t j = 0; j < size; ++j) {
                            const std::uint64_t v = j % cosets;
                            const auto s = i / cosets, t = j / cosets;
                            c += (s + t + a.twist_exponent(u, v)) % zo2 == (s + t + a.twist_exponent(v, u)) % zo2;
                        }
                        const unsigned k = a.packed_rank(u);
                        if (Rational(BigInt(c), BigInt(size)) != b_k_closed(n, k)) ++bad;
                        if (k == 1) {
                            ++rank1;
                            rank1_ok = rank1_ok && c / zo2 == (std::uint64_t{1} << ((m - 1) * n + 1));
                        }
                    }
                    add("commutant", "|C(y)|/|A| = b_rank(y) for every y, " + suffix, "0 mismatches",
                        std::to_string(bad) + " mismatches", "formula", bad == 0);
                    add("commutant", "rank-1 |C(y)/Z| = 2^((m-1)n+1), " + suffix,
                        std::to_string(std::uint64_t{1} << ((m - 1) * n + 1)),
                        rank1_ok ? "all " + std::to_string(rank1) + " agree" : "mismatch", "formula", rank1_ok);
                });
                guarded("census", "rank census " + suffix, [&] {
                    const auto loops = sample_loops(n, zo);
                    const CentralProduct a(std::vector<CDLoop>(m, loops.front()));
                    const auto brute = rank_census_brute(a, opt_.budget);
                    const auto closed = rank_census_closed(m, n, zo);
                    auto fmt = [](const RankCensus& c) {
                        std::string s;
                        for (auto v : c.counts) s += (s.empty() ? "" : ",") + std::to_string(v);
                        return s;
                    };
                    add("census", "rank census " + suffix, fmt(closed), fmt(brute), "formula", brute == closed);
                });
            }
        }
    }

    void limits() {
        const auto grow_n = pc_limit_table(LimitMode::GrowN, 2, 2, 10);
        bool increasing = true;
        for (std::size_t i = 1; i < grow_n.size(); ++i) increasing = increasing && grow_n[i - 1].second < grow_n[i].second;
        add("limits", "P_c(2, n) strictly increasing for n=2..10", "true", increasing ? "true" : "false",
            "enumeration", increasing);
        const auto last = grow_n.back().second;
        add("limits", "P_c(2, 10) > 0.99", "> 0.99", last.decimal(6), "enumeration", last > Rational(99, 100));
        const auto at40 = commutativity_degree_closed(40, 2);
        const auto gap = (at40 - Rational(1, 2)).abs();
        add("limits", "|P_c(40, 2) - 1/2| < 0.01", "< 0.01", gap.decimal(12), "enumeration",
            gap < Rational(1, 100));
        for (unsigned n = 2; n <= 6; ++n) {
            bool dec = true;
            for (unsigned k = 1; k <= 8; ++k) {
                const auto prev = (b_k_closed(n, k - 1) - Rational(1, 2)).abs();
                const auto cur = (b_k_closed(n, k) - Rational(1, 2)).abs();
                dec = dec && (n == 2 ? cur == Rational(0) : cur < prev);
            }
            add("limits", "b_k distinct pattern n=" + std::to_string(n),
                n == 2 ? "b_k = 1/2 for k >= 1" : "|b_k - 1/2| strictly decreasing", dec ? "holds" : "violated",
                "formula", dec);
        }
    }

    void decomposition() {
        std::vector<std::tuple<unsigned, unsigned, std::uint32_t>> grid;
        for (unsigned n = 3; n <= std::min(4u, opt_.max_n); ++n)
            for (unsigned m = 1; m <= std::min(2u, opt_.max_m); ++m)
                for (auto zo : opt_.z_orders) grid.emplace_back(m, n, zo);
        if (grid.empty()) return;
        std::mt19937_64 rng(opt_.seed);
        unsigned ok = 0, done = 0;
        std::string failures;
        for (unsigned t = 0; t < opt_.decompose_trials; ++t) {
            const auto [m, n, zo] = grid[t % grid.size()];
            const std::string name = "trial " + std::to_string(t) + " " + params(m, n, zo);
            guarded("decompose", name, [&, m = m, n = n, zo = zo] {
                const auto loops = sample_loops(n, zo);
                std::vector<CDLoop> factors;
                for (unsigned i = 0; i < m; ++i)
                    factors.push_back(loops[std::uniform_int_distribution<std::size_t>(0, loops.size() - 1)(rng)]);
                const CentralProduct a(factors);
                const auto table = to_table(a, opt_.budget);
                std::stringstream file;
                write_loop_table(file, table);
                const auto imported = read_loop_table(file);
                std::vector<Index> perm(imported.size());
                std::iota(perm.begin(), perm.end(), Index{0});
                std::shuffle(perm.begin(), perm.end(), rng);
                const auto shuffled = imported.relabeled(perm);
                const auto dec = recover_factors(shuffled, n);

                // element sets, mapped back through the relabeling
                std::vector<Index> unperm(perm.size());
                for (Index i = 0; i < perm.size(); ++i) unperm[perm[i]] = i;
                std::vector<std::vector<Index>> recovered, embedded;
                for (const auto& f : dec.factors) {
                    std::vector<Index> s;
                    for (Index x : f.elements) s.push_back(unperm[x]);
                    std::sort(s.begin(), s.end());
                    recovered.push_back(s);
                }
                for (unsigned i = 0; i < m; ++i) {
                    std::vector<Index> s;
                    for (std::uint64_t sc = 0; sc < zo; ++sc)
                        for (std::uint64_t mask = 0; mask < (1u << n); ++mask)
                            s.push_back(static_cast<Index>(sc * a.coset_count() + (mask << (i * n))));
                    std::sort(s.begin(), s.end());
                    embedded.push_back(s);
                }
                std::sort(recovered.begin(), recovered.end());
                std::sort(embedded.begin(), embedded.end());

                std::vector<AbstractLoop> originals, found;
                for (const auto& f : factors) originals.push_back(to_table(f, opt_.budget));
                for (const auto& f : dec.factors) found.push_back(f.table);
                const auto match = match_factors(found, originals);
                const bool pass = recovered == embedded && match.sigma.has_value();
                std::string labels;
                for (const auto& f : factors) labels += gamma_label(f) + " ";
                add("decompose", name, "factors recovered and matched", pass ? "yes" : "no", "identity", pass, labels);
                ++done;
                ok += pass;
                if (!pass) failures += std::to_string(t) + " ";
            });
        }
        add("decompose", "round trips (all trials)", std::to_string(opt_.decompose_trials),
            std::to_string(ok) + " of " + std::to_string(done), "identity", ok == opt_.decompose_trials,
            failures.empty() ? "" : "failed trials: " + failures);

        guarded("decompose", "n=2 input rejected", [&] {
            const ScalarGroup z(2);
            const CentralProduct a({CDLoop(z, {z.minus_one(), z.minus_one()}), CDLoop(z, {z.minus_one(), z.minus_one()})});
            std::string msg;
            try {
                recover_factors(to_table(a, opt_.budget), 2);
            } catch (const ValidationError& e) {
                msg = e.what();
            }
            add("decompose", "n=2 input rejected", "ValidationError", msg.empty() ? "accepted" : msg, "identity",
                msg.find("n >= 3") != std::string::npos);
        });
    }

    void structure() {
        for (unsigned n = 0; n <= opt_.max_n; ++n) {
            for (auto zo : opt_.z_orders) {
                for (const auto& loop : sample_loops(n, zo)) {
                    const std::string label = gamma_label(loop);
                    guarded("structure", label, [&] { structure_of(loop, label); });
                }
            }
        }
    }

    void structure_of(const CDLoop& loop, const std::string& label) {
        const auto elems = loop.enumerate(opt_.budget);
        const std::uint64_t size = elems.size();
        opt_.budget.require(size * size * size, "triple sweep");

        const auto table = to_table(loop, opt_.budget);  // validates the Latin square
        add("structure", "Latin square with identity " + label, "valid", "valid", "identity", true);

        SubloopCache cache(table);
        std::size_t not_diassoc = 0;
        for (Index x = 0; x < size; ++x) {
            const auto sx = cache.extend(cache.trivial(), x);
            for (Index y = 0; y < size; ++y) not_diassoc += !cache.associative(cache.extend(sx, y));
        }
        add("structure", "di-associative " + label, "0 pairs", std::to_string(not_diassoc) + " pairs", "identity",
            not_diassoc == 0);

        std::size_t bad_signs = 0, bad_conj = 0, bad_hom = 0, moufang_fail = 0;
        for (const auto& x : elems) {
            bad_conj += !(loop.conj(loop.conj(x)) == x);
            const auto norm = loop.mul(x, loop.conj(x));
            bad_conj += norm.mask != 0;
            for (const auto& y : elems) {
                const auto c = loop.commutator(x, y).scalar;
                bad_signs += !(is_one(c) || is_minus_one(c)) || loop.commutator(x, y).mask != 0;
                bad_conj += !(loop.conj(loop.mul(x, y)) == loop.mul(loop.conj(y), loop.conj(x)));
                bad_hom += loop.mul(x, y).mask != (x.mask ^ y.mask);
                for (const auto& z : elems) {
                    const auto as = loop.associator(x, y, z);
                    bad_signs += !(is_one(as.scalar) || is_minus_one(as.scalar)) || as.mask != 0;
                    moufang_fail += !(loop.mul(loop.mul(loop.mul(x, y), z), y) == loop.mul(x, loop.mul(y, loop.mul(z, y))));
                }
            }
        }
        std::size_t kernel = 0;
        for (const auto& x : elems) kernel += x.mask == 0;
        const bool kernel_ok = kernel == loop.z().order() && bad_hom == 0;
        add("structure", "commutators and associators in {1,-1} " + label, "0", std::to_string(bad_signs),
            "identity", bad_signs == 0);
        add("structure", "involutive anti-automorphism, central norm " + label, "0", std::to_string(bad_conj),
            "identity", bad_conj == 0);
        add("structure", "mask homomorphism onto (Z/2)^n with kernel Z " + label,
            "kernel " + std::to_string(loop.z().order()), "kernel " + std::to_string(kernel), "identity", kernel_ok);
        if (loop.n() <= 3) {
            add("structure", "Moufang identity " + label, "0 failures", std::to_string(moufang_fail) + " failures",
                "identity", moufang_fail == 0);
        } else {
            report_.checks.push_back({"structure", "Moufang identity " + label, "not asserted",
                                      std::to_string(moufang_fail) + " failing triples", "enumeration",
                                      CheckStatus::Info, ""});
        }
    }

    VerifyOptions opt_;
    VerifyReport report_;
};

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) { return Runner(options).run(); }

}  // namespace cdl
