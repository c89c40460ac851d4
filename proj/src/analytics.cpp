#include "cdl/analytics.hpp"

#include <future>
#include <numeric>

#include "cdl/error.hpp"

namespace cdl {

namespace {

BigInt pow2(unsigned e) { return BigInt(1) << e; }

void require_cosets(const CentralProduct& a, const Budget& budget) {
    if (a.m() * a.n() > 63) throw BudgetExceeded("central product too large to enumerate");
    budget.require(a.order(), "enumerating a central product");
}

}  // namespace

std::string to_string(Method m) { return m == Method::Brute ? "brute" : "closed"; }

std::uint64_t RankCensus::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<ProductElement> commutant(const CentralProduct& a, const ProductElement& x,
                                      const Budget& budget) {
    std::vector<ProductElement> out;
    for (const auto& y : a.enumerate(budget))
        if (is_one(a.commutator(x, y).scalar)) out.push_back(y);
    return out;
}

Rational b_k_closed(unsigned n, unsigned k) {
    if (n < 1) throw ValidationError("b_k needs n >= 1");
    const Rational p(BigInt(1), pow2(n - 1));
    const Rational half(1, 2);
    return half + half * (Rational(2) * p - Rational(1)).pow(k);
}

BigInt binomial(unsigned m, unsigned k) {
    if (k > m) return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

RankCensus rank_census_brute(const CentralProduct& a, const Budget& budget) {
    require_cosets(a, budget);
    RankCensus c{std::vector<std::uint64_t>(a.m() + 1, 0)};
    for (const auto& x : a.enumerate(budget)) ++c.counts[CentralProduct::rank(x)];
    return c;
}

RankCensus rank_census_closed(unsigned m, unsigned n, std::uint32_t z_order) {
    if (m < 1 || n < 1) throw ValidationError("rank census needs m, n >= 1");
    RankCensus c{std::vector<std::uint64_t>(m + 1, 0)};
    const BigInt base = pow2(n) - 1;
    for (unsigned k = 0; k <= m; ++k) {
        BigInt v = BigInt(z_order) * binomial(m, k);
        for (unsigned i = 0; i < k; ++i) v *= base;
        if (v > std::numeric_limits<std::uint64_t>::max())
            throw ValidationError("rank census count overflows 64 bits");
        c.counts[k] = static_cast<std::uint64_t>(v);
    }
    return c;
}

DegreeReport commutativity_degree_brute(const CentralProduct& a, unsigned workers, const Budget& budget) {
    require_cosets(a, budget);
    const std::uint64_t cosets = a.coset_count();
    auto count_block = [&a, cosets](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t c = 0;
        for (std::uint64_t u = lo; u < hi; ++u)
            for (std::uint64_t v = 0; v < cosets; ++v) c += a.twist_exponent(u, v) == a.twist_exponent(v, u);
        return c;
    };
    std::uint64_t commuting = 0;
    if (workers <= 1) {
        commuting = count_block(0, cosets);
    } else {
        std::vector<std::future<std::uint64_t>> parts;
        const std::uint64_t step = (cosets + workers - 1) / workers;
        for (std::uint64_t lo = 0; lo < cosets; lo += step)
            parts.push_back(std::async(std::launch::async, count_block, lo, std::min(cosets, lo + step)));
        for (auto& p : parts) commuting += p.get();
    }
    const std::uint64_t zz = std::uint64_t{a.z().order()} * a.z().order();
    DegreeReport r;
    r.favorable = commuting * zz;
    r.total = cosets * cosets * zz;
    r.degree = Rational(BigInt(r.favorable), BigInt(r.total));
    r.method = Method::Brute;
    r.m = a.m();
    r.n = a.n();
    r.z_order = a.z().order();
    return r;
}

Rational commutativity_degree_closed(unsigned m, unsigned n) {
    if (m < 1 || n < 1) throw ValidationError("commutativity degree needs m, n >= 1");
    const BigInt total = pow2(m * n);
    const BigInt base = pow2(n) - 1;
    Rational sum(0);
    BigInt power = 1;
    for (unsigned k = 0; k <= m; ++k) {
        sum = sum + Rational(binomial(m, k) * power, total) * b_k_closed(n, k);
        power *= base;
    }
    return sum;
}

Rational commutativity_degree_two_factor_formula(unsigned n) {
    const Rational x(BigInt(1), pow2(n));
    return Rational(1) - Rational(6) * x + Rational(22) * x.pow(2) - Rational(24) * x.pow(3) +
           Rational(8) * x.pow(4);
}

std::vector<std::pair<unsigned, Rational>> pc_limit_table(LimitMode mode, unsigned fixed, unsigned from,
                                                          unsigned to) {
    if (fixed < 1 || from < 1 || from > to) throw ValidationError("limit table needs 1 <= from <= to and fixed >= 1");
    std::vector<std::pair<unsigned, Rational>> out;
    for (unsigned v = from; v <= to; ++v) {
        out.emplace_back(v, mode == LimitMode::GrowN ? commutativity_degree_closed(fixed, v)
                                                     : commutativity_degree_closed(v, fixed));
    }
    return out;
}

bool generates_group(const CDLoop& loop, const LoopElement& x, const LoopElement& y, const LoopElement& z) {
    const std::uint64_t n = loop.order();
    std::vector<char> in(n, 0);
    std::vector<LoopElement> members;
    std::size_t next = 0;
    auto add = [&](const LoopElement& e) {
        const auto i = loop.index_of(e);
        if (!in[i]) {
            in[i] = 1;
            members.push_back(e);
        }
    };
    add(loop.identity());
    add(loop.mul(x, loop.identity()));
    add(loop.mul(y, loop.identity()));
    add(loop.mul(z, loop.identity()));
    while (next < members.size()) {
        const LoopElement u = members[next++];
        for (std::size_t k = 0; k < members.size(); ++k) {
            const LoopElement v = members[k];
            add(loop.mul(u, v));
            add(loop.mul(v, u));
        }
    }
    for (const auto& a : members)
        for (const auto& b : members)
            for (const auto& c : members)
                if (!is_one(loop.associator(a, b, c).scalar)) return false;
    return true;
}

DegreeReport associativity_degree_brute(const AbstractLoop& loop, const Budget& budget) {
    const std::uint64_t n = loop.size();
    budget.require(n * n * n, "enumerating ordered triples");
    SubloopCache cache(loop);
    std::uint64_t favorable = 0;
    for (Index x = 0; x < n; ++x) {
        const auto sx = cache.extend(cache.trivial(), x);
        for (Index y = 0; y < n; ++y) {
            const auto sxy = cache.extend(sx, y);
            for (Index z = 0; z < n; ++z) favorable += cache.associative(cache.extend(sxy, z));
        }
    }
    DegreeReport r;
    r.favorable = favorable;
    r.total = n * n * n;
    r.degree = Rational(BigInt(favorable), BigInt(r.total));
    r.method = Method::Brute;
    return r;
}

DegreeReport associativity_degree_brute(const CDLoop& loop, const Budget& budget) {
    budget.require(loop.order(), "enumerating a Cayley-Dickson loop");
    budget.require(loop.order() * loop.order() * loop.order(), "enumerating ordered triples");
    auto r = associativity_degree_brute(to_table(loop, budget), budget);
    r.m = 1;
    r.n = loop.n();
    r.z_order = loop.z().order();
    return r;
}

Rational associativity_degree_closed(unsigned n) {
    if (n < 1) throw ValidationError("associativity degree needs n >= 1");
    return Rational(BigInt(7) * pow2(2 * n) - BigInt(14) * pow2(n) + 8, pow2(3 * n));
}

}  // namespace cdl
