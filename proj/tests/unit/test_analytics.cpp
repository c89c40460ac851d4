#include <doctest.h>

#include <numeric>
#include <random>

#include "cdl/analytics.hpp"

using namespace cdl;

namespace {

const ScalarGroup z2(2);

CDLoop all_minus(unsigned n, const ScalarGroup& z = z2) { return CDLoop(z, std::vector<Scalar>(n, z.minus_one())); }

// b_k from its defining recurrence b_k = (1 - p) + (2p - 1) b_{k-1}, b_0 = 1
Rational b_k_recurrence(unsigned n, unsigned k) {
    const Rational p(1, std::int64_t{1} << (n - 1));
    Rational b(1);
    for (unsigned i = 1; i <= k; ++i) b = (Rational(1) - p) + (Rational(2) * p - Rational(1)) * b;
    return b;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(3).str() == "3");
    CHECK(Rational(1, 3).decimal(4) == "0.3333");
    CHECK(Rational(2, 3).decimal(4) == "0.6667");
    CHECK(Rational(-1, 8).decimal(2) == "-0.13");
    CHECK(Rational(1, 2).pow(3) == Rational(1, 8));
    CHECK_THROWS_AS(Rational(1, 0), ValidationError);
    const Rational tiny(BigInt(1), BigInt(1) << 80);
    CHECK_FALSE(tiny.denominator_i64().has_value());
    CHECK(tiny.numerator_i64() == 1);
}

TEST_CASE("b_k closed form") {
    CHECK(b_k_closed(3, 0) == Rational(1));
    CHECK(b_k_closed(3, 1) == Rational(1, 4));
    CHECK(b_k_closed(3, 2) == Rational(5, 8));
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned k = 0; k <= 10; ++k) CHECK(b_k_closed(n, k) == b_k_recurrence(n, k));
    for (unsigned k = 1; k <= 10; ++k) CHECK(b_k_closed(2, k) == Rational(1, 2));
    for (unsigned n = 3; n <= 8; ++n) {
        for (unsigned k = 1; k <= 10; ++k) {
            CHECK(b_k_closed(n, k) > Rational(0));
            CHECK(b_k_closed(n, k) <= Rational(1));
            CHECK((b_k_closed(n, k) - Rational(1, 2)).abs() < (b_k_closed(n, k - 1) - Rational(1, 2)).abs());
        }
    }
}

TEST_CASE("commutant") {
    const CentralProduct a({all_minus(3), all_minus(3)});
    CHECK(commutant(a, a.scalar_element(z2.minus_one())).size() == a.order());

    const auto x = a.embed(1, a.factors()[0].generator(1));
    const auto cx = commutant(a, x);
    CHECK(cx.size() / 2 == 16);  // |C(x)/Z| = 2^{(m-1)n+1}
    CHECK(std::find(cx.begin(), cx.end(), x) != cx.end());

    const auto y = a.mul(x, a.embed(2, a.factors()[1].generator(1)));
    CHECK(commutant(a, y).size() / 2 == 40);
    CHECK(Rational(40, 64) == b_k_closed(3, 2));
}

TEST_CASE("rank census") {
    const CentralProduct a({all_minus(3), all_minus(3)});
    CHECK(rank_census_brute(a).counts == std::vector<std::uint64_t>{2, 28, 98});
    CHECK(rank_census_closed(2, 3, 2).counts == std::vector<std::uint64_t>{2, 28, 98});
    for (unsigned n = 1; n <= 5; ++n) {
        const CentralProduct single({all_minus(n)});
        CHECK(rank_census_brute(single).counts == std::vector<std::uint64_t>{2, 2 * ((1u << n) - 1)});
    }
    for (unsigned m = 1; m <= 4; ++m)
        for (unsigned n = 1; n <= 4; ++n) {
            const auto c = rank_census_closed(m, n, 4);
            CHECK(c.counts[0] == 4);
            CHECK(c.total() == 4 * (std::uint64_t{1} << (m * n)));
        }
}

TEST_CASE("commutativity degree") {
    const CentralProduct a22({all_minus(2), all_minus(2)});
    const CentralProduct a23({all_minus(3), all_minus(3)});
    CHECK(commutativity_degree_brute(a22).degree == Rational(17, 32));
    CHECK(commutativity_degree_brute(a23).degree == Rational(281, 512));
    CHECK(commutativity_degree_brute(CentralProduct({all_minus(2)})).degree == Rational(5, 8));

    CHECK(commutativity_degree_closed(2, 2) == Rational(17, 32));
    CHECK(commutativity_degree_closed(2, 3) == Rational(281, 512));
    for (unsigned n = 1; n <= 12; ++n)
        CHECK(commutativity_degree_closed(2, n) == commutativity_degree_two_factor_formula(n));
    for (unsigned n = 1; n <= 6; ++n) {
        const Rational inv(1, std::int64_t{1} << n);
        CHECK(commutativity_degree_closed(1, n) == inv + (Rational(1) - inv) * b_k_closed(n, 1));
    }

    const auto r = commutativity_degree_brute(a23);
    CHECK(r.total == 128u * 128u);
    CHECK(Rational(BigInt(r.favorable), BigInt(r.total)) == r.degree);
    CHECK(r.method == Method::Brute);
}

TEST_CASE("commutativity brute force over full elements agrees with the coset shortcut") {
    const ScalarGroup z4(4);
    const CentralProduct a({CDLoop(z4, {z4.minus_one(), z4.make(1)}), CDLoop(z4, {z4.one(), z4.minus_one()})});
    const auto all = a.enumerate();
    std::uint64_t commuting = 0;
    for (const auto& x : all)
        for (const auto& y : all) commuting += a.mul(x, y) == a.mul(y, x);
    const auto r = commutativity_degree_brute(a);
    CHECK(r.favorable == commuting);
    CHECK(r.degree == commutativity_degree_closed(2, 2));
}

TEST_CASE("commutativity count is independent of the worker split") {
    const CentralProduct a({all_minus(3), CDLoop(z2, {z2.one(), z2.minus_one(), z2.one()})});
    const auto one = commutativity_degree_brute(a, 1);
    for (unsigned w : {2u, 3u, 7u, 64u}) CHECK(commutativity_degree_brute(a, w).favorable == one.favorable);
}

TEST_CASE("limit tables") {
    const auto grow_n = pc_limit_table(LimitMode::GrowN, 2, 2, 10);
    REQUIRE(grow_n.size() == 9);
    CHECK(grow_n.front().second == Rational(17, 32));
    for (std::size_t i = 1; i < grow_n.size(); ++i) CHECK(grow_n[i - 1].second < grow_n[i].second);
    CHECK(grow_n.back().second > Rational(99, 100));

    const auto grow_m = pc_limit_table(LimitMode::GrowM, 2, 1, 40);
    CHECK((grow_m.back().second - Rational(1, 2)).abs() < Rational(1, 100));
    CHECK(pc_limit_table(LimitMode::GrowN, 2, 2, 2).front().second == Rational(17, 32));
    CHECK_THROWS_AS(pc_limit_table(LimitMode::GrowN, 2, 5, 4), ValidationError);
}

TEST_CASE("generates_group") {
    const auto q8 = all_minus(2);
    for (const auto& x : q8.enumerate())
        for (const auto& y : q8.enumerate())
            for (const auto& z : q8.enumerate()) CHECK(generates_group(q8, x, y, z));
    const auto o16 = all_minus(3);
    CHECK_FALSE(generates_group(o16, o16.generator(1), o16.generator(2), o16.generator(3)));
    for (const auto& x : o16.enumerate())
        for (const auto& y : o16.enumerate()) CHECK(generates_group(o16, x, y, o16.identity()));
}

TEST_CASE("associativity degree") {
    CHECK(associativity_degree_closed(2) == Rational(1));
    CHECK(associativity_degree_closed(3) == Rational(43, 64));
    CHECK(associativity_degree_closed(4) == Rational(197, 512));
    CHECK(associativity_degree_closed(4) == Rational(7 * 256 - 224 + 8, 4096));

    for (unsigned n = 1; n <= 4; ++n) {
        CHECK(associativity_degree_brute(all_minus(n)).degree == associativity_degree_closed(n));
    }
    const ScalarGroup z4(4);
    CHECK(associativity_degree_brute(all_minus(3, z4)).degree == Rational(43, 64));

    // the table route agrees with closures computed directly in the loop
    const auto o16 = all_minus(3);
    std::uint64_t favorable = 0;
    for (const auto& x : o16.enumerate())
        for (const auto& y : o16.enumerate())
            for (const auto& z : o16.enumerate()) favorable += generates_group(o16, x, y, z);
    const auto r = associativity_degree_brute(o16);
    CHECK(r.favorable == favorable);
    CHECK(r.total == 4096);
}

TEST_CASE("associativity count is invariant under relabeling") {
    const auto loop = CDLoop(z2, {z2.one(), z2.minus_one(), z2.minus_one(), z2.one()});
    const auto table = to_table(loop);
    std::vector<Index> perm(table.size());
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), std::mt19937(3));
    CHECK(associativity_degree_brute(table.relabeled(perm)).favorable == associativity_degree_brute(loop).favorable);
}

TEST_CASE("budgets") {
    const CentralProduct a({all_minus(3), all_minus(3)});
    CHECK_THROWS_AS(commutativity_degree_brute(a, 1, Budget{64}), BudgetExceeded);
    CHECK_THROWS_AS(rank_census_brute(a, Budget{64}), BudgetExceeded);
    CHECK_THROWS_AS(associativity_degree_brute(all_minus(4), Budget{1000}), BudgetExceeded);
}
