#include <doctest.h>

#include <numeric>
#include <random>

#include "cdl/decompose.hpp"

using namespace cdl;

namespace {

const ScalarGroup z2(2);

CDLoop loop_of(std::vector<int> signs, const ScalarGroup& z = z2) {
    std::vector<Scalar> g;
    for (int s : signs) g.push_back(s > 0 ? z.one() : z.minus_one());
    return CDLoop(z, g);
}

std::vector<Index> random_perm(std::size_t n, unsigned seed) {
    std::vector<Index> p(n);
    std::iota(p.begin(), p.end(), Index{0});
    std::shuffle(p.begin(), p.end(), std::mt19937(seed));
    return p;
}

std::vector<Index> embedded_set(const CentralProduct& a, unsigned factor) {
    std::vector<Index> s;
    for (std::uint64_t sc = 0; sc < a.z().order(); ++sc)
        for (std::uint64_t mask = 0; mask < (1u << a.n()); ++mask)
            s.push_back(static_cast<Index>(sc * a.coset_count() + (mask << (factor * a.n()))));
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("infer_parameters") {
    const auto t128 = to_table(CentralProduct({loop_of({-1, -1, -1}), loop_of({-1, -1, -1})}));
    const auto s = infer_parameters(t128, 3);
    CHECK(s.m == 2);
    CHECK(s.z_size == 2);
    CHECK(infer_parameters(to_table(loop_of({-1, -1, -1})), 3).m == 1);

    // 96 elements with center 2: 48 is not a power of 8
    std::vector<Index> t(96 * 96);
    for (std::size_t i = 0; i < 96; ++i)
        for (std::size_t j = 0; j < 96; ++j) t[i * 96 + j] = static_cast<Index>((i + j) % 96);
    CHECK_THROWS_AS(infer_parameters(AbstractLoop(96, t), 3), DecompositionError);
    CHECK_THROWS_WITH_AS(infer_parameters(t128, 2), doctest::Contains("n >= 3"), ValidationError);
}

TEST_CASE("rank_of") {
    const CentralProduct a({loop_of({-1, -1, -1}), loop_of({-1, -1, -1})});
    const auto t = to_table(a);
    CHECK(rank_of(t, 0, 3, 2) == 0);
    const auto& d = a.factors()[0];
    const auto x = a.embed(1, d.generator(1));
    CHECK(rank_of(t, static_cast<Index>(a.index_of(x)), 3, 2) == 1);
    const auto xy = a.mul(x, a.embed(2, d.generator(1)));
    CHECK(t.commutant_size(static_cast<Index>(a.index_of(xy))) == 80);
    CHECK(rank_of(t, static_cast<Index>(a.index_of(xy)), 3, 2) == 2);
}

TEST_CASE("table-side rank agrees with mask-side rank") {
    const ScalarGroup z4(4);
    for (unsigned n : {3u, 4u}) {
        for (unsigned m : {1u, 2u}) {
            std::vector<CDLoop> fs;
            for (unsigned i = 0; i < m; ++i) fs.push_back(CDLoop(z4, std::vector<Scalar>(n, i ? z4.one() : z4.minus_one())));
            if (m * n > 6) continue;  // keep the table small here; larger cases run in acceptance
            const CentralProduct a(fs);
            const auto t = to_table(a);
            for (Index x = 0; x < t.size(); ++x) CHECK(rank_of(t, x, n, m) == CentralProduct::rank(a.at(x)));
        }
    }
}

TEST_CASE("recover_factors") {
    SUBCASE("two octonion loops, relabeled") {
        const CentralProduct a({loop_of({-1, -1, -1}), loop_of({-1, -1, -1})});
        const auto perm = random_perm(a.order(), 42);
        const auto t = to_table(a).relabeled(perm);
        const auto d = recover_factors(t, 3);
        REQUIRE(d.factors.size() == 2);
        const auto o16 = to_table(loop_of({-1, -1, -1}));
        for (const auto& f : d.factors) {
            CHECK(f.elements.size() == 16);
            CHECK(find_isomorphism(f.table, o16).has_value());
        }
        std::vector<Index> inter;
        std::set_intersection(d.factors[0].elements.begin(), d.factors[0].elements.end(),
                              d.factors[1].elements.begin(), d.factors[1].elements.end(), std::back_inserter(inter));
        CHECK(inter == d.shape.center);
        CHECK(partition_is_pivot_independent(t, 3));
    }
    SUBCASE("single factor") {
        const auto d = recover_factors(to_table(loop_of({-1, -1, -1})), 3);
        REQUIRE(d.factors.size() == 1);
        CHECK(d.factors[0].elements.size() == 16);
    }
    SUBCASE("mixed factors are recovered exactly") {
        const CentralProduct a({loop_of({-1, -1, -1}), loop_of({1, -1, -1})});
        const auto d = recover_factors(to_table(a), 3);
        REQUIRE(d.factors.size() == 2);
        std::vector<std::vector<Index>> got{d.factors[0].elements, d.factors[1].elements};
        std::vector<std::vector<Index>> want{embedded_set(a, 0), embedded_set(a, 1)};
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
        CHECK_FALSE(find_isomorphism(d.factors[0].table, d.factors[1].table).has_value());
    }
    SUBCASE("n = 2 is rejected") {
        const CentralProduct a({loop_of({-1, -1}), loop_of({-1, -1})});
        CHECK_THROWS_WITH_AS(recover_factors(to_table(a), 2), doctest::Contains("n >= 3"), ValidationError);
    }
    SUBCASE("wrong n is detected") {
        const CentralProduct a({loop_of({-1, -1, -1, -1})});
        CHECK_THROWS_AS(recover_factors(to_table(a), 3), DecompositionError);
    }
}

TEST_CASE("match_factors") {
    const auto o16 = to_table(loop_of({-1, -1, -1}));
    const auto split = to_table(loop_of({1, -1, -1}));
    std::vector<AbstractLoop> d{o16, split};

    auto same = match_factors(d, d);
    REQUIRE(same.sigma.has_value());
    CHECK(*same.sigma == std::vector<unsigned>{0, 1});

    std::vector<AbstractLoop> reversed{split, o16};
    auto rev = match_factors(d, reversed);
    REQUIRE(rev.sigma.has_value());
    CHECK(*rev.sigma == std::vector<unsigned>{1, 0});

    std::vector<AbstractLoop> both_o16{o16, o16};
    auto none = match_factors(d, both_o16);
    CHECK_FALSE(none.sigma.has_value());
    CHECK(none.isomorphic[0][0]);
    CHECK_FALSE(none.isomorphic[1][0]);
}

TEST_CASE("isomorphic products have matching recoveries") {
    const CentralProduct a({loop_of({-1, -1, -1}), loop_of({1, 1, -1})});
    const CentralProduct b({loop_of({1, 1, -1}), loop_of({-1, -1, -1})});
    const auto ta = to_table(a);
    const auto tb = to_table(b).relabeled(random_perm(b.order(), 9));
    REQUIRE(find_isomorphism(ta, tb).has_value());
    const auto m = match_factors(recover_factors(ta, 3), recover_factors(tb, 3));
    CHECK(m.sigma.has_value());
}
