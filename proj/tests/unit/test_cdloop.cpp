#include <doctest.h>

#include "cd_algebra_oracle.hpp"
#include "cdl/cdloop.hpp"

using namespace cdl;

namespace {

CDLoop loop_pm(const std::vector<int>& signs, std::int64_t order = 2) {
    const ScalarGroup z(order);
    std::vector<Scalar> g;
    for (int s : signs) g.push_back(s > 0 ? z.one() : z.minus_one());
    return CDLoop(z, g);
}

}  // namespace

TEST_CASE("twist agrees with the doubling law on the full algebra") {
    // every sign pattern for n <= 4
    for (unsigned n = 0; n <= 4; ++n) {
        for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
            std::vector<int> signs;
            std::vector<long long> gam;
            for (unsigned i = 0; i < n; ++i) {
                signs.push_back(pattern >> i & 1 ? 1 : -1);
                gam.push_back(signs.back());
            }
            const auto loop = loop_pm(signs);
            for (unsigned e = 0; e < (1u << n); ++e) {
                for (unsigned f = 0; f < (1u << n); ++f) {
                    const auto prod = oracle::mul(oracle::basis(n, e), oracle::basis(n, f), gam, n);
                    const long long coeff = prod[e ^ f];
                    const auto t = loop.twist(e, f);
                    CHECK((coeff == 1 ? is_one(t) : is_minus_one(t)));
                }
            }
        }
    }
}

TEST_CASE("twist examples") {
    const auto q8 = loop_pm({-1, -1});
    CHECK(q8.twist(1, 1) == q8.z().minus_one());  // l1^2 = gamma_1
    CHECK(q8.twist(0, 3) == q8.z().one());
    CHECK(q8.twist(3, 0) == q8.z().one());
    CHECK(is_minus_one(q8.twist(2, 1)));
    CHECK(is_one(q8.twist(1, 2)));

    const ScalarGroup z4(4);
    const CDLoop g(z4, {z4.make(1)});
    CHECK(g.twist(1, 1) == z4.make(1));
}

TEST_CASE("twist beyond the memo size") {
    const ScalarGroup z(2);
    const CDLoop big(z, std::vector<Scalar>(10, z.minus_one()));
    const CDLoop small(z, std::vector<Scalar>(4, z.minus_one()));
    // the first four generators span a copy of the n=4 loop
    for (unsigned e = 0; e < 16; ++e)
        for (unsigned f = 0; f < 16; ++f) CHECK(big.twist(e, f) == small.twist(e, f));
    CHECK(big.mul(big.generator(10), big.generator(10)).scalar == z.minus_one());
    CHECK_THROWS_AS(big.twist(1u << 10, 0), ValidationError);
}

TEST_CASE("mul, conj and inv") {
    const auto q8 = loop_pm({-1, -1});
    const auto i = q8.generator(1);
    CHECK(q8.mul(i, i) == q8.scalar_element(q8.z().minus_one()));
    for (const auto& x : q8.enumerate()) {
        CHECK(q8.mul(q8.identity(), x) == x);
        CHECK(q8.mul(x, q8.identity()) == x);
    }
    CHECK(q8.conj(q8.identity()) == q8.identity());
    CHECK(q8.conj(i) == LoopElement{q8.z().minus_one(), 1});
    CHECK(q8.inv(q8.identity()) == q8.identity());
    CHECK(q8.inv(i) == LoopElement{q8.z().minus_one(), 1});

    const auto split = loop_pm({1, -1});
    CHECK(split.inv(split.generator(1)) == split.generator(1));

    const auto o16 = loop_pm({-1, -1, -1});
    const auto l1 = o16.generator(1), l2 = o16.generator(2), l3 = o16.generator(3);
    const auto left = o16.mul(o16.mul(l1, l2), l3);
    const auto right = o16.mul(l1, o16.mul(l2, l3));
    CHECK(left.mask == right.mask);
    CHECK(left.scalar == right.scalar * o16.z().minus_one());

    const ScalarGroup z4(4);
    const CDLoop other(z4, {z4.minus_one()});
    CHECK_THROWS_AS(o16.mul(l1, other.generator(1)), ValidationError);
    CHECK_THROWS_AS(o16.generator(4), ValidationError);
}

TEST_CASE("conj closed form matches its recursive definition") {
    // sigma(q + r l) = sigma(q) - r l, unrolled on a monomial
    auto recursive_sign = [](unsigned mask, unsigned n) {
        int sign = 1;
        for (unsigned level = n; level > 0; --level) {
            if (mask >> (level - 1) & 1) return -sign;
        }
        return sign;
    };
    const auto o16 = loop_pm({-1, 1, -1});
    for (const auto& x : o16.enumerate()) {
        const auto c = o16.conj(x);
        const int s = recursive_sign(x.mask, 3);
        CHECK(c.scalar == (s > 0 ? x.scalar : x.scalar * o16.z().minus_one()));
        CHECK(o16.conj(c) == x);
    }
}

TEST_CASE("commutator and associator") {
    const auto q8 = loop_pm({-1, -1});
    CHECK(q8.commutator(q8.generator(1), q8.generator(2)) == q8.scalar_element(q8.z().minus_one()));
    for (const auto& x : q8.enumerate()) {
        CHECK(q8.commutator(x, x) == q8.identity());
        for (const auto& s : q8.z().elements()) CHECK(q8.commutator(x, q8.scalar_element(s)) == q8.identity());
        for (const auto& y : q8.enumerate())
            for (const auto& z : q8.enumerate()) CHECK(q8.associator(x, y, z) == q8.identity());
    }
    const auto o16 = loop_pm({-1, -1, -1});
    CHECK(o16.associator(o16.generator(1), o16.generator(2), o16.generator(3)) ==
          o16.scalar_element(o16.z().minus_one()));
    for (const auto& x : o16.enumerate())
        for (const auto& y : o16.enumerate()) CHECK(o16.associator(x, y, o16.identity()) == o16.identity());
}

TEST_CASE("enumerate") {
    CHECK(loop_pm({-1, -1}).enumerate().size() == 8);
    CHECK(loop_pm({-1, -1, -1}).enumerate().size() == 16);
    CHECK(loop_pm({}, 4).enumerate().size() == 4);
    const auto l = loop_pm({-1, 1, -1}, 4);
    const auto all = l.enumerate();
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(l.index_of(all[i]) == i);
        CHECK(l.at(i) == all[i]);
    }
    CHECK_THROWS_AS(loop_pm({-1, -1, -1, -1}).enumerate(Budget{31}), BudgetExceeded);
}

TEST_CASE("descriptor validation") {
    const ScalarGroup z2(2), z4(4);
    CHECK_THROWS_AS(CDLoop(z2, {z4.one()}), ValidationError);
    CHECK_THROWS_AS(CDLoop(z2, std::vector<Scalar>(17, z2.one())), ValidationError);
    const auto parsed = CDLoop::parse(z4, "-1,+1,1");
    CHECK(parsed.n() == 3);
    CHECK(parsed.gammas()[0] == z4.minus_one());
    CHECK(parsed.gammas()[1] == z4.one());
    CHECK(parsed.gammas()[2] == z4.make(1));
    CHECK_THROWS_AS(CDLoop::parse(z4, "-1,"), ValidationError);
}
