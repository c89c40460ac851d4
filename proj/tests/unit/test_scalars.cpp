#include <doctest.h>

#include "cdl/error.hpp"
#include "cdl/scalars.hpp"

using namespace cdl;

TEST_CASE("make_scalar_group") {
    const ScalarGroup z2(2);
    CHECK(z2.minus_one().exponent == 1);
    CHECK(z2.one().exponent == 0);

    const ScalarGroup z4(4);
    CHECK(z4.minus_one().exponent == 2);

    CHECK_THROWS_AS(ScalarGroup(3), ValidationError);
    CHECK_THROWS_AS(ScalarGroup(0), ValidationError);
    CHECK_THROWS_AS(ScalarGroup(-2), ValidationError);
}

TEST_CASE("scalar_mul and scalar_inv") {
    const ScalarGroup z2(2), z4(4);
    CHECK(z2.make(1) * z2.make(1) == z2.one());
    CHECK(z4.make(1) * z4.make(3) == z4.one());
    for (std::int64_t k = 0; k < 4; ++k) CHECK(z4.one() * z4.make(k) == z4.make(k));

    CHECK(scalar_inv(z4.one()) == z4.one());
    CHECK(scalar_inv(z2.make(1)) == z2.make(1));
    CHECK(scalar_inv(z4.make(1)) == z4.make(3));

    CHECK_THROWS_AS(scalar_mul(z2.one(), z4.one()), ValidationError);
}

TEST_CASE("group axioms, exhaustively for small orders") {
    for (std::int64_t order = 2; order <= 16; order += 2) {
        const ScalarGroup z(order);
        CHECK(z.minus_one() != z.one());
        CHECK(z.minus_one() * z.minus_one() == z.one());
        for (const auto& a : z.elements()) {
            CHECK(a * scalar_inv(a) == z.one());
            for (const auto& b : z.elements()) CHECK(a * b == b * a);
        }
    }
}

TEST_CASE("parsing shorthands") {
    const ScalarGroup z(8);
    CHECK(z.parse("+1") == z.one());
    CHECK(z.parse("-1") == z.minus_one());
    CHECK(z.parse("3").exponent == 3);
    CHECK(z.parse(" -1 ") == z.minus_one());
    CHECK_THROWS_AS(z.parse("8"), ValidationError);
    CHECK_THROWS_AS(z.parse("x"), ValidationError);
    CHECK_THROWS_AS(z.parse(""), ValidationError);
}

TEST_CASE("budget from environment") {
    Budget b{16};
    CHECK_NOTHROW(b.require(16, "x"));
    CHECK_THROWS_AS(b.require(17, "x"), BudgetExceeded);
    CHECK(Budget{}.max_elements == (1u << 20));
}
