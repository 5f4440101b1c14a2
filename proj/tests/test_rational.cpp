#include <doctest.h>

#include <random>

#include "sg/rational.hpp"

using namespace sg;

TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(parse_rat("3/6") == rat(1, 2));
    CHECK(parse_rat("-4/6") == rat(-2, 3));
    CHECK(parse_rat("7") == rat(7));
    CHECK(to_string(rat(9, 12)) == "3/4");
    CHECK(to_string(rat(-8, 2)) == "-4");
    CHECK(parse_rat("11/10").denominator() == 10);
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("x"));
    CHECK_THROWS(parse_rat(""));
}

TEST_CASE("floor and ceil respect negative values") {
    CHECK(rat_floor(rat(7, 2)) == 3);
    CHECK(rat_ceil(rat(7, 2)) == 4);
    CHECK(rat_floor(rat(-7, 2)) == -4);
    CHECK(rat_ceil(rat(-7, 2)) == -3);
    CHECK(rat_floor(rat(4)) == 4);
    CHECK(rat_ceil(rat(4)) == 4);
}

TEST_CASE("simplest_between finds the least denominator in the interval") {
    CHECK(simplest_between(rat(1, 3), rat(2, 3)) == rat(1, 2));
    CHECK(simplest_between(rat(3, 2), rat(3, 2)) == rat(3, 2));
    CHECK(simplest_between(rat(5, 2), rat(7, 2)) == rat(3));
    CHECK(simplest_between(rat(-1, 2), rat(1, 3)) == rat(0));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-40, 40), den(1, 25);
    for (int iter = 0; iter < 300; ++iter) {
        Rat a = rat(num(rng), den(rng)), b = rat(num(rng), den(rng));
        if (a > b) std::swap(a, b);
        Rat s = simplest_between(a, b);
        REQUIRE(a <= s);
        REQUIRE(s <= b);
        // No fraction with a smaller denominator fits in [a, b].
        for (Int q = 1; q < s.denominator(); ++q) {
            Int lo = rat_ceil(a * Rat(q, 1));
            CHECK(Rat(lo, q) > b);
        }
    }
}
