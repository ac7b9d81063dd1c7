#include <convrad/rational.hpp>

#include <doctest.h>

#include <random>

using namespace convrad;

TEST_CASE("construction reduces to canonical form") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7) == Rat(0));
    CHECK(Rat(1, 2).den() == 2);
    CHECK(Rat(-1, 2).num() == -1);
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse and serialize round trip") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-3/4") == Rat(-3, 4));
    CHECK(Rat::parse("6/8") == Rat(3, 4));
    CHECK(Rat::parse("5") == Rat(5));
    CHECK(Rat(3, 4).str() == "3/4");
    CHECK(Rat(5).str() == "5/1");
    CHECK(Rat(-1, 3).str() == "-1/3");
    CHECK(Rat::parse(Rat(-22, 7).str()) == Rat(-22, 7));
    CHECK_THROWS_AS(Rat::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(1, 3) / Rat(2, 9) == Rat(3, 2));
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
    CHECK(min(Rat(1, 3), Rat(1, 4)) == Rat(1, 4));
    CHECK(max(Rat(-1), Rat(-2)) == Rat(-1));
    CHECK(abs(Rat(-7, 3)) == Rat(7, 3));
}

TEST_CASE("integrality predicates") {
    CHECK(Rat(6, 3).is_integer());
    CHECK(Rat(6, 3).to_long() == 2);
    CHECK_FALSE(Rat(1, 2).is_integer());
    CHECK_THROWS_AS(Rat(1, 2).to_long(), std::domain_error);
    CHECK(Rat(5, 3).den_leq(3));
    CHECK_FALSE(Rat(5, 3).den_leq(2));
}

TEST_CASE("field laws on random values") {
    std::mt19937_64 rng(42);
    auto r = [&] {
        long num = static_cast<long>(rng() % 2001) - 1000;
        long den = 1 + static_cast<long>(rng() % 40);
        return Rat(num, den);
    };
    for (int k = 0; k < 500; ++k) {
        Rat a = r(), b = r(), c = r();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (b != Rat(0)) CHECK(a / b * b == a);
    }
}
