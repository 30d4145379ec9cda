#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cextdisc/scalars.hpp"

using namespace cextdisc::scalars;
using cextdisc::Error;

TEST_CASE("primitive roots of small order") {
    CHECK(primitive_root(1).is_one());
    CHECK(primitive_root(2) == Cyclotomic::from_integer(-1));

    Cyclotomic z3 = primitive_root(3);
    CHECK(z3.conductor() == 3);
    // Minimal polynomial identity: z^2 + z + 1 = 0.
    CHECK((z3 * z3 + z3 + Cyclotomic::one()).is_zero());
}

TEST_CASE("field arithmetic identities") {
    Cyclotomic z3 = primitive_root(3);
    CHECK((z3 * z3 * z3).is_one());
    CHECK(z3 + z3 * z3 == Cyclotomic::from_integer(-1));
    CHECK(Cyclotomic::from_integer(-1).inverse() == Cyclotomic::from_integer(-1));
    CHECK_THROWS_WITH_AS(Cyclotomic::zero().inverse(), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("multiplicative orders") {
    CHECK(Cyclotomic::one().multiplicative_order() == 1);
    CHECK(primitive_root(3).pow(2).multiplicative_order() == 3);
    CHECK_FALSE(Cyclotomic::from_integer(2).multiplicative_order().has_value());
    CHECK_FALSE((primitive_root(4) + Cyclotomic::one()).multiplicative_order().has_value());
    // 1 + ζ3 = ζ6: the sum demotes to conductor 3 and has order 6.
    CHECK((primitive_root(3) + Cyclotomic::one()).multiplicative_order() == 6);
    CHECK((primitive_root(3) + Cyclotomic::one()) == primitive_root(6));
    CHECK_THROWS_WITH_AS(Cyclotomic::zero().multiplicative_order(), doctest::Contains("ZeroInput"),
                         Error);
}

TEST_CASE("primitive_root(n) has order exactly n") {
    for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 5ul, 6ul, 8ul, 9ul, 10ul, 12ul, 15ul, 18ul}) {
        Cyclotomic z = primitive_root(n);
        CHECK(z.pow(n).is_one());
        CHECK(z.multiplicative_order() == n);
        for (unsigned long p = 2; p <= n; ++p)
            if (n % p == 0 && (p == 2 || p == 3 || p == 5 || p == 7 || p == 11))
                CHECK_FALSE(z.pow(n / p).is_one());
    }
}

TEST_CASE("conductor demotion keeps values canonical") {
    Cyclotomic z12 = primitive_root(12);
    CHECK((z12 * z12.pow(11)).is_one());
    CHECK((z12 * z12.pow(11)).conductor() == 1);
    // ζ12^3 is a 4th root of unity; the value must live at conductor 4.
    CHECK(z12.pow(3).conductor() == 4);
    CHECK(z12.pow(4).conductor() == 3);
    // Mixed-conductor product lands where it belongs.
    Cyclotomic w = primitive_root(4) * primitive_root(3);
    CHECK(w.multiplicative_order() == 12);
    CHECK(w.conductor() == 12);
}

TEST_CASE("roots of unity at orders congruent to 2 mod 4 avoid redundant conductors") {
    Cyclotomic z6 = primitive_root(6);
    CHECK(z6.conductor() == 3);
    CHECK(z6.multiplicative_order() == 6);
    CHECK(z6 == -primitive_root(3).pow(2));
    CHECK(Cyclotomic::root_of_unity(6, 3) == Cyclotomic::from_integer(-1));
}

TEST_CASE("random field axioms") {
    std::mt19937_64 rng(99);
    std::vector<Cyclotomic> pool = {
        Cyclotomic::from_integer(2),
        Cyclotomic::from_rational(Rational(1, 3)),
        primitive_root(3),
        primitive_root(4),
        primitive_root(5),
        primitive_root(3) + Cyclotomic::one(),
        primitive_root(12).pow(7) - Cyclotomic::from_integer(3),
    };
    auto pick = [&]() { return pool[rng() % pool.size()]; };
    for (int trial = 0; trial < 40; ++trial) {
        Cyclotomic a = pick(), b = pick(), c = pick();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) {
            CHECK((a * a.inverse()).is_one());
            CHECK(a.pow(-3) == a.inverse().pow(3));
        }
    }
}

TEST_CASE("galois conjugation fixes rationals and permutes roots") {
    Cyclotomic z5 = primitive_root(5);
    CHECK(z5.galois(2) == z5.pow(2));
    CHECK(Cyclotomic::from_rational(Rational(7, 2)).galois(3) ==
          Cyclotomic::from_rational(Rational(7, 2)));
    // Trace of ζ5 over Q: sum of conjugates = -1.
    Cyclotomic tr = z5 + z5.galois(2) + z5.galois(3) + z5.galois(4);
    CHECK(tr == Cyclotomic::from_integer(-1));
}

TEST_CASE("textual forms round-trip") {
    std::vector<std::string> inputs = {"1", "-3/2", "zeta(3)", "zeta(12)^5", "2*zeta(4)",
                                       "1/2*zeta(3)^2", "cyc(3; 1/2,-1)"};
    for (const auto& s : inputs) {
        Cyclotomic v = Cyclotomic::parse(s);
        CHECK(Cyclotomic::parse(v.canonical_string()) == v);
        CHECK(Cyclotomic::parse(v.to_string()) == v);
    }
    CHECK(Cyclotomic::parse("zeta(3)^3").is_one());
    CHECK(Cyclotomic::parse("zeta(3)^-1") == primitive_root(3).pow(2));
    CHECK_THROWS_WITH_AS(Cyclotomic::parse("zeta(3"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(Cyclotomic::parse("1/0"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(Cyclotomic::parse("2 junk"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("discrete logarithm over root powers") {
    Cyclotomic z9 = primitive_root(9);
    for (unsigned long e = 0; e < 9; ++e) CHECK(discrete_log(z9.pow(e), z9, 9) == e);
    CHECK_THROWS_AS(discrete_log(Cyclotomic::from_integer(2), z9, 9), Error);
}
