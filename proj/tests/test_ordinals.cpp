#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordeuc/ordinal.hpp"
#include "oracles.hpp"

using namespace ordeuc;

namespace {

Ordinal W() { return omega_pow(1ul); }
Ordinal ord(const std::string& s) { return parse_ordinal(s); }

}  // namespace

TEST_CASE("cmp basics") {
    CHECK(cmp(Ordinal(), Ordinal()) == Ordering::equal);
    CHECK(cmp(W(), Ordinal(5ul)) == Ordering::greater);
    // w^2*2 + 3 vs w^2*2 + w: second term decides
    CHECK(cmp(ord("w^2*2 + 3"), ord("w^2*2 + w")) == Ordering::less);
    CHECK(ord("w^2") < ord("w^2 + 1"));
    CHECK(ord("w^2*3") > ord("w^2*2 + w*500"));
}

TEST_CASE("ordinal addition") {
    CHECK(ord_add(ord("w^3*4 + w + 2"), Ordinal()) == ord("w^3*4 + w + 2"));
    CHECK(ord_add(Ordinal(1ul), W()) == W());
    CHECK(ord_add(ord("w*2 + 1"), ord("w + 1")) == ord("w*3 + 1"));
    CHECK(ord_add(ord("w^2 + 5"), ord("w*2")) == ord("w^2 + w*2"));
}

TEST_CASE("ordinal addition agrees with the finite-exponent oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        auto a = oracles::random_vector_ordinal(rng);
        auto b = oracles::random_vector_ordinal(rng);
        CHECK(ord_add(oracles::to_ordinal(a), oracles::to_ordinal(b)) ==
              oracles::to_ordinal(oracles::vector_ord_add(a, b)));
    }
}

TEST_CASE("hessenberg sum") {
    CHECK(nat_sum(Ordinal(3ul), Ordinal(4ul)) == Ordinal(7ul));
    CHECK(nat_sum(W(), W()) == ord("w*2"));
    CHECK(nat_sum(ord("w^2 + w*3"), ord("w*2 + 5")) == ord("w^2 + w*5 + 5"));
}

TEST_CASE("hessenberg sum agrees with the exponent-multiset oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        Ordinal a = oracles::random_ordinal(rng, 3);
        Ordinal b = oracles::random_ordinal(rng, 3);
        CHECK(nat_sum(a, b) == oracles::multiset_nat_sum(a, b));
    }
}

TEST_CASE("omega powers") {
    CHECK(omega_pow(Ordinal()) == Ordinal(1ul));
    CHECK(omega_pow(Ordinal(1ul)) == W());
    CHECK(omega_pow(W()) == ord("w^(w)"));
}

TEST_CASE("indecomposability") {
    CHECK_FALSE(is_indecomposable(Ordinal()));
    CHECK(is_indecomposable(ord("w^2")));
    CHECK_FALSE(is_indecomposable(ord("w*2")));
    CHECK(is_indecomposable(Ordinal(1ul)));
    CHECK_FALSE(is_indecomposable(Ordinal(2ul)));
    CHECK_FALSE(is_indecomposable(ord("w^2 + w")));
}

TEST_CASE("indecomposable iff no split: grid below w*5") {
    // universe: w*i + j for i < 5, j <= 12
    std::vector<Ordinal> grid;
    for (unsigned long i = 0; i < 5; ++i)
        for (unsigned long j = 0; j <= 12; ++j)
            grid.push_back(nat_sum(Ordinal::from_terms({{Ordinal(1ul), mpz_class(i)}}),
                                   Ordinal(j)));
    for (const Ordinal& a : grid) {
        if (a.is_zero()) continue;
        bool splittable = false;
        for (const Ordinal& b : grid)
            for (const Ordinal& c : grid) {
                if (b < a && c < a && ord_add(b, c) == a) splittable = true;
            }
        CHECK(splittable == !is_indecomposable(a));
    }
}

TEST_CASE("codec roundtrips") {
    CHECK(ord("w^2*3 + w + 5").to_string() == "w^2*3 + w + 5");
    CHECK(Ordinal().to_string() == "0");
    CHECK(ord("w^(w)") == omega_pow(W()));
    CHECK(ord("w^(w^2)*2 + w*3 + 7").to_string() == "w^(w^2)*2 + w*3 + 7");
    CHECK(ord("  w ^ 2 * 3+w+ 5 ") == ord("w^2*3 + w + 5"));
    // non-canonical input normalizes by left-to-right ordinal addition
    CHECK(ord("1 + w") == W());
    CHECK(ord("w + w") == ord("w*2"));
    CHECK(ord("w*0 + 3") == Ordinal(3ul));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        Ordinal a = oracles::random_ordinal(rng, 3);
        CHECK(parse_ordinal(a.to_string()) == a);
        CHECK(parse_ordinal(a.to_string(true)) == a);
    }
}

TEST_CASE("codec rejects malformed input with a position") {
    CHECK_THROWS_AS(parse_ordinal(""), ParseError);
    CHECK_THROWS_AS(parse_ordinal("w^"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("w**2"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("3 + + 4"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("w^(w"), ParseError);
    CHECK_THROWS_AS(parse_ordinal("q"), ParseError);
    try {
        parse_ordinal("w^(w");
    } catch (const ParseError& e) {
        CHECK(e.pos() == 4);
    }
}

TEST_CASE("hessenberg algebra properties") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        Ordinal a = oracles::random_ordinal(rng, 3);
        Ordinal b = oracles::random_ordinal(rng, 3);
        Ordinal c = oracles::random_ordinal(rng, 3);
        CHECK(nat_sum(a, b) == nat_sum(b, a));
        CHECK(nat_sum(nat_sum(a, b), c) == nat_sum(a, nat_sum(b, c)));
        // cancellative + strictly monotone
        if (!(b == c)) CHECK_FALSE(nat_sum(a, b) == nat_sum(a, c));
        if (b < c) CHECK(nat_sum(a, b) < nat_sum(a, c));
        CHECK(ord_add(a, b) <= nat_sum(a, b));
    }
}

TEST_CASE("descending chains terminate") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        Ordinal a = oracles::random_ordinal(rng, 3);
        std::size_t steps = 0;
        while (!a.is_zero()) {
            Ordinal b = oracles::random_smaller(rng, a);
            REQUIRE(b < a);
            a = b;
            ++steps;
            REQUIRE(steps < 100000);
        }
        CHECK(steps < 100000);
    }
}
