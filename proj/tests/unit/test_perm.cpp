#include <doctest.h>

#include <random>

#include <tsf/error.hpp>
#include <tsf/perm.hpp>

#include "gen.hpp"

using namespace tsf;

TEST_SUITE("perm") {

TEST_CASE("compose applies the right factor first") {
    auto p = Permutation::transposition(3, 1, 2);
    auto q = Permutation::transposition(3, 1, 3);
    CHECK(compose(p, q) == Permutation::cycle(3, {1, 3, 2}));
    CHECK(compose(p, q).str() == "(1 3 2)");
    CHECK(compose(q, p).str() == "(1 2 3)");
}

TEST_CASE("conjugation of transpositions") {
    auto ij = Permutation::transposition(3, 1, 2);
    auto ik = Permutation::transposition(3, 1, 3);
    auto jk = Permutation::transposition(3, 2, 3);
    CHECK(conjugate(ik, ij) == jk);
    CHECK(conjugate(jk, ik) == ij);
}

TEST_CASE("cycle notation and images") {
    CHECK(Permutation::identity(4).str() == "()");
    CHECK(Permutation({2, 1, 4, 3}).str() == "(1 2)(3 4)");
    CHECK(Permutation({2, 3, 1}).images_str() == "[2,3,1]");
    CHECK_THROWS_AS(Permutation({1, 1}), Error);
    CHECK_THROWS_AS(Permutation::transposition(3, 2, 2), Error);
}

TEST_CASE("cycle type, order and transposition test") {
    Permutation p({2, 1, 4, 5, 3});
    CHECK(cycle_type(p) == std::vector<int>{3, 2});
    CHECK(order(p) == 6);
    CHECK(is_transposition(Permutation::transposition(5, 2, 5)));
    CHECK_FALSE(is_transposition(p));
    CHECK(all_permutations(4).size() == 24);
    CHECK(all_transpositions(5).size() == 10);
}

TEST_CASE("extend_degree fixes the new points") {
    auto p = extend_degree(Permutation::transposition(2, 1, 2), 4);
    CHECK(p == Permutation({2, 1, 3, 4}));
    CHECK_THROWS_AS(extend_degree(p, 3), Error);
}

TEST_CASE("product action on pairs") {
    auto s = Permutation::transposition(2, 1, 2);
    auto t = Permutation::cycle(3, {1, 2, 3});
    auto st = product_action(s, t);
    CHECK(st.degree() == 6);
    // (1,1) -> (2,2): index 1 -> 5
    CHECK(st(1) == 5);
    // (2,3) -> (1,1): index 6 -> 1
    CHECK(st(6) == 1);
}

TEST_CASE("cyclic elements and characters") {
    CyclicElement a(5, 3), b(5, 4);
    CHECK((a + b).k == 2);
    CHECK((a - b).k == 4);
    CHECK((-a).k == 2);
    CHECK(CyclicElement(5, -7).k == 3);
    CHECK(character(CyclicElement(4, 1)).approx(UnitComplex(0, 1)));
    CHECK(character(CyclicElement(4, 2)).approx(UnitComplex(-1, 0)));
    CHECK(cyclic_exponent(compose(standard_cycle(5), standard_cycle(5))) == 2);
    CHECK(cyclic_exponent(Permutation::transposition(3, 1, 2)) == -1);
}

TEST_CASE("group axioms on random permutations") {
    test::Rng rng(7);
    for (int it = 0; it < 300; ++it) {
        int n = 1 + it % 6;
        auto p = test::random_permutation(rng, n), q = test::random_permutation(rng, n), r = test::random_permutation(rng, n);
        CHECK(compose(p, compose(q, r)) == compose(compose(p, q), r));
        CHECK(compose(p, inverse(p)).is_identity());
        CHECK(compose(inverse(p), p).is_identity());
        CHECK(inverse(compose(p, q)) == compose(inverse(q), inverse(p)));
        for (int x = 1; x <= n; ++x) CHECK(compose(p, q)(x) == p(q(x)));
        Permutation po = Permutation::identity(n);
        for (int k = 0; k < order(p); ++k) po = compose(po, p);
        CHECK(po.is_identity());
    }
}

}
