#include <doctest.h>

#include <tsf/cover.hpp>
#include <tsf/error.hpp>
#include <tsf/network_key.hpp>

#include "builders.hpp"
#include "gen.hpp"

using namespace tsf;

namespace {

Permutation tr(int n, int i, int j) { return Permutation::transposition(n, i, j); }

// marked circle k labelled (1 2), degree n
TopspinNetwork marked_unknot(int n) {
    auto net = test::unknot(tr(n, 1, 2));
    net.marked.insert("k");
    return net;
}

// marked circle k with an unmarked circle u passing twice under it
TopspinNetwork linked_under(bool mark_u) {
    TopspinNetwork net;
    net.n = 3;
    net.d.arcs = {{"k1", "k"}, {"u1", "u"}, {"u2", "u"}};
    net.d.edges = {{"k", {"k1"}}, {"u", {"u1", "u2"}}};
    net.d.crossings = {{"c1", "k1", "u1", "u2", 1}, {"c2", "k1", "u2", "u1", -1}};
    net.sigma = {{"k1", tr(3, 1, 2)}, {"u1", tr(3, 1, 3)}, {"u2", tr(3, 2, 3)}};
    net.rho = {{"k", Rep::spin(0.5)}, {"u", Rep::spin(1)}};
    net.marked = {"k"};
    if (mark_u) net.marked = {"u"};
    return net;
}

}  // namespace

TEST_SUITE("cover") {

TEST_CASE("product action of (1 2) and (1 2 3) has order 6") {
    auto p = product_action(tr(2, 1, 2), Permutation::cycle(3, {1, 2, 3}));
    CHECK(p.degree() == 6);
    CHECK(order(p) == 6);
    // (i, j) sits at (i - 1) * 3 + j
    CHECK(p(1) == 5);
    CHECK(p(6) == 1);
}

TEST_CASE("orders 2 and 3 compose to 6") {
    auto x = one_morphism(marked_unknot(2), marked_unknot(2));
    auto yl = disjoint_union(marked_unknot(3), test::unknot(Permutation::cycle(3, {1, 2, 3}), Rep::spin(1), "w"));
    auto y = one_morphism(yl, marked_unknot(3));
    REQUIRE(composable(x, y));
    auto xy = fibered_product(x, y);
    CHECK(xy.left_order() == 6);
    CHECK(xy.right_order() == 6);
    REQUIRE(xy.middles.size() == 1);
    const auto& mid = xy.middles[0];
    CHECK(mid.locus.n == 6);
    CHECK(mid.n_left == 2);
    CHECK(mid.n_right == 3);
    CHECK(mid.locus.sigma.at("x.ka") == product_action(tr(2, 1, 2), tr(3, 1, 2)));
    CHECK(mid.locus.sigma.at("y.b.wa") == product_action(Permutation::identity(2), Permutation::cycle(3, {1, 2, 3})));
    CHECK(mid.locus.rho.at("x.k") == Rep({0, 2}));
    CHECK(check_wirtinger(mid.locus).pass());
}

TEST_CASE("the trivial covering is a two-sided unit") {
    auto x = one_morphism(marked_unknot(2), test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3)));
    auto u = unit_one_morphism();
    CHECK(u.left_order() == 1);
    CHECK(fibered_product(x, u).identity_tag() == x.identity_tag());
    CHECK(fibered_product(u, x).identity_tag() == x.identity_tag());
    CHECK(fibered_product(u, u).is_unit());
}

TEST_CASE("boundary mismatch is rejected") {
    auto x = one_morphism(marked_unknot(2), marked_unknot(2));
    auto other = test::unknot(tr(2, 1, 2), Rep::spin(1));
    other.marked.insert("k");
    auto y = one_morphism(other, marked_unknot(2));
    CHECK_FALSE(composable(x, y));
    CHECK_THROWS_WITH_AS(fibered_product(x, y), doctest::Contains("boundary mismatch"), Error);
}

TEST_CASE("non-generic overlays are rejected") {
    SUBCASE("marked strand under an unmarked one") {
        auto bad = linked_under(true);
        CHECK_THROWS_WITH_AS(overlay(bad, bad), doctest::Contains("non-generic"), Error);
    }
    SUBCASE("unmarked edges on both sides of a shared vertex") {
        TopspinNetwork t = test::theta(2, tr(2, 1, 2), Permutation::identity(2), tr(2, 1, 2), Rep::spin(0.5));
        t.marked = {"e3"};
        // e3 alone is an open marked edge, both sides keep the unmarked e1 e2 at its endpoints
        CHECK_THROWS_WITH_AS(overlay(t, t), doctest::Contains("shared vertex"), Error);
    }
}

TEST_CASE("unmarked strands may pass under the marked part") {
    auto x_right = linked_under(false);
    auto y_left = marked_unknot(2);
    y_left.d.arcs = {{"k1", "k"}};
    y_left.d.edges = {{"k", {"k1"}}};
    y_left.sigma = {{"k1", tr(2, 1, 2)}};
    y_left.rho = {{"k", Rep::spin(0.5)}};
    auto m = overlay(x_right, y_left);
    CHECK(m.locus.n == 6);
    CHECK(validate(m.locus).ok());
    CHECK(check_wirtinger(m.locus).pass());
    CHECK(m.locus.sigma.at("x.u1") == product_action(tr(3, 1, 3), Permutation::identity(2)));
    CHECK(m.locus.sigma.at("x.k1") == product_action(tr(3, 1, 2), tr(2, 1, 2)));
}

TEST_CASE("random composable chains: orders multiply, middles are valid, association is irrelevant") {
    test::Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> ord(2, 3);
        std::vector<TopspinNetwork> cores;
        for (int k = 0; k < 4; ++k) cores.push_back(test::random_core(rng, 2));
        std::vector<OneMorphismKey> xs;
        for (int k = 0; k < 3; ++k)
            xs.push_back(one_morphism(test::random_datum(rng, cores[k], ord(rng)), test::random_datum(rng, cores[k + 1], ord(rng))));
        for (int k = 0; k < 2; ++k) REQUIRE(composable(xs[k], xs[k + 1]));
        auto ab = fibered_product(xs[0], xs[1]);
        CHECK(ab.left_order() == xs[0].left_order() * xs[1].left_order());
        CHECK(ab.right_order() == xs[0].right_order() * xs[1].right_order());
        CHECK(ab.middles[0].locus.n == xs[0].factors[0].right.n * xs[1].factors[0].left.n);
        auto l = fibered_product(ab, xs[2]);
        auto r = fibered_product(xs[0], fibered_product(xs[1], xs[2]));
        CHECK(l.digest() == r.digest());
        REQUIRE(l.middles.size() == r.middles.size());
        for (size_t k = 0; k < l.middles.size(); ++k) {
            CHECK(canonical_key(l.middles[k].locus) == canonical_key(r.middles[k].locus));
            CHECK(check_wirtinger(l.middles[k].locus).pass());
        }
    }
}

TEST_CASE("outer monodromy is exact for cyclic data and symbolic otherwise") {
    auto c3 = Permutation::cycle(3, {1, 2, 3});
    auto left = test::unknot(c3);
    left.marked.insert("k");
    auto x = one_morphism(left, left);
    auto y = one_morphism(left, left);
    auto m = left_outer(fibered_product(x, y));
    CHECK(m.exact);
    CHECK(m.order == 9);
    REQUIRE(m.labels.count("ka"));
    CHECK(cyclic_exponent(m.labels.at("ka")) == 3);

    auto t = one_morphism(marked_unknot(3), marked_unknot(3));
    auto s = left_outer(fibered_product(t, t));
    CHECK_FALSE(s.exact);
    CHECK(s.order == 9);
    CHECK(s.labels.empty());
}

TEST_CASE("weighted Euler characteristic") {
    auto cx = cylinder(test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3))).cx;
    long long chi = euler_characteristic(cx);
    CHECK(weighted_euler(cx, constant_multiplicity(cx, 1)) == chi);
    CHECK(weighted_euler(cx, constant_multiplicity(cx, 3)) == 3 * chi);
    CHECK(normalized_euler(cx, constant_multiplicity(cx, 3), 3) == Rational(chi));

    auto m = constant_multiplicity(cx, 2);
    m.faces.erase(m.faces.begin());
    CHECK_THROWS_WITH_AS(weighted_euler(cx, m), doctest::Contains("uncovered cell"), Error);
    CHECK_THROWS_AS(normalized_euler(cx, constant_multiplicity(cx, 4), 3), Error);
}

TEST_CASE("normalized Euler is additive over generic composites") {
    test::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = test::random_network(rng);
        auto b = test::random_network(rng);
        auto ca = cylinder(a).cx, cb = cylinder(b).cx;
        long long n = a.n, m = b.n;
        auto rand_mult = [&](const TwoComplex& cx, long long ord) {
            std::uniform_int_distribution<long long> pick(1, ord);
            MultiplicityAssignment w;
            for (const auto& f : cx.faces) w.faces[f.id] = pick(rng);
            for (const auto& e : cx.edges) w.edges[e.id] = pick(rng);
            for (const auto& v : cx.vertices) w.vertices[v.id] = pick(rng);
            return w;
        };
        auto wa = rand_mult(ca, n), wb = rand_mult(cb, m);
        auto u = disjoint_union(ca, cb);
        auto wu = fibered_multiplicity(wa, n, wb, m);
        CHECK(normalized_euler(u, wu, n * m) == normalized_euler(ca, wa, n) + normalized_euler(cb, wb, m));
    }
}

}
