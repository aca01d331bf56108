#include <doctest.h>

#include <tsf/error.hpp>
#include <tsf/diagram.hpp>

#include "builders.hpp"
#include "gen.hpp"

using namespace tsf;

namespace {

Permutation tr(int n, int i, int j) { return Permutation::transposition(n, i, j); }

// independent oracle: every assignment of transpositions, relations checked directly
std::vector<std::array<Permutation, 3>> trefoil_oracle() {
    std::vector<std::array<Permutation, 3>> out;
    auto ts = all_transpositions(3);
    for (const auto& x : ts)
        for (const auto& y : ts)
            for (const auto& z : ts) {
                // ci: a(i-1) over, ai in, a(i+1) out; transpositions are involutions so sign is irrelevant
                bool ok = compose(z, compose(x, z)) == y && compose(x, compose(y, x)) == z && compose(y, compose(z, y)) == x;
                if (ok) out.push_back({x, y, z});
            }
    return out;
}

bool surjective(const std::vector<Permutation>& labels, int n) {
    // transitive on {1..n}
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& p : labels)
            for (int y : {p(x), inverse(p)(x)})
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
    }
    for (int k = 1; k <= n; ++k)
        if (!seen[k]) return false;
    return true;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("trefoil enumeration matches the exhaustive oracle") {
    auto reps = enumerate_representations(test::trefoil_diagram(), 3, true);
    auto oracle = trefoil_oracle();
    REQUIRE(reps.size() == 9);
    CHECK(oracle.size() == 9);
    int surj = 0;
    for (const auto& r : reps) {
        std::vector<Permutation> ls = {r.at("a1"), r.at("a2"), r.at("a3")};
        bool found = false;
        for (const auto& o : oracle) found = found || (o[0] == ls[0] && o[1] == ls[1] && o[2] == ls[2]);
        CHECK(found);
        surj += surjective(ls, 3);
    }
    CHECK(surj == 6);
}

TEST_CASE("trefoil labels (12),(12),(13) fail at every crossing") {
    auto net = test::trefoil(3, tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 3));
    auto rep = check_wirtinger(net);
    CHECK_FALSE(rep.pass());
    CHECK(rep.failures.size() == 3);
    for (const auto& f : rep.failures) CHECK(f.kind == "crossing");
}

TEST_CASE("valid trefoil coloring passes") {
    auto net = test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3));
    CHECK(check_wirtinger(net).pass());
}

TEST_CASE("crossing relation convention by sign") {
    auto a = Permutation::cycle(3, {1, 2, 3});
    auto k = tr(3, 1, 2);
    CHECK(crossing_image(a, k, -1) == compose(k, compose(a, inverse(k))));
    CHECK(crossing_image(a, k, 1) == compose(inverse(k), compose(a, k)));
}

TEST_CASE("validation reports structural defects") {
    auto net = test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3));
    auto bad = net;
    bad.d.edges.push_back({"L", {"a1"}});
    bad.rho["L"] = Rep{};
    auto r = validate(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front() == "arc multiply owned: a1");
    CHECK_THROWS_AS(check_wirtinger(bad), Error);

    auto th = test::theta(3, tr(3, 1, 2), tr(3, 2, 3), compose(tr(3, 2, 3), tr(3, 1, 2)), Rep::spin(0.5));
    CHECK(validate(th).ok());
    CHECK(check_wirtinger(th).pass());
    th.iota["u"].codomain = {Rep::spin(1)};
    auto r2 = validate(th);
    REQUIRE_FALSE(r2.ok());
    CHECK(r2.violations.front() == "signature mismatch at vertex u");
}

TEST_CASE("vertex relation failure on theta") {
    auto th = test::theta(3, tr(3, 1, 2), tr(3, 2, 3), compose(tr(3, 1, 2), tr(3, 2, 3)), Rep::spin(0.5));
    auto rep = check_wirtinger(th);
    CHECK(rep.failures.size() == 2);
    CHECK(rep.failures[0].kind == "vertex");
}

TEST_CASE("enumeration agrees with check_wirtinger") {
    auto th = test::theta(3, tr(3, 1, 2), tr(3, 1, 2), tr(3, 1, 2), Rep::spin(0.5));
    auto all = enumerate_representations(th.d, 3, false);
    long count = 0;
    for (const auto& a : all_permutations(3))
        for (const auto& b : all_permutations(3)) {
            auto net = th;
            net.sigma = {{"x1", a}, {"x2", b}, {"x3", compose(b, a)}};
            if (check_wirtinger(net).pass()) ++count;
        }
    CHECK(static_cast<long>(all.size()) == count);
    CHECK(count == 36);
}

TEST_CASE("Euler characteristic and disjoint union") {
    auto th = test::theta(2, tr(2, 1, 2), tr(2, 1, 2), Permutation::identity(2), Rep::spin(0.5));
    CHECK(network_euler(th) == -1);
    auto k = test::unknot(tr(2, 1, 2));
    CHECK(network_euler(k) == 0);
    auto u = disjoint_union(th, k);
    CHECK(validate(u).ok());
    CHECK(network_euler(u) == -1);
    CHECK(u.d.edges.size() == 4);
}

TEST_CASE("cyclic relations and defect") {
    auto good = test::cyclic_theta(5, 1, 2, 3, false);
    CHECK(check_cyclic_relations(good).pass());
    CHECK(wirtinger_defect(good).is_identity());
    auto bad = test::cyclic_theta(5, 1, 2, 4, false);
    auto rep = check_cyclic_relations(bad);
    REQUIRE(rep.failures.size() == 2);
    CHECK(rep.failures[0].defect == 4);
    auto deg = test::cyclic_theta(5, 1, 2, 4, true);
    CHECK(validate(deg).ok());
}

TEST_CASE("random generator yields valid networks") {
    test::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        auto net = test::random_network(rng);
        CHECK(validate(net).ok());
        CHECK(check_wirtinger(net).pass());
        CHECK(net.n <= 5);
        CHECK(net.d.arcs.size() <= 8);
    }
}

}
