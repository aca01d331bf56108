#include <doctest.h>

#include <algorithm>

#include <tsf/canon.hpp>
#include <tsf/network_key.hpp>

#include "builders.hpp"
#include "gen.hpp"

using namespace tsf;

namespace {

Permutation tr(int n, int i, int j) { return Permutation::transposition(n, i, j); }

// renames every cell and shuffles all tables
TopspinNetwork scramble(const TopspinNetwork& net, test::Rng& rng) {
    TopspinNetwork out;
    out.n = net.n;
    auto rn = [](const std::string& p, const Id& id) { return p + "_" + id + "_z"; };
    for (auto v : net.d.vertices) {
        for (auto& a : v.in_arcs) a = rn("A", a);
        for (auto& a : v.out_arcs) a = rn("A", a);
        out.d.vertices.push_back({rn("V", v.id), v.in_arcs, v.out_arcs});
    }
    for (const auto& a : net.d.arcs) out.d.arcs.push_back({rn("A", a.id), rn("E", a.edge)});
    for (const auto& c : net.d.crossings)
        out.d.crossings.push_back({rn("X", c.id), rn("A", c.over), rn("A", c.under_in), rn("A", c.under_out), c.sign});
    for (auto e : net.d.edges) {
        for (auto& a : e.arcs) a = rn("A", a);
        out.d.edges.push_back({rn("E", e.id), e.arcs});
    }
    for (const auto& [k, v] : net.sigma) out.sigma[rn("A", k)] = v;
    for (const auto& [k, v] : net.rho) out.rho[rn("E", k)] = v;
    for (const auto& [k, v] : net.iota) out.iota[rn("V", k)] = v;
    for (const auto& m : net.marked) out.marked.insert(rn("E", m));
    std::shuffle(out.d.vertices.begin(), out.d.vertices.end(), rng);
    std::shuffle(out.d.arcs.begin(), out.d.arcs.end(), rng);
    std::shuffle(out.d.crossings.begin(), out.d.crossings.end(), rng);
    std::shuffle(out.d.edges.begin(), out.d.edges.end(), rng);
    return out;
}

}  // namespace

TEST_SUITE("keys") {

TEST_CASE("canonical form is invariant under relabeling") {
    test::Rng rng(3);
    for (int i = 0; i < 150; ++i) {
        auto net = test::random_network(rng);
        auto s = scramble(net, rng);
        CHECK(raw_key(net) == raw_key(s));
        CHECK(canonical_key(net) == canonical_key(s));
        auto iso = network_isomorphism(net, s);
        for (const auto& a : net.d.arcs) CHECK(s.sigma.at(iso.arc.at(a.id)) == net.sigma.at(a.id));
        for (const auto& c : net.d.crossings) {
            const auto* x = s.d.crossing(iso.crossing.at(c.id));
            REQUIRE(x);
            CHECK(x->over == iso.arc.at(c.over));
            CHECK(x->under_in == iso.arc.at(c.under_in));
        }
    }
}

TEST_CASE("keys separate label changes") {
    auto a = test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3));
    auto b = test::trefoil(3, tr(3, 1, 2), tr(3, 1, 3), tr(3, 2, 3));
    auto c = a;
    c.d.crossings[0].sign = -1;
    CHECK(shape_key(a) == shape_key(b));
    CHECK(raw_key(a) != raw_key(c));
    auto d = a;
    d.rho["K"] = Rep::spin(1);
    CHECK(canonical_key(a) != canonical_key(d));
    CHECK(canonical_key(a).digest().size() == 16);
}

TEST_CASE("rotating trefoil labels gives an isomorphic network") {
    auto a = test::trefoil(3, tr(3, 1, 2), tr(3, 2, 3), tr(3, 1, 3));
    auto b = test::trefoil(3, tr(3, 2, 3), tr(3, 1, 3), tr(3, 1, 2));
    CHECK(canonical_key(a) == canonical_key(b));
}

TEST_CASE("valence-2 identity vertices are normalized away") {
    auto k = test::unknot(tr(2, 1, 2), Rep::spin(0.5));
    TopspinNetwork w = k;
    w.d.vertices = {{"p", {"ka"}, {"ka"}}};
    w.iota["p"] = Intertwiner{"id", true, {Rep::spin(0.5)}, {Rep::spin(0.5)}};
    CHECK(validate(w).ok());
    CHECK(raw_key(w) != raw_key(k));
    CHECK(canonical_key(w) == canonical_key(k));
    w.iota["p"] = Intertwiner{"q", false, {Rep::spin(0.5)}, {Rep::spin(0.5)}};
    CHECK(canonical_key(w) != canonical_key(k));
}

TEST_CASE("marked key only sees the marked subgraph") {
    auto th = test::theta(2, tr(2, 1, 2), tr(2, 1, 2), Permutation::identity(2), Rep::spin(0.5));
    auto a = th, b = th;
    a.marked = {"e1"};
    b.marked = {"e2"};
    b.iota["u"].label = "other";
    CHECK(marked_key(a) == marked_key(b));
    CHECK(canonical_key(a) != canonical_key(b));
}

TEST_CASE("fnv1a reference values") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}
