#include "tsf/cover.hpp"

#include <algorithm>

#include "tsf/error.hpp"
#include "tsf/network_key.hpp"

namespace tsf {

namespace {

TopspinNetwork extended(const TopspinNetwork& net, int degree) {
    if (degree == net.n) return net;
    TopspinNetwork out = net;
    out.n = degree;
    for (auto& [a, s] : out.sigma) s = extend_degree(s, degree);
    return out;
}

bool vertex_has(const TopspinNetwork& net, const DVertex& v, bool marked) {
    auto hit = [&](const Id& a) { return (net.marked.count(net.d.edge_of(a)) > 0) == marked; };
    return std::any_of(v.in_arcs.begin(), v.in_arcs.end(), hit) || std::any_of(v.out_arcs.begin(), v.out_arcs.end(), hit);
}

void check_generic(const TopspinNetwork& net, const char* side) {
    for (const auto& c : net.d.crossings) {
        bool under = net.marked.count(net.d.edge_of(c.under_in)) > 0;
        bool over = net.marked.count(net.d.edge_of(c.over)) > 0;
        if (under && !over)
            throw Error(std::string("non-generic overlay: marked strand passes under an unmarked strand at ") + side +
                        " crossing " + c.id);
    }
}

}  // namespace

long long OneMorphismKey::left_order() const {
    long long n = 1;
    for (const auto& f : factors) n *= f.left.n;
    return n;
}

long long OneMorphismKey::right_order() const {
    long long n = 1;
    for (const auto& f : factors) n *= f.right.n;
    return n;
}

std::string OneMorphismKey::identity_tag() const {
    if (factors.empty()) return "1M:unit";
    std::string s = "1M:";
    for (size_t k = 0; k < factors.size(); ++k) {
        if (k) s += " o ";
        s += "(" + canonical_key(factors[k].left).form + "|" + canonical_key(factors[k].right).form + ")";
    }
    return s;
}

OneMorphismKey one_morphism(const CoveringDatum& left, const CoveringDatum& right) {
    for (const auto* c : {&left, &right}) {
        auto v = validate(*c);
        if (!v.ok()) throw Error("covering datum: " + v.violations.front());
        auto w = check_wirtinger(*c);
        if (!w.pass()) throw Error("covering datum fails the " + w.failures.front().kind + " relation at " + w.failures.front().id);
    }
    OneMorphismKey x;
    x.factors.push_back({left, right});
    return x;
}

OneMorphismKey unit_one_morphism() { return {}; }

CanonicalKey boundary_key(const TopspinNetwork& net, int degree) { return marked_key(extended(net, degree)); }

CanonicalKey source_key(const OneMorphismKey& x, int degree) {
    if (x.is_unit()) throw Error("the unit has no fixed source");
    return boundary_key(x.factors.front().left, degree);
}

CanonicalKey target_key(const OneMorphismKey& x, int degree) {
    if (x.is_unit()) throw Error("the unit has no fixed target");
    return boundary_key(x.factors.back().right, degree);
}

bool composable(const OneMorphismKey& x, const OneMorphismKey& y) {
    if (x.is_unit() || y.is_unit()) return true;
    int n = std::max(x.factors.back().right.n, y.factors.front().left.n);
    return target_key(x, n) == source_key(y, n);
}

MiddleOverlay overlay(const TopspinNetwork& X, const TopspinNetwork& Y) {
    int n1 = X.n, n2 = Y.n, N = std::max(n1, n2);
    auto xe = extended(X, N), ye = extended(Y, N);
    check_generic(X, "left");
    check_generic(Y, "right");
    if (marked_key(xe) != marked_key(ye)) throw Error("boundary mismatch: target and source networks differ");
    // Y marked cells -> X marked cells
    NetworkIso iso = network_isomorphism(ye, xe, {true, true});
    std::map<Id, Id> y_of_x_vertex;
    for (const auto& [yv, xv] : iso.vertex) y_of_x_vertex[xv] = yv;
    for (const auto& [xv, yv] : y_of_x_vertex)
        if (vertex_has(X, *X.d.vertex(xv), false) && vertex_has(Y, *Y.d.vertex(yv), false))
            throw Error("non-generic overlay: both sides attach unmarked edges at shared vertex " + xv);
    auto marked_x = [&](const Id& a) { return X.marked.count(X.d.edge_of(a)) > 0; };
    auto marked_y = [&](const Id& a) { return Y.marked.count(Y.d.edge_of(a)) > 0; };
    auto rx = [](const Id& id) { return "x." + id; };
    auto ry = [&](const Id& a) { return marked_y(a) ? "x." + iso.arc.at(a) : "y." + a; };

    TopspinNetwork o;
    o.n = n1 * n2;
    auto idx = Permutation::identity(n1), idy = Permutation::identity(n2);
    std::map<Id, Id> y_of_x_arc;
    for (const auto& [ya, xa] : iso.arc) y_of_x_arc[xa] = ya;

    for (const auto& v : X.d.vertices) {
        DVertex w{rx(v.id), {}, {}};
        for (const auto& a : v.in_arcs) w.in_arcs.push_back(rx(a));
        for (const auto& a : v.out_arcs) w.out_arcs.push_back(rx(a));
        o.d.vertices.push_back(std::move(w));
    }
    for (const auto& a : X.d.arcs) {
        o.d.arcs.push_back({rx(a.id), rx(a.edge)});
        const auto& s = X.sigma.at(a.id);
        o.sigma[rx(a.id)] = marked_x(a.id) ? product_action(s, Y.sigma.at(y_of_x_arc.at(a.id))) : product_action(s, idy);
    }
    for (const auto& c : X.d.crossings) o.d.crossings.push_back({rx(c.id), rx(c.over), rx(c.under_in), rx(c.under_out), c.sign});
    for (const auto& e : X.d.edges) {
        DEdge f{rx(e.id), {}};
        for (const auto& a : e.arcs) f.arcs.push_back(rx(a));
        o.d.edges.push_back(std::move(f));
        if (X.marked.count(e.id)) {
            const Rep& a = X.rho.at(e.id);
            const Rep& b = Y.rho.at(std::find_if(iso.edge.begin(), iso.edge.end(), [&](const auto& p) { return p.second == e.id; })->first);
            o.rho[rx(e.id)] = tensor_decompose(std::min(a, b), std::max(a, b));
            o.marked.insert(rx(e.id));
        } else {
            o.rho[rx(e.id)] = X.rho.at(e.id);
        }
    }
    for (const auto& v : Y.d.vertices) {
        bool shared = vertex_has(Y, v, true);
        if (shared && !vertex_has(Y, v, false)) continue;
        DVertex w{shared ? rx(iso.vertex.at(v.id)) : "y." + v.id, {}, {}};
        for (const auto& a : v.in_arcs) w.in_arcs.push_back(ry(a));
        for (const auto& a : v.out_arcs) w.out_arcs.push_back(ry(a));
        if (shared)
            *o.d.vertex(w.id) = std::move(w);
        else
            o.d.vertices.push_back(std::move(w));
    }
    for (const auto& a : Y.d.arcs) {
        if (marked_y(a.id)) continue;
        o.d.arcs.push_back({"y." + a.id, "y." + a.edge});
        o.sigma["y." + a.id] = product_action(idx, Y.sigma.at(a.id));
    }
    for (const auto& c : Y.d.crossings) {
        if (marked_y(c.under_in)) continue;
        o.d.crossings.push_back({"y." + c.id, ry(c.over), ry(c.under_in), ry(c.under_out), c.sign});
    }
    for (const auto& e : Y.d.edges) {
        if (Y.marked.count(e.id)) continue;
        DEdge f{"y." + e.id, {}};
        for (const auto& a : e.arcs) f.arcs.push_back("y." + a);
        o.d.edges.push_back(std::move(f));
        o.rho["y." + e.id] = Y.rho.at(e.id);
    }

    // intertwiners; shared vertices take the tensor of both sides ordered by key
    auto kx = canonical_key(X), ky = canonical_key(Y);
    bool x_first = !(ky < kx);
    for (const auto& v : X.d.vertices) {
        auto it = y_of_x_vertex.find(v.id);
        if (it == y_of_x_vertex.end()) {
            o.iota[rx(v.id)] = X.iota.at(v.id);
            continue;
        }
        const auto& ix = X.iota.at(v.id);
        const auto& iy = Y.iota.at(it->second);
        Intertwiner t;
        t.label = x_first ? ix.label + "(x)" + iy.label : iy.label + "(x)" + ix.label;
        auto [ins, outs] = port_reps(o, rx(v.id));
        t.domain = ins;
        t.codomain = outs;
        t.is_identity = ix.is_identity && iy.is_identity && ins == outs;
        o.iota[rx(v.id)] = std::move(t);
    }
    for (const auto& v : Y.d.vertices)
        if (!vertex_has(Y, v, true)) o.iota["y." + v.id] = Y.iota.at(v.id);

    auto rep = validate(o);
    if (!rep.ok()) throw Error("overlay produced an invalid network: " + rep.violations.front());
    auto w = check_wirtinger(o);
    if (!w.pass()) throw Error("overlay fails the " + w.failures.front().kind + " relation at " + w.failures.front().id);
    return {std::move(o), n1, n2};
}

OneMorphismKey fibered_product(const OneMorphismKey& x, const OneMorphismKey& y) {
    if (x.is_unit()) return y;
    if (y.is_unit()) return x;
    OneMorphismKey out = x;
    out.middles.push_back(overlay(x.factors.back().right, y.factors.front().left));
    out.factors.insert(out.factors.end(), y.factors.begin(), y.factors.end());
    out.middles.insert(out.middles.end(), y.middles.begin(), y.middles.end());
    return out;
}

bool is_cyclic_datum(const CoveringDatum& c) {
    return std::all_of(c.sigma.begin(), c.sigma.end(), [](const auto& p) { return cyclic_exponent(p.second) >= 0; });
}

namespace {

OuterMonodromy outer(const OneMorphismKey& x, bool left) {
    OuterMonodromy m;
    m.order = left ? x.left_order() : x.right_order();
    if (x.is_unit()) {
        m.exact = true;
        return m;
    }
    m.exact = std::all_of(x.factors.begin(), x.factors.end(),
                          [](const CoverFactor& f) { return is_cyclic_datum(f.left) && is_cyclic_datum(f.right); });
    if (!m.exact) return m;
    const auto& base = left ? x.factors.front().left : x.factors.back().right;
    int rest = static_cast<int>(m.order / base.n);
    // the outer sheet index is the major index: k in Z/n lifts to k*rest in Z/(n*rest)
    for (const auto& [a, s] : base.sigma) m.labels[a] = product_action(s, Permutation::identity(rest));
    return m;
}

}  // namespace

OuterMonodromy left_outer(const OneMorphismKey& x) { return outer(x, true); }
OuterMonodromy right_outer(const OneMorphismKey& x) { return outer(x, false); }

MultiplicityAssignment constant_multiplicity(const TwoComplex& cx, long long n) {
    MultiplicityAssignment m;
    for (const auto& f : cx.faces) m.faces[f.id] = n;
    for (const auto& e : cx.edges) m.edges[e.id] = n;
    for (const auto& v : cx.vertices) m.vertices[v.id] = n;
    return m;
}

long long weighted_euler(const TwoComplex& cx, const MultiplicityAssignment& mult) {
    auto get = [](const std::map<Id, long long>& m, const Id& id, const char* kind) {
        auto it = m.find(id);
        if (it == m.end()) throw Error(std::string("uncovered cell: ") + kind + " " + id);
        if (it->second < 1) throw Error(std::string("multiplicity must be positive at ") + kind + " " + id);
        return it->second;
    };
    long long chi = 0;
    for (const auto& f : cx.faces) chi += get(mult.faces, f.id, "face");
    for (const auto& e : cx.edges) chi -= get(mult.edges, e.id, "edge");
    for (const auto& v : cx.vertices) chi += get(mult.vertices, v.id, "vertex");
    return chi;
}

Rational normalized_euler(const TwoComplex& cx, const MultiplicityAssignment& mult, long long n) {
    if (n < 1) throw Error("covering order must be positive");
    for (const auto* m : {&mult.faces, &mult.edges, &mult.vertices})
        for (const auto& [id, k] : *m)
            if (k > n) throw Error("multiplicity " + std::to_string(k) + " at " + id + " exceeds the order " + std::to_string(n));
    return Rational(weighted_euler(cx, mult), n);
}

TwoComplex disjoint_union(const TwoComplex& a, const TwoComplex& b) {
    TwoComplex out;
    auto add = [&](const TwoComplex& src, const std::string& pre) {
        auto r = [&](const Id& id) { return pre + id; };
        for (auto v : src.vertices) {
            v.id = r(v.id);
            out.vertices.push_back(v);
        }
        for (auto e : src.edges) {
            e.id = r(e.id);
            if (e.src) e.src = r(*e.src);
            if (e.dst) e.dst = r(*e.dst);
            for (auto& i : e.in) i.face = r(i.face);
            for (auto& i : e.out) i.face = r(i.face);
            out.edges.push_back(e);
        }
        for (auto f : src.faces) {
            f.id = r(f.id);
            for (auto& be : f.boundary) {
                be.edge = r(be.edge);
                be.strand = r(be.strand);
            }
            out.faces.push_back(f);
        }
        for (auto s : src.strands) out.strands.push_back({r(s.id), r(s.face)});
        for (auto c : src.crossings) out.crossings.push_back({r(c.id), r(c.over), r(c.under_in), r(c.under_out), c.sign});
    };
    add(a, "a.");
    add(b, "b.");
    return out;
}

MultiplicityAssignment fibered_multiplicity(const MultiplicityAssignment& a, long long n_a,
                                            const MultiplicityAssignment& b, long long n_b) {
    MultiplicityAssignment out;
    auto put = [](std::map<Id, long long>& dst, const std::map<Id, long long>& src, const std::string& pre, long long k) {
        for (const auto& [id, m] : src) dst[pre + id] = m * k;
    };
    put(out.faces, a.faces, "a.", n_b);
    put(out.edges, a.edges, "a.", n_b);
    put(out.vertices, a.vertices, "a.", n_b);
    put(out.faces, b.faces, "b.", n_a);
    put(out.edges, b.edges, "b.", n_a);
    put(out.vertices, b.vertices, "b.", n_a);
    return out;
}

}  // namespace tsf
