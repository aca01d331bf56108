#include "tsf/moves.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "tsf/error.hpp"

namespace tsf {

namespace {

constexpr const char* kNames[] = {"V1",         "V2",         "C1",         "C2",        "V1_inverse",
                                  "V2_inverse", "C1_inverse", "C2_inverse", "Stabilize", "Destabilize"};

[[noreturn]] void mismatch(const MoveSpec& m, const std::string& why) {
    throw Error(to_string(m.kind) + " pattern mismatch: " + why);
}

[[noreturn]] void precondition(const MoveSpec& m, const std::string& why) {
    throw Error(to_string(m.kind) + " precondition violated: " + why);
}

Id fresh(const std::set<Id>& used, const Id& base) {
    if (!used.count(base)) return base;
    for (int k = 1;; ++k) {
        Id c = base + "." + std::to_string(k);
        if (!used.count(c)) return c;
    }
}

std::set<Id> arc_ids(const PlanarGraphDiagram& d) {
    std::set<Id> s;
    for (const auto& a : d.arcs) s.insert(a.id);
    return s;
}

std::set<Id> edge_ids(const PlanarGraphDiagram& d) {
    std::set<Id> s;
    for (const auto& e : d.edges) s.insert(e.id);
    return s;
}

std::set<Id> vertex_ids(const PlanarGraphDiagram& d) {
    std::set<Id> s;
    for (const auto& v : d.vertices) s.insert(v.id);
    return s;
}

std::set<Id> crossing_ids(const PlanarGraphDiagram& d) {
    std::set<Id> s;
    for (const auto& c : d.crossings) s.insert(c.id);
    return s;
}

std::map<Id, Id> owners(const PlanarGraphDiagram& d) {
    std::map<Id, Id> o;
    for (const auto& e : d.edges)
        for (const auto& a : e.arcs) o[a] = e.id;
    return o;
}

bool is_over(const PlanarGraphDiagram& d, const Id& arc) {
    return std::any_of(d.crossings.begin(), d.crossings.end(), [&](const DCrossing& c) { return c.over == arc; });
}

bool in_port(const PlanarGraphDiagram& d, const Id& arc) {
    for (const auto& v : d.vertices)
        if (std::find(v.in_arcs.begin(), v.in_arcs.end(), arc) != v.in_arcs.end()) return true;
    return false;
}

bool has_head(const PlanarGraphDiagram& d, const Id& arc) { return d.crossing_ending(arc) || in_port(d, arc); }

void replace_arc_refs(PlanarGraphDiagram& d, const Id& from, const Id& to) {
    for (auto& v : d.vertices) {
        std::replace(v.in_arcs.begin(), v.in_arcs.end(), from, to);
        std::replace(v.out_arcs.begin(), v.out_arcs.end(), from, to);
    }
    for (auto& c : d.crossings) {
        if (c.over == from) c.over = to;
        if (c.under_in == from) c.under_in = to;
        if (c.under_out == from) c.under_out = to;
    }
}

void erase_arc(TopspinNetwork& net, const Id& a) {
    auto& arcs = net.d.arcs;
    arcs.erase(std::remove_if(arcs.begin(), arcs.end(), [&](const DArc& x) { return x.id == a; }), arcs.end());
    net.sigma.erase(a);
}

// Recomputes edge chains after arcs or crossings were rewired. A chain keeps the id of the
// old edge of its first arc when that id is still free.
void rebuild_edges(TopspinNetwork& net, const std::map<Id, Id>& owner) {
    auto& d = net.d;
    std::map<Id, Rep> old_rho = net.rho;
    std::set<Id> old_marked = net.marked;
    std::set<Id> used = edge_ids(d);
    std::map<Id, Id> succ;
    for (const auto& c : d.crossings) succ[c.under_in] = c.under_out;

    std::vector<std::vector<Id>> chains;
    std::set<Id> seen;
    auto visit = [&](const Id& a) {
        if (!seen.insert(a).second) throw Error("move produced a malformed strand through " + a);
    };
    for (const auto& v : d.vertices)
        for (const auto& a : v.out_arcs) {
            std::vector<Id> ch{a};
            visit(a);
            Id cur = a;
            while (succ.count(cur)) {
                cur = succ.at(cur);
                visit(cur);
                ch.push_back(cur);
            }
            chains.push_back(ch);
        }
    for (const auto& ar : d.arcs) {
        if (seen.count(ar.id)) continue;
        std::vector<Id> ch{ar.id};
        visit(ar.id);
        Id cur = ar.id;
        while (succ.count(cur) && succ.at(cur) != ar.id) {
            cur = succ.at(cur);
            visit(cur);
            ch.push_back(cur);
        }
        chains.push_back(ch);
    }

    std::vector<DEdge> edges;
    std::set<Id> taken;
    net.rho.clear();
    net.marked.clear();
    for (const auto& ch : chains) {
        Id id;
        for (const auto& a : ch) {
            const Id& o = owner.at(a);
            if (!taken.count(o)) {
                id = o;
                break;
            }
        }
        if (id.empty()) {
            std::set<Id> all = used;
            all.insert(taken.begin(), taken.end());
            id = fresh(all, owner.at(ch.front()));
        }
        taken.insert(id);
        const Id& from = owner.at(ch.front());
        net.rho[id] = old_rho.at(from);
        if (old_marked.count(from)) net.marked.insert(id);
        edges.push_back({id, ch});
    }
    d.edges = edges;
    for (auto& a : d.arcs)
        for (const auto& e : d.edges)
            if (std::find(e.arcs.begin(), e.arcs.end(), a.id) != e.arcs.end()) a.edge = e.id;
}

void need_site(const MoveSpec& m, size_t k) {
    if (m.site.size() != k) mismatch(m, "expected " + std::to_string(k) + " site ids, got " + std::to_string(m.site.size()));
}

bool transposition_label(const Permutation& p) { return is_transposition(p); }

// disjoint transpositions commute and differ
bool disjoint(const Permutation& a, const Permutation& b) { return a != b && compose(a, b) == compose(b, a); }

MoveResult do_v1(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 1);
    TopspinNetwork net = in;
    auto& d = net.d;
    const Id e = m.site[0];
    const DEdge* ed = d.edge(e);
    if (!ed) mismatch(m, "unknown edge " + e);
    auto src = d.edge_src(e), dst = d.edge_dst(e);
    if (!src || !dst) mismatch(m, "edge " + e + " is not attached to vertices");
    if (ed->arcs.size() != 1) mismatch(m, "edge " + e + " passes under a crossing");
    const Id a = ed->arcs[0];
    if (is_over(d, a)) mismatch(m, "edge " + e + " passes over a crossing");
    if (m.perms.size() != 2 || m.reps.size() != 2) precondition(m, "needs sigma1, sigma2 and rho1, rho2");
    const Permutation& s1 = m.perms[0];
    const Permutation& s2 = m.perms[1];
    if (s1.degree() != net.n || s2.degree() != net.n) precondition(m, "factor degree differs from n");
    if (compose(s1, s2) != net.sigma.at(a))
        precondition(m, "sigma1 sigma2 = " + compose(s1, s2).str() + " differs from sigma = " + net.sigma.at(a).str());
    if (tensor_decompose(m.reps[0], m.reps[1]) != net.rho.at(e))
        precondition(m, "rho1 (x) rho2 = " + tensor_decompose(m.reps[0], m.reps[1]).str() + " differs from rho = " +
                            net.rho.at(e).str());

    Id e2 = fresh(edge_ids(d), e + "'");
    Id a2 = fresh(arc_ids(d), a + "'");
    d.arcs.push_back({a2, e2});
    auto pos = std::find_if(d.edges.begin(), d.edges.end(), [&](const DEdge& x) { return x.id == e; });
    d.edges.insert(pos + 1, DEdge{e2, {a2}});
    net.sigma[a] = s1;
    net.sigma[a2] = s2;
    net.rho[e] = m.reps[0];
    net.rho[e2] = m.reps[1];
    if (net.marked.count(e)) net.marked.insert(e2);
    DVertex* t = d.vertex(*dst);
    t->in_arcs.insert(std::find(t->in_arcs.begin(), t->in_arcs.end(), a) + 1, a2);
    DVertex* s = d.vertex(*src);
    s->out_arcs.insert(std::find(s->out_arcs.begin(), s->out_arcs.end(), a), a2);

    MoveSpec inv{MoveKind::V1_inverse, {e, e2}, {}, {}, {}, {}, {}};
    return {net, inv};
}

MoveResult do_v1_inverse(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 2);
    TopspinNetwork net = in;
    auto& d = net.d;
    const Id e1 = m.site[0], e2 = m.site[1];
    if (e1 == e2) mismatch(m, "the two edges coincide");
    const DEdge* x = d.edge(e1);
    const DEdge* y = d.edge(e2);
    if (!x || !y) mismatch(m, "unknown edge");
    if (x->arcs.size() != 1 || y->arcs.size() != 1) mismatch(m, "parallel edges must not pass under crossings");
    const Id a1 = x->arcs[0], a2 = y->arcs[0];
    if (is_over(d, a1) || is_over(d, a2)) mismatch(m, "parallel edges must not pass over crossings");
    auto s1 = d.edge_src(e1), t1 = d.edge_dst(e1), s2 = d.edge_src(e2), t2 = d.edge_dst(e2);
    if (!s1 || !t1 || !s2 || !t2 || *s1 != *s2 || *t1 != *t2) mismatch(m, "edges are not parallel");
    DVertex* t = d.vertex(*t1);
    auto it = std::find(t->in_arcs.begin(), t->in_arcs.end(), a1);
    if (it + 1 == t->in_arcs.end() || *(it + 1) != a2) mismatch(m, "edges are not adjacent at the head vertex");
    DVertex* s = d.vertex(*s1);
    auto jt = std::find(s->out_arcs.begin(), s->out_arcs.end(), a2);
    if (jt + 1 == s->out_arcs.end() || *(jt + 1) != a1) mismatch(m, "edges are not adjacent at the tail vertex");
    if (net.marked.count(e1) != net.marked.count(e2)) precondition(m, "marking differs");

    Permutation p1 = net.sigma.at(a1), p2 = net.sigma.at(a2);
    Rep r1 = net.rho.at(e1), r2 = net.rho.at(e2);
    t->in_arcs.erase(std::find(t->in_arcs.begin(), t->in_arcs.end(), a2));
    s->out_arcs.erase(std::find(s->out_arcs.begin(), s->out_arcs.end(), a2));
    erase_arc(net, a2);
    d.edges.erase(std::find_if(d.edges.begin(), d.edges.end(), [&](const DEdge& z) { return z.id == e2; }));
    net.rho.erase(e2);
    net.marked.erase(e2);
    net.sigma[a1] = compose(p1, p2);
    net.rho[e1] = tensor_decompose(r1, r2);

    MoveSpec inv{MoveKind::V1, {e1}, {p1, p2}, {r1, r2}, {}, {}, {}};
    return {net, inv};
}

MoveResult do_v2(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 1);
    TopspinNetwork net = in;
    auto& d = net.d;
    const Id v = m.site[0];
    const DVertex* vx = d.vertex(v);
    if (!vx) mismatch(m, "unknown vertex " + v);
    if (vx->in_arcs.size() != 2 || vx->out_arcs.size() != 2) mismatch(m, "vertex " + v + " is not 2-in 2-out");
    const Id i0 = vx->in_arcs[0], i1 = vx->in_arcs[1], o0 = vx->out_arcs[0], o1 = vx->out_arcs[1];
    if (i0 == o0 || i1 == o1) mismatch(m, "a loop joins the two strands at " + v);
    const Intertwiner& io = net.iota.at(v);
    if (!io.is_identity) precondition(m, "intertwiner at " + v + " is not the identity");
    if (net.sigma.at(i0) != net.sigma.at(o1) || net.sigma.at(i1) != net.sigma.at(o0))
        precondition(m, "strand labels do not pass through " + v);
    auto own = owners(d);
    if (net.rho.at(own.at(i0)) != net.rho.at(own.at(o1)) || net.rho.at(own.at(i1)) != net.rho.at(own.at(o0)))
        precondition(m, "edge reps do not match pairwise at " + v);
    if (net.marked.count(own.at(i0)) != net.marked.count(own.at(o1)) ||
        net.marked.count(own.at(i1)) != net.marked.count(own.at(o0)))
        precondition(m, "marking does not match pairwise at " + v);

    std::vector<Id> moved;
    for (const auto& c : d.crossings)
        if ((c.over == o1 && o1 != i0) || (c.over == o0 && o0 != i1)) moved.push_back(c.id);
    MoveSpec inv{MoveKind::V2_inverse, {i0, i1}, {}, {}, moved, io, {}};

    d.vertices.erase(std::find_if(d.vertices.begin(), d.vertices.end(), [&](const DVertex& z) { return z.id == v; }));
    net.iota.erase(v);
    for (auto [a, b] : {std::pair{i0, o1}, std::pair{i1, o0}}) {
        if (a == b) continue;
        replace_arc_refs(d, b, a);
        erase_arc(net, b);
    }
    rebuild_edges(net, own);
    return {net, inv};
}

// Cuts arc x where the new vertex sits; x keeps its tail, the returned arc carries its head.
Id split_arc(TopspinNetwork& net, const Id& x) {
    auto& d = net.d;
    if (!has_head(d, x)) return x;
    Id x2 = fresh(arc_ids(d), x + "'");
    d.arcs.push_back({x2, d.arc(x)->edge});
    net.sigma[x2] = net.sigma.at(x);
    for (auto& c : d.crossings)
        if (c.under_in == x) {
            c.under_in = x2;
            return x2;
        }
    for (auto& v : d.vertices) std::replace(v.in_arcs.begin(), v.in_arcs.end(), x, x2);
    return x2;
}

MoveResult do_v2_inverse(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 2);
    TopspinNetwork net = in;
    auto& d = net.d;
    const Id x = m.site[0], y = m.site[1];
    if (x == y) mismatch(m, "the two arcs coincide");
    if (!d.arc(x) || !d.arc(y)) mismatch(m, "unknown arc");
    for (const auto& c : m.moved) {
        const DCrossing* cr = d.crossing(c);
        if (!cr || (cr->over != x && cr->over != y)) mismatch(m, "moved crossing " + c + " is not over a split arc");
    }
    auto own = owners(d);
    Rep rx = net.rho.at(own.at(x)), ry = net.rho.at(own.at(y));
    Id x2 = split_arc(net, x);
    Id y2 = split_arc(net, y);
    own[x2] = own.at(x);
    own[y2] = own.at(y);
    for (const auto& c : m.moved) {
        DCrossing* cr = d.crossing(c);
        cr->over = cr->over == x ? x2 : y2;
    }
    Id w = fresh(vertex_ids(d), "w");
    d.vertices.push_back({w, {x, y}, {y2, x2}});
    net.iota[w] = m.iota ? *m.iota : Intertwiner{"id", true, {rx, ry}, {rx, ry}};
    rebuild_edges(net, own);
    MoveSpec inv{MoveKind::V2, {w}, {}, {}, {}, {}, {}};
    return {net, inv};
}

void check_c1_labels(const MoveSpec& m, const Permutation& a, const Permutation& t, const Permutation& b) {
    if (!transposition_label(a) || !transposition_label(t) || !transposition_label(b))
        precondition(m, "C1 labels must be transpositions");
    if (a == t || a == b || t == b) precondition(m, "C1 labels must be three distinct transpositions");
}

MoveResult do_c1(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 1);
    TopspinNetwork net = in;
    auto& d = net.d;
    const DCrossing* cp = d.crossing(m.site[0]);
    if (!cp) mismatch(m, "unknown crossing " + m.site[0]);
    const DCrossing c = *cp;
    const Id a_in = c.under_in, a_out = c.under_out, o = c.over;
    // sigma_(i k), sigma_(j k), sigma_(i j)
    const Permutation s_ik = net.sigma.at(a_in), s_jk = net.sigma.at(o), s_ij = net.sigma.at(a_out);
    check_c1_labels(m, s_ik, s_jk, s_ij);
    if (s_ij != compose(inverse(s_jk), compose(s_ik, s_jk))) precondition(m, "crossing relation fails before the move");
    auto own = owners(d);
    if (net.rho.at(own.at(a_in)) != net.rho.at(own.at(o))) precondition(m, "crossing edges carry different reps");
    if (net.marked.count(own.at(a_in)) != net.marked.count(own.at(o))) precondition(m, "marking differs");
    for (const auto& x : m.moved) {
        const DCrossing* cr = d.crossing(x);
        if (!cr || cr->over != o || x == c.id) mismatch(m, "moved crossing " + x + " is not over the over arc");
    }
    int s1 = m.signs.size() > 0 ? m.signs[0] : c.sign;
    int s2 = m.signs.size() > 1 ? m.signs[1] : c.sign;

    Id o_post = o;
    if (has_head(d, o)) {
        o_post = fresh(arc_ids(d), o + "'");
        d.arcs.push_back({o_post, d.arc(o)->edge});
        net.sigma[o_post] = s_jk;
        own[o_post] = own.at(o);
        bool done = false;
        for (auto& x : d.crossings)
            if (x.under_in == o) {
                x.under_in = o_post;
                done = true;
                break;
            }
        if (!done)
            for (auto& v : d.vertices) std::replace(v.in_arcs.begin(), v.in_arcs.end(), o, o_post);
        for (const auto& x : m.moved) d.crossing(x)->over = o_post;
    }
    Id x2 = fresh(crossing_ids(d), c.id + "'");
    DCrossing* x1 = d.crossing(c.id);
    *x1 = DCrossing{c.id, a_out, a_in, o_post, s1};
    d.crossings.push_back(DCrossing{x2, a_in, o, a_out, s2});
    rebuild_edges(net, own);

    // after the move: sigma_(j k) = sigma_(i j) sigma_(i k) sigma_(i j)^-1 and sigma_(i j) = sigma_(i k)^-1 sigma_(j k) sigma_(i k)
    if (s_jk != compose(s_ij, compose(s_ik, inverse(s_ij))) || s_ij != compose(inverse(s_ik), compose(s_jk, s_ik)))
        throw Error("C1 relation bookkeeping failed after the move");
    MoveSpec inv{MoveKind::C1_inverse, {c.id, x2}, {}, {}, {}, {}, {c.sign}};
    return {net, inv};
}

MoveResult do_c1_inverse(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 2);
    TopspinNetwork net = in;
    auto& d = net.d;
    const DCrossing* p1 = d.crossing(m.site[0]);
    const DCrossing* p2 = d.crossing(m.site[1]);
    if (!p1 || !p2 || p1 == p2) mismatch(m, "needs two distinct crossings");
    const DCrossing x1 = *p1, x2 = *p2;
    const Id a_in = x1.under_in, a_out = x1.over, o_post = x1.under_out, o_pre = x2.under_in;
    if (x2.over != a_in || x2.under_out != a_out) mismatch(m, "crossings do not form a twist");
    if (a_in == a_out || a_in == o_pre || a_out == o_post) mismatch(m, "twist arcs are not distinct");
    const Permutation s_ik = net.sigma.at(a_in), s_ij = net.sigma.at(a_out), s_jk = net.sigma.at(o_pre);
    check_c1_labels(m, s_ik, s_jk, s_ij);
    if (net.sigma.at(o_post) != s_jk) precondition(m, "the two over pieces carry different labels");
    if (s_jk != compose(s_ij, compose(s_ik, inverse(s_ij))) || s_ij != compose(inverse(s_ik), compose(s_jk, s_ik)))
        precondition(m, "twist relations fail before the move");
    auto own = owners(d);
    if (net.rho.at(own.at(a_in)) != net.rho.at(own.at(a_out))) precondition(m, "twist edges carry different reps");
    if (net.marked.count(own.at(a_in)) != net.marked.count(own.at(a_out))) precondition(m, "marking differs");

    std::vector<Id> moved;
    if (o_post != o_pre)
        for (const auto& c : d.crossings)
            if (c.over == o_post && c.id != x1.id && c.id != x2.id) moved.push_back(c.id);
    MoveSpec inv{MoveKind::C1, {x1.id}, {}, {}, moved, {}, {x1.sign, x2.sign}};

    int sign = m.signs.empty() ? x1.sign : m.signs[0];
    d.crossings.erase(std::find_if(d.crossings.begin(), d.crossings.end(), [&](const DCrossing& z) { return z.id == x2.id; }));
    *d.crossing(x1.id) = DCrossing{x1.id, o_pre, a_in, a_out, sign};
    if (o_post != o_pre) {
        replace_arc_refs(d, o_post, o_pre);
        erase_arc(net, o_post);
    }
    rebuild_edges(net, own);
    return {net, inv};
}

MoveResult do_c2(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 1);
    TopspinNetwork net = in;
    DCrossing* c = net.d.crossing(m.site[0]);
    if (!c) mismatch(m, "unknown crossing " + m.site[0]);
    const Permutation& u_in = net.sigma.at(c->under_in);
    const Permutation& u_out = net.sigma.at(c->under_out);
    const Permutation& o = net.sigma.at(c->over);
    if (u_in != u_out || !is_transposition(u_in)) precondition(m, "under strands must share one transposition label");
    if (!is_transposition(o) || !disjoint(u_in, o)) precondition(m, "over strand must carry a disjoint transposition");
    c->sign = -c->sign;
    MoveKind back = m.kind == MoveKind::C2 ? MoveKind::C2_inverse : MoveKind::C2;
    return {net, MoveSpec{back, m.site, {}, {}, {}, {}, {}}};
}

Id stabilization_edge(const TopspinNetwork& net) { return fresh(edge_ids(net.d), "s" + std::to_string(net.n + 1)); }

MoveResult do_stabilize(const TopspinNetwork& in, const MoveSpec& m) {
    if (!m.site.empty()) mismatch(m, "Stabilize takes no site");
    TopspinNetwork net = in;
    int n = net.n + 1;
    for (auto& [_, p] : net.sigma) p = extend_degree(p, n);
    Id e = stabilization_edge(in);
    Id a = fresh(arc_ids(net.d), e + "a");
    net.d.arcs.push_back({a, e});
    net.d.edges.push_back({e, {a}});
    net.sigma[a] = Permutation::transposition(n, n - 1, n);
    net.rho[e] = Rep{};
    net.n = n;
    return {net, MoveSpec{MoveKind::Destabilize, {e}, {}, {}, {}, {}, {}}};
}

MoveResult do_destabilize(const TopspinNetwork& in, const MoveSpec& m) {
    need_site(m, 1);
    TopspinNetwork net = in;
    auto& d = net.d;
    const Id e = m.site[0];
    const DEdge* ed = d.edge(e);
    if (!ed) mismatch(m, "unknown edge " + e);
    if (ed->arcs.size() != 1 || !d.is_circle(e)) mismatch(m, "edge " + e + " is not a single-arc circle");
    const Id a = ed->arcs[0];
    for (const auto& c : d.crossings)
        if (c.over == a || c.under_in == a || c.under_out == a) mismatch(m, "circle " + e + " meets a crossing");
    const int n = net.n;
    const Permutation& s = net.sigma.at(a);
    if (n < 2 || !is_transposition(s) || s(n) == n) precondition(m, "label must be a transposition moving sheet n");
    if (net.rho.at(e) != Rep{}) precondition(m, "circle must carry the trivial rep");
    if (net.marked.count(e)) precondition(m, "circle is marked");
    for (const auto& [k, p] : net.sigma)
        if (k != a && p(n) != n) precondition(m, "arc " + k + " moves sheet n");
    erase_arc(net, a);
    d.edges.erase(std::find_if(d.edges.begin(), d.edges.end(), [&](const DEdge& z) { return z.id == e; }));
    net.rho.erase(e);
    for (auto& [_, p] : net.sigma) {
        std::vector<int> img(p.images().begin(), p.images().end() - 1);
        p = Permutation(img);
    }
    net.n = n - 1;
    return {net, MoveSpec{MoveKind::Stabilize, {}, {}, {}, {}, {}, {}}};
}

}  // namespace

std::string to_string(MoveKind k) { return kNames[static_cast<int>(k)]; }

MoveKind move_kind_from_string(const std::string& s) {
    for (int i = 0; i < 10; ++i)
        if (s == kNames[i]) return static_cast<MoveKind>(i);
    throw Error("unknown move kind " + s);
}

std::string MoveSpec::str() const {
    std::ostringstream os;
    os << to_string(kind) << "[";
    for (size_t i = 0; i < site.size(); ++i) os << (i ? "," : "") << site[i];
    os << "]";
    if (!perms.empty()) os << " " << perms[0].str() << "*" << perms[1].str();
    if (!reps.empty()) os << " " << reps[0].str() << "x" << reps[1].str();
    return os.str();
}

MoveResult apply_move_with_inverse(const TopspinNetwork& net, const MoveSpec& m) {
    auto vr = validate(net);
    if (!vr.ok()) throw Error("invalid network: " + vr.violations.front());
    MoveResult r;
    switch (m.kind) {
        case MoveKind::V1: r = do_v1(net, m); break;
        case MoveKind::V1_inverse: r = do_v1_inverse(net, m); break;
        case MoveKind::V2: r = do_v2(net, m); break;
        case MoveKind::V2_inverse: r = do_v2_inverse(net, m); break;
        case MoveKind::C1: r = do_c1(net, m); break;
        case MoveKind::C1_inverse: r = do_c1_inverse(net, m); break;
        case MoveKind::C2:
        case MoveKind::C2_inverse: r = do_c2(net, m); break;
        case MoveKind::Stabilize: r = do_stabilize(net, m); break;
        case MoveKind::Destabilize: r = do_destabilize(net, m); break;
    }
    auto out = validate(r.net);
    if (!out.ok()) throw Error(to_string(m.kind) + " produced an invalid network: " + out.violations.front());
    return r;
}

TopspinNetwork apply_move(const TopspinNetwork& net, const MoveSpec& m) { return apply_move_with_inverse(net, m).net; }

MoveSpec inverse_move(const TopspinNetwork& net, const MoveSpec& m) { return apply_move_with_inverse(net, m).inverse; }

TopspinNetwork stabilize(const TopspinNetwork& net) { return apply_move(net, MoveSpec{MoveKind::Stabilize, {}, {}, {}, {}, {}, {}}); }

MoveSpec translate(const MoveSpec& m, const NetworkIso& iso) {
    CellKind k = CellKind::Edge;
    switch (m.kind) {
        case MoveKind::V2: k = CellKind::Vertex; break;
        case MoveKind::V2_inverse: k = CellKind::Arc; break;
        case MoveKind::C1:
        case MoveKind::C1_inverse:
        case MoveKind::C2:
        case MoveKind::C2_inverse: k = CellKind::Crossing; break;
        default: break;
    }
    MoveSpec t = m;
    const auto& map = iso.of(k);
    for (auto& s : t.site) s = map.at(s);
    for (auto& c : t.moved) c = iso.crossing.at(c);
    return t;
}

std::vector<std::pair<Rep, Rep>> tensor_factorizations(const Rep& rho, int max_irreps) {
    int top = *std::max_element(rho.twice.begin(), rho.twice.end());
    std::vector<Rep> cands;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
        if (!cur.empty()) cands.push_back(Rep(cur));
        if (static_cast<int>(cur.size()) == max_irreps) return;
        for (int t = from; t <= top; ++t) {
            cur.push_back(t);
            self(self, t);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    std::vector<std::pair<Rep, Rep>> out;
    for (const auto& a : cands)
        for (const auto& b : cands)
            if (tensor_decompose(a, b) == rho) out.push_back({a, b});
    return out;
}

std::vector<Successor> successors(const TopspinNetwork& net, const MoveOptions& opt) {
    const auto& d = net.d;
    std::vector<MoveSpec> cands;
    auto add = [&](MoveKind k, std::vector<Id> site) { cands.push_back(MoveSpec{k, std::move(site), {}, {}, {}, {}, {}}); };
    if (net.n <= opt.v1_max_order) {
        auto perms = all_permutations(net.n);
        for (const auto& e : d.edges) {
            if (e.arcs.size() != 1 || !d.edge_src(e.id) || is_over(d, e.arcs[0])) continue;
            const Permutation& s = net.sigma.at(e.arcs[0]);
            auto facs = tensor_factorizations(net.rho.at(e.id), opt.v1_max_irreps);
            for (const auto& p : perms)
                for (const auto& [r1, r2] : facs)
                    cands.push_back(MoveSpec{MoveKind::V1, {e.id}, {p, compose(inverse(p), s)}, {r1, r2}, {}, {}, {}});
        }
    }
    auto own = owners(d);
    for (const auto& v : d.vertices)
        for (size_t i = 0; i + 1 < v.in_arcs.size(); ++i) add(MoveKind::V1_inverse, {own.at(v.in_arcs[i]), own.at(v.in_arcs[i + 1])});
    for (const auto& v : d.vertices)
        if (v.in_arcs.size() == 2 && v.out_arcs.size() == 2) add(MoveKind::V2, {v.id});
    if (opt.v2_inverse)
        for (const auto& x : d.arcs)
            for (const auto& y : d.arcs)
                if (x.id != y.id) add(MoveKind::V2_inverse, {x.id, y.id});
    for (const auto& c : d.crossings) {
        add(MoveKind::C1, {c.id});
        add(MoveKind::C2, {c.id});
        if (opt.c2_inverse) add(MoveKind::C2_inverse, {c.id});
    }
    for (const auto& x1 : d.crossings)
        for (const auto& x2 : d.crossings)
            if (x1.id != x2.id && x2.over == x1.under_in && x2.under_out == x1.over) add(MoveKind::C1_inverse, {x1.id, x2.id});
    if (opt.stabilize) add(MoveKind::Stabilize, {});
    if (opt.destabilize)
        for (const auto& e : d.edges)
            if (e.arcs.size() == 1 && d.is_circle(e.id)) add(MoveKind::Destabilize, {e.id});

    std::vector<Successor> out;
    for (auto& m : cands) {
        try {
            out.push_back({m, apply_move_with_inverse(net, m)});
        } catch (const Error&) {
        }
    }
    return out;
}

std::vector<MoveSpec> applicable_moves(const TopspinNetwork& net, const MoveOptions& opt) {
    std::vector<MoveSpec> out;
    for (auto& s : successors(net, opt)) out.push_back(std::move(s.move));
    return out;
}

namespace {

struct State {
    TopspinNetwork net;
    int parent = -1;
    MoveSpec move;     // parent -> this
    MoveSpec inverse;  // this -> parent
    int depth = 0;
    int stabs = 0;
};

struct Side {
    std::vector<State> states;
    std::map<std::string, int> seen;
    std::vector<int> frontier;
    int depth = 0;
};

std::vector<int> path_to(const Side& s, int i) {
    std::vector<int> p;
    for (; i >= 0; i = s.states[i].parent) p.push_back(i);
    std::reverse(p.begin(), p.end());
    return p;
}

Certificate assemble(const TopspinNetwork& a, const Side& A, int ia, const Side& B, int ib) {
    Certificate c;
    TopspinNetwork cur = a;
    c.keys.push_back(canonical_key(cur).digest());
    for (int i : path_to(A, ia)) {
        if (A.states[i].parent < 0) continue;
        cur = apply_move(cur, A.states[i].move);
        c.moves.push_back(A.states[i].move);
        c.keys.push_back(canonical_key(cur).digest());
    }
    NetworkIso iso = network_isomorphism(B.states[ib].net, cur);
    for (int i = ib; B.states[i].parent >= 0; i = B.states[i].parent) {
        MoveSpec m = translate(B.states[i].inverse, iso);
        cur = apply_move(cur, m);
        c.moves.push_back(m);
        c.keys.push_back(canonical_key(cur).digest());
        iso = network_isomorphism(B.states[B.states[i].parent].net, cur);
    }
    return c;
}

std::vector<std::vector<Successor>> expand(const Side& s, const std::vector<int>& batch, const MoveOptions& base,
                                           const SearchBudget& budget, std::vector<std::vector<std::string>>& keys) {
    std::vector<std::vector<Successor>> out(batch.size());
    keys.assign(batch.size(), {});
    unsigned hw = budget.threads > 0 ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t k; (k = next++) < batch.size();) {
            const State& st = s.states[batch[k]];
            MoveOptions opt = base;
            opt.stabilize = st.stabs < budget.max_stabilizations;
            out[k] = successors(st.net, opt);
            for (const auto& x : out[k]) keys[k].push_back(raw_key(x.result.net).form);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::min<size_t>(hw, batch.size()); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

SearchResult equivalence_search(const TopspinNetwork& a, const TopspinNetwork& b, const SearchBudget& budget,
                                const MoveOptions& opt) {
    if (budget.max_moves < 0 || budget.max_states <= 0 || budget.max_stabilizations < 0)
        throw Error("equivalence_search: budgets must be positive");
    for (const auto* x : {&a, &b}) {
        auto vr = validate(*x);
        if (!vr.ok()) throw Error("invalid network: " + vr.violations.front());
    }
    SearchResult res;
    if (canonical_key(a) == canonical_key(b)) {
        res.certificate = Certificate{{}, {canonical_key(a).digest()}};
        return res;
    }

    Side A, B;
    auto root = [&](Side& s, const TopspinNetwork& net, int pad) {
        s.states.push_back(State{net, -1, {}, {}, 0, 0});
        for (int k = 0; k < pad; ++k) {
            const State& prev = s.states.back();
            MoveSpec m{MoveKind::Stabilize, {}, {}, {}, {}, {}, {}};
            auto r = apply_move_with_inverse(prev.net, m);
            s.states.push_back(State{r.net, static_cast<int>(s.states.size()) - 1, m, r.inverse, prev.depth + 1, 0});
        }
        int top = static_cast<int>(s.states.size()) - 1;
        s.seen[raw_key(s.states[top].net).form] = top;
        s.frontier = {top};
        s.depth = s.states[top].depth;
    };
    int pad_a = std::max(0, b.n - a.n), pad_b = std::max(0, a.n - b.n);
    root(A, a, pad_a);
    root(B, b, pad_b);
    auto stats = [&](const std::string& why) {
        res.stats = {static_cast<long long>(A.states.size()), static_cast<long long>(B.states.size()), A.depth, B.depth, why};
    };
    if (A.depth + B.depth > budget.max_moves) {
        stats("padding to equal order exceeds max_moves");
        return res;
    }
    {
        auto it = B.seen.find(A.seen.begin()->first);
        if (it != B.seen.end()) {
            res.certificate = assemble(a, A, A.frontier[0], B, it->second);
            stats("");
            return res;
        }
    }

    while (A.depth + B.depth < budget.max_moves) {
        bool grow_a = A.frontier.size() <= B.frontier.size();
        Side& S = grow_a ? A : B;
        Side& O = grow_a ? B : A;
        if (S.frontier.empty()) {
            stats("search space exhausted within budget");
            return res;
        }
        std::vector<std::vector<std::string>> keys;
        auto succ = expand(S, S.frontier, opt, budget, keys);
        std::vector<int> next;
        for (size_t k = 0; k < succ.size(); ++k) {
            int parent = S.frontier[k];
            for (size_t j = 0; j < succ[k].size(); ++j) {
                const std::string& key = keys[k][j];
                if (S.seen.count(key)) continue;
                auto& sc = succ[k][j];
                int stabs = S.states[parent].stabs + (sc.move.kind == MoveKind::Stabilize ? 1 : 0);
                S.states.push_back(State{sc.result.net, parent, sc.move, sc.result.inverse, S.states[parent].depth + 1, stabs});
                int id = static_cast<int>(S.states.size()) - 1;
                S.seen[key] = id;
                next.push_back(id);
                auto hit = O.seen.find(key);
                if (hit != O.seen.end()) {
                    S.depth += 1;
                    res.certificate = grow_a ? assemble(a, A, id, B, hit->second) : assemble(a, A, hit->second, B, id);
                    stats("");
                    return res;
                }
                if (static_cast<long long>(A.states.size() + B.states.size()) >= budget.max_states) {
                    stats("max_states reached");
                    return res;
                }
            }
        }
        S.frontier = std::move(next);
        S.depth += 1;
    }
    stats("max_moves reached");
    return res;
}

ReplayReport verify_certificate(const TopspinNetwork& a, const Certificate& c, const TopspinNetwork& b) {
    ReplayReport r;
    if (c.keys.size() != c.moves.size() + 1) {
        r.message = "certificate needs one key per move plus the start key";
        return r;
    }
    TopspinNetwork cur = a;
    if (canonical_key(cur).digest() != c.keys[0]) {
        r.message = "start key differs";
        return r;
    }
    for (size_t i = 0; i < c.moves.size(); ++i) {
        try {
            cur = apply_move(cur, c.moves[i]);
        } catch (const Error& e) {
            r.failed_step = i + 1;
            r.message = e.what();
            return r;
        }
        if (canonical_key(cur).digest() != c.keys[i + 1]) {
            r.failed_step = i + 1;
            r.message = "key differs after " + c.moves[i].str();
            return r;
        }
    }
    if (canonical_key(cur) != canonical_key(b)) {
        r.failed_step = c.moves.size();
        r.message = "replay does not end at the target key";
        return r;
    }
    r.ok = true;
    return r;
}

}  // namespace tsf
