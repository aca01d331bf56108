#include "tsf/foam.hpp"

#include <algorithm>

#include "tsf/error.hpp"
#include "tsf/network_key.hpp"

namespace tsf {

namespace {

template <class T, class V>
auto find_by_id(V& vec, const Id& id) -> T* {
    for (auto& x : vec)
        if (x.id == id) return &x;
    return nullptr;
}

}  // namespace

const FVertex* TwoComplex::vertex(const Id& id) const { return find_by_id<const FVertex>(vertices, id); }
const FEdge* TwoComplex::edge(const Id& id) const { return find_by_id<const FEdge>(edges, id); }
const Face* TwoComplex::face(const Id& id) const { return find_by_id<const Face>(faces, id); }
const Strand* TwoComplex::strand(const Id& id) const { return find_by_id<const Strand>(strands, id); }
FVertex* TwoComplex::vertex(const Id& id) { return find_by_id<FVertex>(vertices, id); }
FEdge* TwoComplex::edge(const Id& id) { return find_by_id<FEdge>(edges, id); }
Face* TwoComplex::face(const Id& id) { return find_by_id<Face>(faces, id); }

std::map<Id, long long> boundary_of_boundary(const TwoComplex& cx, const Face& f) {
    std::map<Id, long long> acc;
    for (const auto& b : f.boundary) {
        const FEdge* e = cx.edge(b.edge);
        if (!e) throw Error("face " + f.id + " references unknown edge " + b.edge);
        if (e->src) acc[*e->src] -= b.sign;
        if (e->dst) acc[*e->dst] += b.sign;
    }
    for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
    return acc;
}

bool boundary_squared_zero(const TwoComplex& cx) {
    for (const auto& f : cx.faces)
        if (!boundary_of_boundary(cx, f).empty()) return false;
    return true;
}

long long euler_characteristic(const TwoComplex& cx) {
    return static_cast<long long>(cx.vertices.size()) - static_cast<long long>(cx.edges.size()) +
           static_cast<long long>(cx.faces.size());
}

ValidationReport validate(const TopspinFoam& foam) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    const auto& cx = foam.cx;
    std::set<Id> seen;
    for (const auto& v : cx.vertices)
        if (!seen.insert("v" + v.id).second) bad("duplicate vertex " + v.id);
    for (const auto& e : cx.edges)
        if (!seen.insert("e" + e.id).second) bad("duplicate edge " + e.id);
    for (const auto& f : cx.faces)
        if (!seen.insert("f" + f.id).second) bad("duplicate face " + f.id);
    for (const auto& s : cx.strands)
        if (!seen.insert("s" + s.id).second) bad("duplicate strand " + s.id);
    if (!rep.ok()) return rep;

    for (const auto& e : cx.edges) {
        if (e.src && !cx.vertex(*e.src)) bad("edge " + e.id + " starts at unknown vertex");
        if (e.dst && !cx.vertex(*e.dst)) bad("edge " + e.id + " ends at unknown vertex");
    }
    std::map<std::pair<Id, int>, int> covered;
    for (const auto& e : cx.edges) {
        auto check = [&](const Incidence& inc, int sign) {
            const Face* f = cx.face(inc.face);
            if (!f || inc.slot < 0 || inc.slot >= static_cast<int>(f->boundary.size())) {
                bad("edge " + e.id + " has a dangling incidence");
                return;
            }
            const auto& b = f->boundary[inc.slot];
            if (b.edge != e.id || b.sign != sign) bad("edge " + e.id + " incidence disagrees with face " + f->id);
            ++covered[{inc.face, inc.slot}];
        };
        for (const auto& i : e.in) check(i, 1);
        for (const auto& i : e.out) check(i, -1);
    }
    for (const auto& f : cx.faces) {
        if (f.boundary.empty()) bad("face " + f.id + " has empty boundary");
        for (size_t k = 0; k < f.boundary.size(); ++k) {
            const auto& b = f.boundary[k];
            if (!cx.edge(b.edge)) {
                bad("face " + f.id + " references unknown edge " + b.edge);
                continue;
            }
            if (b.sign != 1 && b.sign != -1) bad("face " + f.id + " has a sign other than +1/-1");
            const Strand* s = cx.strand(b.strand);
            if (!s || s->face != f.id) bad("face " + f.id + " boundary entry uses a strand of another face");
            if (covered[{f.id, static_cast<int>(k)}] != 1) bad("face " + f.id + " entry " + std::to_string(k) + " not listed exactly once at its edge");
        }
    }
    if (!rep.ok()) return rep;
    for (const auto& f : cx.faces)
        if (!boundary_of_boundary(cx, f).empty()) bad("boundary of boundary of face " + f.id + " is not zero");
    for (const auto& s : cx.strands) {
        if (!cx.face(s.face)) bad("strand " + s.id + " on unknown face");
        auto it = foam.sigma.find(s.id);
        if (it == foam.sigma.end()) bad("strand " + s.id + " has no label");
        else if (it->second.degree() != foam.n) bad("strand " + s.id + " label has degree other than n");
    }
    for (const auto& c : cx.crossings)
        if (!cx.strand(c.over) || !cx.strand(c.under_in) || !cx.strand(c.under_out) || (c.sign != 1 && c.sign != -1))
            bad("face crossing " + c.id + " is malformed");
    for (const auto& f : cx.faces)
        if (!foam.rho.count(f.id)) bad("face " + f.id + " has no rep");
    for (const auto& e : cx.edges)
        if (e.kind == "generic" && !foam.iota.count(e.id)) bad("generic edge " + e.id + " has no intertwiner");
    for (const auto& m : foam.marked_faces)
        if (!cx.face(m)) bad("marked face " + m + " is unknown");
    auto slice_ok = [&](const BoundarySlice& s, const std::string& what) {
        for (const auto& [k, c] : s.edge_cells)
            if (!cx.edge(c)) bad(what + " edge cell " + c + " missing");
        for (const auto& [k, c] : s.vertex_cells)
            if (!cx.vertex(c)) bad(what + " vertex cell " + c + " missing");
        for (const auto& [k, c] : s.arc_strands)
            if (!cx.strand(c)) bad(what + " strand " + c + " missing");
        for (const auto& [k, c] : s.edge_faces)
            if (!cx.face(c)) bad(what + " face " + c + " missing");
        for (const auto& e : s.net.d.edges)
            if (!s.edge_cells.count(e.id) || !s.edge_faces.count(e.id)) bad(what + " edge " + e.id + " is not identified");
        for (const auto& a : s.net.d.arcs)
            if (!s.arc_strands.count(a.id)) bad(what + " arc " + a.id + " is not identified");
    };
    slice_ok(foam.source, "source");
    slice_ok(foam.target, "target");
    return rep;
}

namespace {

void require_valid(const TopspinFoam& foam) {
    auto r = validate(foam);
    if (!r.ok()) throw Error("invalid foam: " + r.violations.front());
}

TopspinNetwork rebuild(const TopspinFoam& foam, const BoundarySlice& s) {
    TopspinNetwork net = s.net;
    for (auto& [a, p] : net.sigma) p = foam.sigma.at(s.arc_strands.at(a));
    for (auto& [e, r] : net.rho) r = foam.rho.at(s.edge_faces.at(e));
    for (auto& [v, io] : net.iota) {
        auto it = s.vertex_edges.find(v);
        if (it != s.vertex_edges.end()) io = foam.iota.at(it->second);
    }
    net.marked.clear();
    for (const auto& e : net.d.edges)
        if (foam.marked_faces.count(s.edge_faces.at(e.id))) net.marked.insert(e.id);
    for (const auto& e : net.d.edges) {
        const Face* f = foam.cx.face(s.edge_faces.at(e.id));
        Id cell = s.edge_cells.at(e.id);
        bool found = std::any_of(f->boundary.begin(), f->boundary.end(), [&](const BoundaryEntry& b) { return b.edge == cell; });
        if (!found) throw Error("boundary mismatch: slice edge " + cell + " is not on face " + f->id);
    }
    return net;
}

}  // namespace

std::pair<TopspinNetwork, TopspinNetwork> boundary(const TopspinFoam& foam) {
    require_valid(foam);
    auto src = rebuild(foam, foam.source), dst = rebuild(foam, foam.target);
    if (raw_key(src) != raw_key(foam.source.net)) throw Error("boundary mismatch at source");
    if (raw_key(dst) != raw_key(foam.target.net)) throw Error("boundary mismatch at target");
    return {src, dst};
}

Permutation edge_relation(const TopspinFoam& foam, const Id& edge) {
    const FEdge* e = foam.cx.edge(edge);
    if (!e) throw Error("unknown foam edge " + edge);
    auto label = [&](const Incidence& inc) -> const Permutation& {
        return foam.sigma.at(foam.cx.face(inc.face)->boundary[inc.slot].strand);
    };
    Permutation acc = Permutation::identity(foam.n);
    for (const auto& i : e->in) acc = compose(acc, label(i));
    for (const auto& i : e->out) acc = compose(acc, inverse(label(i)));
    return acc;
}

WirtingerReport check_wirtinger_2d(const TopspinFoam& foam) {
    require_valid(foam);
    WirtingerReport rep;
    for (const auto& c : foam.cx.crossings) {
        Permutation want = crossing_image(foam.sigma.at(c.under_in), foam.sigma.at(c.over), c.sign);
        const auto& got = foam.sigma.at(c.under_out);
        if (got != want) rep.failures.push_back({"crossing", c.id, got.str(), want.str(), 0});
    }
    for (const auto& e : foam.cx.edges) {
        if (e.kind == "slice") continue;
        Permutation p = edge_relation(foam, e.id);
        if (!p.is_identity()) rep.failures.push_back({"edge", e.id, p.str(), "()", 0});
    }
    return rep;
}

DefectElement wirtinger_defect(const TopspinFoam& foam, bool cyclic_mode) {
    DefectElement out;
    if (!cyclic_mode) {
        auto w = check_wirtinger_2d(foam);
        if (!w.pass())
            throw Error("defect of a degenerate non-cyclic labeling is undefined (failure at " + w.failures.front().id + ")");
        out.perm = Permutation::identity(foam.n);
        return out;
    }
    require_valid(foam);
    out.cyclic = true;
    auto k = [&](const Incidence& inc) {
        const Id& s = foam.cx.face(inc.face)->boundary[inc.slot].strand;
        int e = cyclic_exponent(foam.sigma.at(s));
        if (e < 0) throw Error("label of strand " + s + " is not a power of the standard n-cycle");
        return e;
    };
    for (const auto& e : foam.cx.edges) {
        if (e.kind == "slice") continue;
        for (const auto& i : e.in) out.lift += k(i);
        for (const auto& i : e.out) out.lift -= k(i);
    }
    out.value = CyclicElement(foam.n, out.lift);
    return out;
}

TopspinFoam cylinder(const TopspinNetwork& net) {
    auto vr = validate(net);
    if (!vr.ok()) throw Error("invalid network: " + vr.violations.front());
    const auto& d = net.d;
    TopspinFoam f;
    f.n = net.n;
    auto& cx = f.cx;
    for (const auto& v : d.vertices) {
        cx.vertices.push_back({"v0:" + v.id, "slice"});
        cx.vertices.push_back({"v1:" + v.id, "slice"});
    }
    for (const auto& a : d.arcs) {
        cx.strands.push_back({"s:" + a.id, "F:" + a.edge});
        f.sigma["s:" + a.id] = net.sigma.at(a.id);
    }
    for (const auto& e : d.edges) {
        Id F = "F:" + e.id;
        Id first = "s:" + e.arcs.front(), last = "s:" + e.arcs.back();
        Face face{F, {}};
        auto src = d.edge_src(e.id), dst = d.edge_dst(e.id);
        if (src) {
            face.boundary = {{"e0:" + e.id, 1, first}, {"V:" + *dst, 1, last}, {"e1:" + e.id, -1, last}, {"V:" + *src, -1, first}};
            cx.edges.push_back({"e0:" + e.id, "v0:" + *src, "v0:" + *dst, {{F, 0}}, {}, "slice"});
            cx.edges.push_back({"e1:" + e.id, "v1:" + *src, "v1:" + *dst, {}, {{F, 2}}, "slice"});
        } else {
            Id p0 = "p0:" + e.id, p1 = "p1:" + e.id;
            cx.vertices.push_back({p0, "aux"});
            cx.vertices.push_back({p1, "aux"});
            face.boundary = {{"e0:" + e.id, 1, first}, {"S:" + e.id, 1, first}, {"e1:" + e.id, -1, first}, {"S:" + e.id, -1, first}};
            cx.edges.push_back({"e0:" + e.id, p0, p0, {{F, 0}}, {}, "slice"});
            cx.edges.push_back({"e1:" + e.id, p1, p1, {}, {{F, 2}}, "slice"});
            cx.edges.push_back({"S:" + e.id, p0, p1, {{F, 1}}, {{F, 3}}, "seam"});
        }
        cx.faces.push_back(face);
        f.rho[F] = net.rho.at(e.id);
        if (net.marked.count(e.id)) f.marked_faces.insert(F);
    }
    for (const auto& v : d.vertices) {
        FEdge ve{"V:" + v.id, "v0:" + v.id, "v1:" + v.id, {}, {}, "generic"};
        for (const auto& a : v.in_arcs) ve.in.push_back({"F:" + d.edge_of(a), 1});
        for (const auto& a : v.out_arcs) ve.out.push_back({"F:" + d.edge_of(a), 3});
        cx.edges.push_back(ve);
        f.iota[ve.id] = net.iota.at(v.id);
    }
    for (const auto& c : d.crossings) cx.crossings.push_back({"X:" + c.id, "s:" + c.over, "s:" + c.under_in, "s:" + c.under_out, c.sign});

    auto slice = [&](const std::string& lvl) {
        BoundarySlice s;
        s.net = net;
        for (const auto& e : d.edges) {
            s.edge_cells[e.id] = "e" + lvl + ":" + e.id;
            s.edge_faces[e.id] = "F:" + e.id;
            if (d.is_circle(e.id)) s.seam_cells[e.id] = "p" + lvl + ":" + e.id;
        }
        for (const auto& v : d.vertices) {
            s.vertex_cells[v.id] = "v" + lvl + ":" + v.id;
            s.vertex_edges[v.id] = "V:" + v.id;
        }
        for (const auto& a : d.arcs) s.arc_strands[a.id] = "s:" + a.id;
        return s;
    };
    f.source = slice("0");
    f.target = slice("1");
    return f;
}

namespace {

struct Renamer {
    std::set<Id> taken;
    std::map<Id, Id> m;

    Id fresh(const Id& x) {
        Id y = x;
        while (taken.count(y)) y += "'";
        taken.insert(y);
        return y;
    }
    const Id& operator()(const Id& x) const { return m.at(x); }
};

void rename_slice(BoundarySlice& s, const Renamer& r) {
    for (auto* mp : {&s.edge_cells, &s.vertex_cells, &s.seam_cells, &s.arc_strands, &s.edge_faces, &s.vertex_edges})
        for (auto& [k, v] : *mp) v = r(v);
}

}  // namespace

TopspinFoam glue(const TopspinFoam& a, const TopspinFoam& b) {
    if (a.n != b.n) throw Error("boundary mismatch: foams of different order");
    boundary(a);
    boundary(b);
    const auto& ta = a.target.net;
    const auto& sb = b.source.net;
    if (raw_key(ta) != raw_key(sb)) {
        if (shape_key(ta) == shape_key(sb)) throw Error("label mismatch on shared graph");
        throw Error("boundary mismatch");
    }
    NetworkIso iso = network_isomorphism(sb, ta);

    TopspinFoam out = a;
    Renamer r;
    for (const auto& v : a.cx.vertices) r.taken.insert("v" + v.id);
    for (const auto& e : a.cx.edges) r.taken.insert("e" + e.id);
    for (const auto& f : a.cx.faces) r.taken.insert("f" + f.id);
    for (const auto& s : a.cx.strands) r.taken.insert("s" + s.id);
    for (const auto& c : a.cx.crossings) r.taken.insert("x" + c.id);
    std::set<Id> merged_v, merged_e;
    for (const auto& [vb, cell] : b.source.vertex_cells) {
        r.m[cell] = a.target.vertex_cells.at(iso.vertex.at(vb));
        merged_v.insert(cell);
    }
    for (const auto& [eb, cell] : b.source.seam_cells) {
        r.m[cell] = a.target.seam_cells.at(iso.edge.at(eb));
        merged_v.insert(cell);
    }
    for (const auto& [eb, cell] : b.source.edge_cells) {
        r.m[cell] = a.target.edge_cells.at(iso.edge.at(eb));
        merged_e.insert(cell);
    }
    auto add = [&](const std::string& tag, const Id& id) {
        if (!r.m.count(id)) r.m[id] = r.fresh(tag + id).substr(1);
    };
    for (const auto& v : b.cx.vertices) add("v", v.id);
    for (const auto& e : b.cx.edges) add("e", e.id);
    for (const auto& f : b.cx.faces) add("f", f.id);
    for (const auto& s : b.cx.strands) add("s", s.id);
    for (const auto& c : b.cx.crossings) add("x", c.id);

    for (const auto& v : b.cx.vertices)
        if (!merged_v.count(v.id)) out.cx.vertices.push_back({r(v.id), v.kind});
    auto rinc = [&](std::vector<Incidence> xs) {
        for (auto& i : xs) i.face = r(i.face);
        return xs;
    };
    for (const auto& e : b.cx.edges) {
        if (merged_e.count(e.id)) {
            FEdge* t = out.cx.edge(r(e.id));
            for (const auto& i : rinc(e.in)) t->in.push_back(i);
            for (const auto& i : rinc(e.out)) t->out.push_back(i);
            continue;
        }
        FEdge ne{r(e.id), std::nullopt, std::nullopt, rinc(e.in), rinc(e.out), e.kind};
        if (e.src) ne.src = r(*e.src);
        if (e.dst) ne.dst = r(*e.dst);
        out.cx.edges.push_back(ne);
    }
    for (const auto& f : b.cx.faces) {
        Face nf{r(f.id), f.boundary};
        for (auto& be : nf.boundary) {
            be.edge = r(be.edge);
            be.strand = r(be.strand);
        }
        out.cx.faces.push_back(nf);
    }
    for (const auto& s : b.cx.strands) out.cx.strands.push_back({r(s.id), r(s.face)});
    for (const auto& c : b.cx.crossings) out.cx.crossings.push_back({r(c.id), r(c.over), r(c.under_in), r(c.under_out), c.sign});
    for (const auto& [k, v] : b.sigma) out.sigma[r(k)] = v;
    for (const auto& [k, v] : b.rho) out.rho[r(k)] = v;
    for (const auto& [k, v] : b.iota) out.iota[r(k)] = v;
    for (const auto& m : b.marked_faces) out.marked_faces.insert(r(m));

    out.interior.push_back(a.target);
    for (auto s : b.interior) {
        rename_slice(s, r);
        out.interior.push_back(s);
    }
    out.target = b.target;
    rename_slice(out.target, r);
    return out;
}

TopspinFoam edge_contraction(const TopspinNetwork& net, const Id& edge) {
    const DEdge* e = net.d.edge(edge);
    if (!e) throw Error("edge " + edge + " does not exist");
    auto u = net.d.edge_src(edge), w = net.d.edge_dst(edge);
    if (!u) throw Error("cannot contract closed edge " + edge);
    if (*u == *w) throw Error("contracting a loop edge is rejected");
    if (e->arcs.size() != 1) throw Error("contraction of an edge with undercrossings is unsupported");
    Id arc = e->arcs.front();
    for (const auto& c : net.d.crossings)
        if (c.over == arc) throw Error("contraction of an edge with overcrossings is unsupported");

    TopspinFoam f = cylinder(net);
    auto& cx = f.cx;
    Id F = "F:" + edge, x1 = "v1:" + *u, gone = "v1:" + *w;
    Face* face = cx.face(F);
    face->boundary = {face->boundary[0], face->boundary[1], face->boundary[3]};
    for (auto& inc : cx.edge("V:" + *u)->out)
        if (inc.face == F) inc.slot = 2;
    cx.edges.erase(std::remove_if(cx.edges.begin(), cx.edges.end(), [&](const FEdge& x) { return x.id == "e1:" + edge; }), cx.edges.end());
    cx.vertices.erase(std::remove_if(cx.vertices.begin(), cx.vertices.end(), [&](const FVertex& x) { return x.id == gone; }), cx.vertices.end());
    for (auto& x : cx.edges) {
        if (x.src == gone) x.src = x1;
        if (x.dst == gone) x.dst = x1;
    }

    TopspinNetwork t = net;
    DVertex* vu = t.d.vertex(*u);
    const DVertex* vw = net.d.vertex(*w);
    std::vector<Id> ins = vu->in_arcs, outs;
    for (const auto& a : vw->in_arcs)
        if (a != arc) ins.push_back(a);
    for (const auto& a : vu->out_arcs)
        if (a != arc) outs.push_back(a);
    for (const auto& a : vw->out_arcs) outs.push_back(a);
    vu->in_arcs = ins;
    vu->out_arcs = outs;
    t.d.vertices.erase(std::remove_if(t.d.vertices.begin(), t.d.vertices.end(), [&](const DVertex& x) { return x.id == *w; }), t.d.vertices.end());
    t.d.arcs.erase(std::remove_if(t.d.arcs.begin(), t.d.arcs.end(), [&](const DArc& x) { return x.id == arc; }), t.d.arcs.end());
    t.d.edges.erase(std::remove_if(t.d.edges.begin(), t.d.edges.end(), [&](const DEdge& x) { return x.id == edge; }), t.d.edges.end());
    t.sigma.erase(arc);
    t.rho.erase(edge);
    t.marked.erase(edge);
    t.iota.erase(*w);
    auto [in_reps, out_reps] = port_reps(t, *u);
    t.iota[*u] = Intertwiner{"contract(" + net.iota.at(*u).label + "," + net.iota.at(*w).label + ")", false, in_reps, out_reps};

    BoundarySlice& s = f.target;
    s.net = t;
    s.edge_cells.erase(edge);
    s.edge_faces.erase(edge);
    s.arc_strands.erase(arc);
    s.vertex_cells.erase(*w);
    s.vertex_edges.erase(*u);
    s.vertex_edges.erase(*w);
    return f;
}

TopspinFoam vertex_splitting(const TopspinNetwork& net, const Id& vertex, const std::vector<Id>& part_a) {
    const DVertex* v = net.d.vertex(vertex);
    if (!v) throw Error("vertex " + vertex + " does not exist");
    std::set<Id> incident;
    for (const auto& e : net.d.in_edges(vertex)) incident.insert(e);
    for (const auto& e : net.d.out_edges(vertex)) incident.insert(e);
    std::set<Id> A(part_a.begin(), part_a.end());
    for (const auto& e : A)
        if (!incident.count(e)) throw Error("edge " + e + " is not incident to " + vertex);
    if (A.empty() || A.size() == incident.size()) throw Error("vertex splitting needs two non-empty parts");

    TopspinNetwork t = net;
    Id va = vertex + "/A", vb = vertex + "/B";
    DVertex pa{va, {}, {}}, pb{vb, {}, {}};
    for (const auto& a : v->in_arcs) (A.count(net.d.edge_of(a)) ? pa : pb).in_arcs.push_back(a);
    for (const auto& a : v->out_arcs) (A.count(net.d.edge_of(a)) ? pa : pb).out_arcs.push_back(a);
    t.d.vertices.erase(std::remove_if(t.d.vertices.begin(), t.d.vertices.end(), [&](const DVertex& x) { return x.id == vertex; }), t.d.vertices.end());
    t.d.vertices.push_back(pa);
    t.d.vertices.push_back(pb);
    t.iota.erase(vertex);
    for (const auto& [id, label] : {std::pair{va, std::string("/A")}, std::pair{vb, std::string("/B")}}) {
        t.iota[id] = Intertwiner{};
        auto [ins, outs] = port_reps(t, id);
        if (ins.size() == 1 && outs.size() == 1 && ins == outs)
            t.iota[id] = Intertwiner{"id", true, ins, outs};
        else
            t.iota[id] = Intertwiner{net.iota.at(vertex).label + label, false, ins, outs};
    }

    TopspinFoam f = cylinder(net);
    auto& cx = f.cx;
    Id old_edge = "V:" + vertex, old_top = "v1:" + vertex;
    FEdge ea{"V:" + va, "v0:" + vertex, "v1:" + va, {}, {}, "generic"};
    FEdge eb{"V:" + vb, "v0:" + vertex, "v1:" + vb, {}, {}, "generic"};
    auto face_in_a = [&](const Id& face) { return A.count(face.substr(2)) > 0; };
    const FEdge* old = cx.edge(old_edge);
    for (const auto& i : old->in) (face_in_a(i.face) ? ea : eb).in.push_back(i);
    for (const auto& i : old->out) (face_in_a(i.face) ? ea : eb).out.push_back(i);
    cx.edges.erase(std::remove_if(cx.edges.begin(), cx.edges.end(), [&](const FEdge& x) { return x.id == old_edge; }), cx.edges.end());
    cx.edges.push_back(ea);
    cx.edges.push_back(eb);
    f.iota.erase(old_edge);
    f.iota[ea.id] = t.iota.at(va);
    f.iota[eb.id] = t.iota.at(vb);
    cx.vertices.erase(std::remove_if(cx.vertices.begin(), cx.vertices.end(), [&](const FVertex& x) { return x.id == old_top; }), cx.vertices.end());
    cx.vertices.push_back({"v1:" + va, "slice"});
    cx.vertices.push_back({"v1:" + vb, "slice"});
    for (auto& fc : cx.faces) {
        bool in_a = face_in_a(fc.id);
        for (auto& be : fc.boundary)
            if (be.edge == old_edge) be.edge = in_a ? ea.id : eb.id;
    }
    for (auto& x : cx.edges) {
        if (x.kind != "slice" || x.id.rfind("e1:", 0) != 0) continue;
        bool in_a = A.count(x.id.substr(3)) > 0;
        if (x.src == old_top) x.src = "v1:" + (in_a ? va : vb);
        if (x.dst == old_top) x.dst = "v1:" + (in_a ? va : vb);
    }
    f.source.vertex_edges.erase(vertex);
    BoundarySlice& s = f.target;
    s.net = t;
    s.vertex_cells.erase(vertex);
    s.vertex_edges.erase(vertex);
    s.vertex_cells[va] = "v1:" + va;
    s.vertex_cells[vb] = "v1:" + vb;
    s.vertex_edges[va] = ea.id;
    s.vertex_edges[vb] = eb.id;
    return f;
}

TopspinFoam disjoint_union(const TopspinFoam& a, const TopspinFoam& b) {
    if (a.n != b.n) throw Error("disjoint union of foams of different order");
    TopspinFoam out;
    out.n = a.n;
    out.weight_hook = a.weight_hook;
    auto add = [&](const TopspinFoam& src, const std::string& pre, BoundarySlice& s_out, BoundarySlice& t_out, const std::string& npre) {
        auto r = [&](const Id& id) { return pre + id; };
        for (auto v : src.cx.vertices) {
            v.id = r(v.id);
            out.cx.vertices.push_back(v);
        }
        for (auto e : src.cx.edges) {
            e.id = r(e.id);
            if (e.src) e.src = r(*e.src);
            if (e.dst) e.dst = r(*e.dst);
            for (auto& i : e.in) i.face = r(i.face);
            for (auto& i : e.out) i.face = r(i.face);
            out.cx.edges.push_back(e);
        }
        for (auto f : src.cx.faces) {
            f.id = r(f.id);
            for (auto& be : f.boundary) {
                be.edge = r(be.edge);
                be.strand = r(be.strand);
            }
            out.cx.faces.push_back(f);
        }
        for (auto s : src.cx.strands) out.cx.strands.push_back({r(s.id), r(s.face)});
        for (auto c : src.cx.crossings) out.cx.crossings.push_back({r(c.id), r(c.over), r(c.under_in), r(c.under_out), c.sign});
        for (const auto& [k, v] : src.sigma) out.sigma[r(k)] = v;
        for (const auto& [k, v] : src.rho) out.rho[r(k)] = v;
        for (const auto& [k, v] : src.iota) out.iota[r(k)] = v;
        for (const auto& m : src.marked_faces) out.marked_faces.insert(r(m));
        auto merge = [&](const BoundarySlice& in, BoundarySlice& acc) {
            for (const auto& [k, v] : in.edge_cells) acc.edge_cells[npre + k] = r(v);
            for (const auto& [k, v] : in.vertex_cells) acc.vertex_cells[npre + k] = r(v);
            for (const auto& [k, v] : in.seam_cells) acc.seam_cells[npre + k] = r(v);
            for (const auto& [k, v] : in.arc_strands) acc.arc_strands[npre + k] = r(v);
            for (const auto& [k, v] : in.edge_faces) acc.edge_faces[npre + k] = r(v);
            for (const auto& [k, v] : in.vertex_edges) acc.vertex_edges[npre + k] = r(v);
        };
        merge(src.source, s_out);
        merge(src.target, t_out);
    };
    add(a, "A.", out.source, out.target, "a.");
    add(b, "B.", out.source, out.target, "b.");
    out.source.net = disjoint_union(a.source.net, b.source.net);
    out.target.net = disjoint_union(a.target.net, b.target.net);
    if (!a.interior.empty() || !b.interior.empty()) throw Error("disjoint union of glued foams is unsupported");
    return out;
}

namespace {

// foam complex plus slice subgraphs as one colored graph
ColoredGraph foam_graph(const TopspinFoam& foam, bool marked_only) {
    ColoredGraph g;
    const auto& cx = foam.cx;
    MarkedClosure mc;
    if (marked_only) mc = marked_closure(foam);
    auto keep_face = [&](const Id& f) { return !marked_only || mc.faces.count(f); };
    auto keep_edge = [&](const Id& e) { return !marked_only || mc.edges.count(e); };
    auto keep_vertex = [&](const Id& v) { return !marked_only || mc.vertices.count(v); };

    std::map<Id, int> vn, en, fn, sn;
    for (const auto& v : cx.vertices)
        if (keep_vertex(v.id)) vn[v.id] = g.add_node("V:" + v.kind);
    for (const auto& e : cx.edges) {
        if (!keep_edge(e.id)) continue;
        std::string c = "E:" + e.kind;
        if (e.kind == "generic") c += ":" + foam.iota.at(e.id).str();
        en[e.id] = g.add_node(c);
    }
    for (const auto& f : cx.faces)
        if (keep_face(f.id))
            fn[f.id] = g.add_node("F:" + foam.rho.at(f.id).str() + (!marked_only && foam.marked_faces.count(f.id) ? "*" : ""));
    for (const auto& s : cx.strands)
        if (keep_face(s.face)) {
            sn[s.id] = g.add_node("s:" + foam.sigma.at(s.id).images_str());
            g.add_edge(sn[s.id], fn.at(s.face), "f");
        }
    for (const auto& e : cx.edges) {
        if (!keep_edge(e.id)) continue;
        if (e.src && vn.count(*e.src)) g.add_edge(en[e.id], vn[*e.src], "s");
        if (e.dst && vn.count(*e.dst)) g.add_edge(en[e.id], vn[*e.dst], "d");
        int k = 0;
        for (const auto& i : e.in)
            if (keep_face(i.face)) g.add_edge(en[e.id], fn.at(i.face), "in#" + std::to_string(k++) + ":" + std::to_string(i.slot));
        k = 0;
        for (const auto& i : e.out)
            if (keep_face(i.face)) g.add_edge(en[e.id], fn.at(i.face), "out#" + std::to_string(k++) + ":" + std::to_string(i.slot));
    }
    for (const auto& f : cx.faces) {
        if (!keep_face(f.id)) continue;
        for (size_t k = 0; k < f.boundary.size(); ++k) {
            const auto& be = f.boundary[k];
            g.add_edge(fn[f.id], en.at(be.edge), "b#" + std::to_string(k) + (be.sign > 0 ? "+" : "-"));
            g.add_edge(fn[f.id], sn.at(be.strand), "bs#" + std::to_string(k));
        }
    }
    for (const auto& c : cx.crossings) {
        if (!sn.count(c.under_in)) continue;
        bool over = sn.count(c.over) > 0;
        int x = g.add_node(std::string("X:") + (c.sign > 0 ? "+" : "-") + (over ? "" : "!"));
        if (over) g.add_edge(x, sn[c.over], "o");
        g.add_edge(x, sn.at(c.under_in), "i");
        g.add_edge(x, sn.at(c.under_out), "u");
    }
    auto add_slice = [&](const BoundarySlice& s, const std::string& tag) {
        auto ng = network_graph(s.net, {true, marked_only});
        int base = g.size();
        for (int v = 0; v < ng.g.size(); ++v) g.add_node(tag + "|" + ng.g.color[v]);
        for (int v = 0; v < ng.g.size(); ++v)
            for (const auto& [w, l] : ng.g.out[v]) g.add_edge(base + v, base + w, l);
        for (int v = 0; v < ng.g.size(); ++v) {
            const auto& [kind, id] = ng.node[v];
            auto link = [&](const std::map<Id, Id>& m, const std::map<Id, int>& nodes, const char* label) {
                auto it = m.find(id);
                if (it != m.end() && nodes.count(it->second)) g.add_edge(base + v, nodes.at(it->second), label);
            };
            switch (kind) {
                case CellKind::Edge:
                    link(s.edge_cells, en, "cell");
                    link(s.edge_faces, fn, "face");
                    link(s.seam_cells, vn, "seam");
                    break;
                case CellKind::Vertex:
                    link(s.vertex_cells, vn, "cell");
                    link(s.vertex_edges, en, "vedge");
                    break;
                case CellKind::Arc: link(s.arc_strands, sn, "cell"); break;
                default: break;
            }
        }
    };
    add_slice(foam.source, "S");
    add_slice(foam.target, "T");
    for (const auto& s : foam.interior) add_slice(s, "I");
    return g;
}

}  // namespace

MarkedClosure marked_closure(const TopspinFoam& foam) {
    MarkedClosure mc;
    for (const auto& f : foam.cx.faces) {
        if (!foam.marked_faces.count(f.id)) continue;
        mc.faces.insert(f.id);
        for (const auto& be : f.boundary) {
            mc.edges.insert(be.edge);
            const FEdge* e = foam.cx.edge(be.edge);
            if (e->src) mc.vertices.insert(*e->src);
            if (e->dst) mc.vertices.insert(*e->dst);
        }
    }
    return mc;
}

CanonicalKey foam_key(const TopspinFoam& foam) {
    return {"F" + foam.weight_hook + ";n=" + std::to_string(foam.n) + ";" + canonicalize(foam_graph(foam, false)).form};
}

CanonicalKey foam_marked_key(const TopspinFoam& foam) {
    return {"FM" + foam.weight_hook + ";n=" + std::to_string(foam.n) + ";" + canonicalize(foam_graph(foam, true)).form};
}

}  // namespace tsf
