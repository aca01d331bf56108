#include "tsf/diagram.hpp"

#include <algorithm>
#include <functional>

#include "tsf/error.hpp"

namespace tsf {

namespace {

template <class T, class V>
auto find_by_id(V& vec, const Id& id) -> T* {
    for (auto& x : vec)
        if (x.id == id) return &x;
    return nullptr;
}

}  // namespace

const DVertex* PlanarGraphDiagram::vertex(const Id& id) const { return find_by_id<const DVertex>(vertices, id); }
const DArc* PlanarGraphDiagram::arc(const Id& id) const { return find_by_id<const DArc>(arcs, id); }
const DCrossing* PlanarGraphDiagram::crossing(const Id& id) const { return find_by_id<const DCrossing>(crossings, id); }
const DEdge* PlanarGraphDiagram::edge(const Id& id) const { return find_by_id<const DEdge>(edges, id); }
DVertex* PlanarGraphDiagram::vertex(const Id& id) { return find_by_id<DVertex>(vertices, id); }
DEdge* PlanarGraphDiagram::edge(const Id& id) { return find_by_id<DEdge>(edges, id); }
DCrossing* PlanarGraphDiagram::crossing(const Id& id) { return find_by_id<DCrossing>(crossings, id); }

std::optional<Id> PlanarGraphDiagram::edge_src(const Id& e) const {
    const DEdge* ed = edge(e);
    if (!ed || ed->arcs.empty()) return std::nullopt;
    for (const auto& v : vertices)
        for (const auto& a : v.out_arcs)
            if (a == ed->arcs.front()) return v.id;
    return std::nullopt;
}

std::optional<Id> PlanarGraphDiagram::edge_dst(const Id& e) const {
    const DEdge* ed = edge(e);
    if (!ed || ed->arcs.empty()) return std::nullopt;
    for (const auto& v : vertices)
        for (const auto& a : v.in_arcs)
            if (a == ed->arcs.back()) return v.id;
    return std::nullopt;
}

bool PlanarGraphDiagram::is_circle(const Id& e) const { return !edge_src(e) && !edge_dst(e); }

Id PlanarGraphDiagram::edge_of(const Id& a) const {
    const DArc* ar = arc(a);
    if (!ar) throw Error("unknown arc " + a);
    return ar->edge;
}

std::vector<Id> PlanarGraphDiagram::in_edges(const Id& v) const {
    std::vector<Id> out;
    for (const auto& a : vertex(v)->in_arcs) out.push_back(edge_of(a));
    return out;
}

std::vector<Id> PlanarGraphDiagram::out_edges(const Id& v) const {
    std::vector<Id> out;
    for (const auto& a : vertex(v)->out_arcs) out.push_back(edge_of(a));
    return out;
}

const DCrossing* PlanarGraphDiagram::crossing_ending(const Id& a) const {
    for (const auto& c : crossings)
        if (c.under_in == a) return &c;
    return nullptr;
}

const DCrossing* PlanarGraphDiagram::crossing_starting(const Id& a) const {
    for (const auto& c : crossings)
        if (c.under_out == a) return &c;
    return nullptr;
}

ValidationReport validate(const TopspinNetwork& net) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    const auto& d = net.d;

    if (net.n < 1) bad("order must be positive");
    auto unique = [&](const std::string& what, const std::vector<Id>& ids) {
        std::set<Id> seen;
        for (const auto& id : ids)
            if (!seen.insert(id).second) bad("duplicate " + what + " id " + id);
    };
    std::vector<Id> ids;
    for (const auto& v : d.vertices) ids.push_back(v.id);
    unique("vertex", ids);
    ids.clear();
    for (const auto& a : d.arcs) ids.push_back(a.id);
    unique("arc", ids);
    ids.clear();
    for (const auto& c : d.crossings) ids.push_back(c.id);
    unique("crossing", ids);
    ids.clear();
    for (const auto& e : d.edges) ids.push_back(e.id);
    unique("edge", ids);
    if (!rep.ok()) return rep;

    std::map<Id, Id> owner;
    for (const auto& e : d.edges) {
        if (e.arcs.empty()) bad("edge " + e.id + " has no arcs");
        for (const auto& a : e.arcs) {
            const DArc* ar = d.arc(a);
            if (!ar) {
                bad("edge " + e.id + " references unknown arc " + a);
                continue;
            }
            if (owner.count(a)) {
                bad("arc multiply owned: " + a);
                continue;
            }
            owner[a] = e.id;
            if (ar->edge != e.id) bad("arc " + a + " claims edge " + ar->edge + " but is listed under " + e.id);
        }
    }
    for (const auto& a : d.arcs)
        if (!owner.count(a.id)) bad("arc " + a.id + " belongs to no edge");
    if (!rep.ok()) return rep;

    std::map<Id, int> heads, tails;
    for (const auto& v : d.vertices) {
        for (const auto& a : v.in_arcs) {
            if (!d.arc(a)) bad("vertex " + v.id + " references unknown arc " + a);
            else ++heads[a];
        }
        for (const auto& a : v.out_arcs) {
            if (!d.arc(a)) bad("vertex " + v.id + " references unknown arc " + a);
            else ++tails[a];
        }
    }
    std::map<Id, int> undercount;
    for (const auto& c : d.crossings) {
        if (c.sign != 1 && c.sign != -1) bad("crossing " + c.id + " has sign other than +1/-1");
        if (!d.arc(c.over) || !d.arc(c.under_in) || !d.arc(c.under_out)) {
            bad("crossing " + c.id + " references unknown arc");
            continue;
        }
        ++heads[c.under_in];
        ++tails[c.under_out];
        if (owner[c.under_in] != owner[c.under_out]) {
            bad("crossing " + c.id + " joins arcs of different edges");
            continue;
        }
        ++undercount[owner[c.under_in]];
        const DEdge* e = d.edge(owner[c.under_in]);
        auto it = std::find(e->arcs.begin(), e->arcs.end(), c.under_in);
        size_t k = it - e->arcs.begin();
        bool circle = d.is_circle(e->id);
        size_t next = k + 1;
        if (next == e->arcs.size() && circle) next = 0;
        if (next >= e->arcs.size() || e->arcs[next] != c.under_out)
            bad("crossing " + c.id + " does not join consecutive arcs of edge " + e->id);
    }
    if (!rep.ok()) return rep;

    for (const auto& e : d.edges) {
        bool has_src = d.edge_src(e.id).has_value(), has_dst = d.edge_dst(e.id).has_value();
        size_t n_under = undercount[e.id];
        if (has_src != has_dst) {
            bad("edge " + e.id + " has a free end");
            continue;
        }
        if (has_src) {
            if (e.arcs.size() != n_under + 1) bad("edge " + e.id + " arc count does not equal undercrossings + 1");
        } else if (e.arcs.size() != std::max<size_t>(n_under, 1)) {
            bad("closed edge " + e.id + " arc count does not equal its undercrossings");
        }
    }
    for (const auto& a : d.arcs) {
        int h = heads[a.id], t = tails[a.id];
        const DEdge* e = d.edge(a.edge);
        bool closed_single = e && e->arcs.size() == 1 && undercount[e->id] == 0 && d.is_circle(e->id);
        int want = closed_single ? 0 : 1;
        if (h != want) bad("arc " + a.id + " terminates " + std::to_string(h) + " times");
        if (t != want) bad("arc " + a.id + " starts " + std::to_string(t) + " times");
    }

    for (const auto& a : d.arcs) {
        auto it = net.sigma.find(a.id);
        if (it == net.sigma.end()) bad("arc " + a.id + " has no sigma label");
        else if (it->second.degree() != net.n) bad("sigma label of arc " + a.id + " has degree other than n");
    }
    for (const auto& [k, _] : net.sigma)
        if (!d.arc(k)) bad("sigma label for unknown arc " + k);
    for (const auto& e : d.edges)
        if (!net.rho.count(e.id)) bad("edge " + e.id + " has no rho label");
    for (const auto& [k, _] : net.rho)
        if (!d.edge(k)) bad("rho label for unknown edge " + k);
    for (const auto& m : net.marked)
        if (!d.edge(m)) bad("marked edge " + m + " is unknown");
    for (const auto& [k, _] : net.iota)
        if (!d.vertex(k)) bad("iota label for unknown vertex " + k);
    if (!rep.ok()) return rep;

    for (const auto& v : d.vertices) {
        auto it = net.iota.find(v.id);
        if (it == net.iota.end()) {
            bad("vertex " + v.id + " has no intertwiner");
            continue;
        }
        const Intertwiner& io = it->second;
        if (io.is_identity && io.domain != io.codomain) bad("identity intertwiner at " + v.id + " has unequal signatures");
        auto [ins, outs] = port_reps(net, v.id);
        if (tensor_all(ins) != tensor_all(io.domain) || tensor_all(outs) != tensor_all(io.codomain))
            bad("signature mismatch at vertex " + v.id);
    }
    return rep;
}

std::pair<std::vector<Rep>, std::vector<Rep>> port_reps(const TopspinNetwork& net, const Id& v) {
    std::vector<Rep> ins, outs;
    for (const auto& e : net.d.in_edges(v)) ins.push_back(net.rho.at(e));
    for (const auto& e : net.d.out_edges(v)) outs.push_back(net.rho.at(e));
    return {ins, outs};
}

Permutation crossing_image(const Permutation& under_in, const Permutation& over, int sign) {
    // negative: sigma_j = sigma_k sigma_i sigma_k^-1 ; positive: sigma_j = sigma_k^-1 sigma_i sigma_k
    return sign < 0 ? conjugate(under_in, over) : conjugate(under_in, inverse(over));
}

namespace {

Permutation vertex_product(const DVertex& v, const std::function<const Permutation&(const Id&)>& label, int n) {
    Permutation acc = Permutation::identity(n);
    for (const auto& a : v.in_arcs) acc = compose(acc, label(a));
    for (const auto& a : v.out_arcs) acc = compose(acc, inverse(label(a)));
    return acc;
}

}  // namespace

Permutation vertex_relation(const TopspinNetwork& net, const Id& vertex) {
    const DVertex* v = net.d.vertex(vertex);
    if (!v) throw Error("unknown vertex " + vertex);
    return vertex_product(*v, [&](const Id& a) -> const Permutation& { return net.sigma.at(a); }, net.n);
}

WirtingerReport check_wirtinger(const TopspinNetwork& net) {
    auto vr = validate(net);
    if (!vr.ok()) throw Error("invalid network: " + vr.violations.front());
    WirtingerReport rep;
    for (const auto& c : net.d.crossings) {
        Permutation want = crossing_image(net.sigma.at(c.under_in), net.sigma.at(c.over), c.sign);
        const Permutation& got = net.sigma.at(c.under_out);
        if (got != want) rep.failures.push_back({"crossing", c.id, got.str(), want.str(), 0});
    }
    for (const auto& v : net.d.vertices) {
        Permutation p = vertex_relation(net, v.id);
        if (!p.is_identity()) rep.failures.push_back({"vertex", v.id, p.str(), "()", 0});
    }
    return rep;
}

std::vector<SigmaAssignment> enumerate_representations(const PlanarGraphDiagram& d, int n, bool transpositions_only) {
    if (n < 1 || n > 6) throw Error("enumerate_representations: n must lie in 1..6");
    if (d.arcs.size() > 12) throw Error("enumerate_representations: more than 12 arcs");
    std::vector<Id> arcs;
    for (const auto& a : d.arcs) arcs.push_back(a.id);
    std::sort(arcs.begin(), arcs.end());
    std::map<Id, size_t> pos;
    for (size_t k = 0; k < arcs.size(); ++k) pos[arcs[k]] = k;

    std::vector<Permutation> cands = transpositions_only ? all_transpositions(n) : all_permutations(n);

    // each relation is checked once its last arc (in assignment order) is set
    struct Rel {
        bool vertex;
        size_t index;
    };
    std::vector<std::vector<Rel>> due(arcs.size());
    auto last_of = [&](const std::vector<Id>& as) {
        size_t m = 0;
        for (const auto& a : as) m = std::max(m, pos.at(a));
        return m;
    };
    for (size_t k = 0; k < d.crossings.size(); ++k) {
        const auto& c = d.crossings[k];
        due[last_of({c.over, c.under_in, c.under_out})].push_back({false, k});
    }
    for (size_t k = 0; k < d.vertices.size(); ++k) {
        std::vector<Id> as = d.vertices[k].in_arcs;
        as.insert(as.end(), d.vertices[k].out_arcs.begin(), d.vertices[k].out_arcs.end());
        if (as.empty()) continue;
        due[last_of(as)].push_back({true, k});
    }

    std::vector<SigmaAssignment> out;
    std::vector<const Permutation*> cur(arcs.size(), nullptr);
    auto label = [&](const Id& a) -> const Permutation& { return *cur[pos.at(a)]; };
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == arcs.size()) {
            SigmaAssignment s;
            for (size_t t = 0; t < arcs.size(); ++t) s.emplace(arcs[t], *cur[t]);
            out.push_back(std::move(s));
            return;
        }
        for (const auto& p : cands) {
            cur[k] = &p;
            bool ok = true;
            for (const auto& r : due[k]) {
                if (r.vertex) {
                    ok = vertex_product(d.vertices[r.index], label, n).is_identity();
                } else {
                    const auto& c = d.crossings[r.index];
                    ok = crossing_image(label(c.under_in), label(c.over), c.sign) == label(c.under_out);
                }
                if (!ok) break;
            }
            if (ok) rec(k + 1);
        }
        cur[k] = nullptr;
    };
    rec(0);
    return out;
}

long long network_euler(const TopspinNetwork& net) {
    long long circles = 0;
    for (const auto& e : net.d.edges)
        if (net.d.is_circle(e.id)) ++circles;
    return static_cast<long long>(net.d.vertices.size()) - static_cast<long long>(net.d.edges.size()) + circles;
}

TopspinNetwork empty_network(int n) {
    TopspinNetwork net;
    net.n = n;
    return net;
}

TopspinNetwork disjoint_union(const TopspinNetwork& a, const TopspinNetwork& b) {
    if (a.n != b.n) throw Error("disjoint union of networks of different order");
    TopspinNetwork out;
    out.n = a.n;
    auto add = [&](const TopspinNetwork& src, const std::string& pre) {
        auto r = [&](const Id& id) { return pre + id; };
        for (auto v : src.d.vertices) {
            v.id = r(v.id);
            for (auto& x : v.in_arcs) x = r(x);
            for (auto& x : v.out_arcs) x = r(x);
            out.d.vertices.push_back(v);
        }
        for (auto x : src.d.arcs) {
            x.id = r(x.id);
            x.edge = r(x.edge);
            out.d.arcs.push_back(x);
        }
        for (auto c : src.d.crossings) {
            c.id = r(c.id);
            c.over = r(c.over);
            c.under_in = r(c.under_in);
            c.under_out = r(c.under_out);
            out.d.crossings.push_back(c);
        }
        for (auto e : src.d.edges) {
            e.id = r(e.id);
            for (auto& x : e.arcs) x = r(x);
            out.d.edges.push_back(e);
        }
        for (const auto& [k, v] : src.sigma) out.sigma.emplace(r(k), v);
        for (const auto& [k, v] : src.rho) out.rho.emplace(r(k), v);
        for (const auto& [k, v] : src.iota) out.iota.emplace(r(k), v);
        for (const auto& m : src.marked) out.marked.insert(r(m));
    };
    add(a, "a.");
    add(b, "b.");
    return out;
}

ValidationReport validate(const CyclicTopspinNetwork& net) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    if (net.n < 1) bad("order must be positive");
    std::map<Id, const CEdge*> edges;
    for (const auto& e : net.edges)
        if (!edges.emplace(e.id, &e).second) bad("duplicate edge id " + e.id);
    std::set<Id> vids;
    for (const auto& v : net.vertices)
        if (!vids.insert(v.id).second) bad("duplicate vertex id " + v.id);
    std::map<Id, int> in_uses, out_uses;
    for (const auto& v : net.vertices) {
        for (const auto& e : v.in) {
            auto it = edges.find(e);
            if (it == edges.end()) bad("vertex " + v.id + " references unknown edge " + e);
            else if (it->second->dst != v.id) bad("edge " + e + " listed as incoming at " + v.id + " but ends elsewhere");
            ++in_uses[e];
        }
        for (const auto& e : v.out) {
            auto it = edges.find(e);
            if (it == edges.end()) bad("vertex " + v.id + " references unknown edge " + e);
            else if (it->second->src != v.id) bad("edge " + e + " listed as outgoing at " + v.id + " but starts elsewhere");
            ++out_uses[e];
        }
    }
    for (const auto& e : net.edges) {
        if (e.src && !vids.count(*e.src)) bad("edge " + e.id + " starts at unknown vertex");
        if (e.dst && !vids.count(*e.dst)) bad("edge " + e.id + " ends at unknown vertex");
        if (in_uses[e.id] != (e.dst ? 1 : 0) || out_uses[e.id] != (e.src ? 1 : 0))
            bad("edge " + e.id + " port bookkeeping mismatch");
        auto it = net.sigma.find(e.id);
        if (it == net.sigma.end()) bad("edge " + e.id + " has no cyclic label");
        else if (it->second.n != net.n) bad("cyclic label of edge " + e.id + " has modulus other than n");
        if (!net.rho.count(e.id)) bad("edge " + e.id + " has no rho label");
    }
    for (const auto& v : net.vertices) {
        auto it = net.iota.find(v.id);
        if (it == net.iota.end()) {
            bad("vertex " + v.id + " has no intertwiner");
            continue;
        }
        std::vector<Rep> ins, outs;
        for (const auto& e : v.in)
            if (net.rho.count(e)) ins.push_back(net.rho.at(e));
        for (const auto& e : v.out)
            if (net.rho.count(e)) outs.push_back(net.rho.at(e));
        if (tensor_all(ins) != tensor_all(it->second.domain) || tensor_all(outs) != tensor_all(it->second.codomain))
            bad("signature mismatch at vertex " + v.id);
    }
    if (rep.ok() && !net.degenerate_allowed) {
        auto w = check_cyclic_relations(net);
        for (const auto& f : w.failures) bad("cyclic relation fails at vertex " + f.id);
    }
    return rep;
}

WirtingerReport check_cyclic_relations(const CyclicTopspinNetwork& net) {
    WirtingerReport rep;
    for (const auto& v : net.vertices) {
        long long in = 0, out = 0;
        for (const auto& e : v.in) in += net.sigma.at(e).k;
        for (const auto& e : v.out) out += net.sigma.at(e).k;
        CyclicElement d(net.n, in - out);
        if (d.k != 0) {
            RelationFailure f{"vertex", v.id, std::to_string(CyclicElement(net.n, in).k),
                              std::to_string(CyclicElement(net.n, out).k), d.k};
            rep.failures.push_back(f);
        }
    }
    return rep;
}

long long cyclic_defect_lift(const CyclicTopspinNetwork& net) {
    long long d = 0;
    for (const auto& v : net.vertices) {
        for (const auto& e : v.in) d += net.sigma.at(e).k;
        for (const auto& e : v.out) d -= net.sigma.at(e).k;
    }
    return d;
}

DefectElement wirtinger_defect(const CyclicTopspinNetwork& net) {
    DefectElement out;
    out.cyclic = true;
    out.lift = cyclic_defect_lift(net);
    out.value = CyclicElement(net.n, out.lift);
    return out;
}

DefectElement wirtinger_defect(const TopspinNetwork& net, bool cyclic_mode) {
    DefectElement out;
    if (!cyclic_mode) {
        auto w = check_wirtinger(net);
        if (!w.pass())
            throw Error("defect of a degenerate non-cyclic labeling is undefined (failure at " + w.failures.front().id + ")");
        out.perm = Permutation::identity(net.n);
        return out;
    }
    out.cyclic = true;
    auto k = [&](const Id& arc) {
        int e = cyclic_exponent(net.sigma.at(arc));
        if (e < 0) throw Error("label of arc " + arc + " is not a power of the standard n-cycle");
        return e;
    };
    for (const auto& e : net.d.edges) {
        int first = k(e.arcs.front());
        for (const auto& a : e.arcs)
            if (k(a) != first) throw Error("cyclic label varies along edge " + e.id);
    }
    for (const auto& v : net.d.vertices) {
        for (const auto& a : v.in_arcs) out.lift += k(a);
        for (const auto& a : v.out_arcs) out.lift -= k(a);
    }
    out.value = CyclicElement(net.n, out.lift);
    return out;
}

CyclicTopspinNetwork disjoint_union(const CyclicTopspinNetwork& a, const CyclicTopspinNetwork& b) {
    if (a.n != b.n) throw Error("disjoint union of networks of different order");
    CyclicTopspinNetwork out;
    out.n = a.n;
    out.degenerate_allowed = a.degenerate_allowed || b.degenerate_allowed;
    auto add = [&](const CyclicTopspinNetwork& src, const std::string& pre) {
        auto r = [&](const Id& id) { return pre + id; };
        for (auto v : src.vertices) {
            v.id = r(v.id);
            for (auto& x : v.in) x = r(x);
            for (auto& x : v.out) x = r(x);
            out.vertices.push_back(v);
        }
        for (auto e : src.edges) {
            e.id = r(e.id);
            if (e.src) e.src = r(*e.src);
            if (e.dst) e.dst = r(*e.dst);
            out.edges.push_back(e);
        }
        for (const auto& [k, v] : src.sigma) out.sigma.emplace(r(k), v);
        for (const auto& [k, v] : src.rho) out.rho.emplace(r(k), v);
        for (const auto& [k, v] : src.iota) out.iota.emplace(r(k), v);
        for (const auto& m : src.marked) out.marked.insert(r(m));
    };
    add(a, "a.");
    add(b, "b.");
    return out;
}

}  // namespace tsf
