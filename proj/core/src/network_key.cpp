#include "tsf/network_key.hpp"

#include <algorithm>

#include "tsf/error.hpp"

namespace tsf {

NetworkGraph network_graph(const TopspinNetwork& net, KeyOptions opt) {
    NetworkGraph ng;
    const auto& d = net.d;
    std::map<Id, int> arc_node, edge_node, vertex_node;
    std::set<Id> keep_edges;
    for (const auto& e : d.edges)
        if (!opt.marked_only || net.marked.count(e.id)) keep_edges.insert(e.id);
    auto arc_kept = [&](const Id& a) { return keep_edges.count(d.edge_of(a)) > 0; };

    for (const auto& e : d.edges) {
        if (!keep_edges.count(e.id)) continue;
        std::string c = "e";
        if (opt.labels) {
            c += ":" + net.rho.at(e.id).str();
            if (!opt.marked_only && net.marked.count(e.id)) c += "*";
        }
        edge_node[e.id] = ng.g.add_node(c);
        ng.node.emplace_back(CellKind::Edge, e.id);
    }
    for (const auto& a : d.arcs) {
        if (!arc_kept(a.id)) continue;
        std::string c = "a";
        if (opt.labels) c += ":" + net.sigma.at(a.id).images_str();
        int v = ng.g.add_node(c);
        arc_node[a.id] = v;
        ng.node.emplace_back(CellKind::Arc, a.id);
        ng.g.add_edge(v, edge_node.at(a.edge), "m");
    }
    for (const auto& v : d.vertices) {
        std::vector<Id> ins, outs;
        for (const auto& a : v.in_arcs)
            if (arc_kept(a)) ins.push_back(a);
        for (const auto& a : v.out_arcs)
            if (arc_kept(a)) outs.push_back(a);
        if (opt.marked_only && ins.empty() && outs.empty()) continue;
        std::string c = "v";
        if (opt.labels && !opt.marked_only) {
            const auto& io = net.iota.at(v.id);
            c += ":" + io.label + (io.is_identity ? "#id" : "");
        }
        int x = ng.g.add_node(c);
        vertex_node[v.id] = x;
        ng.node.emplace_back(CellKind::Vertex, v.id);
        for (size_t k = 0; k < ins.size(); ++k) ng.g.add_edge(x, arc_node.at(ins[k]), "in#" + std::to_string(k));
        for (size_t k = 0; k < outs.size(); ++k) ng.g.add_edge(x, arc_node.at(outs[k]), "out#" + std::to_string(k));
    }
    for (const auto& cr : d.crossings) {
        if (!arc_kept(cr.under_in)) continue;
        bool over_kept = arc_kept(cr.over);
        std::string c = std::string("x:") + (cr.sign > 0 ? "+" : "-") + (over_kept ? "" : "!");
        int x = ng.g.add_node(c);
        ng.node.emplace_back(CellKind::Crossing, cr.id);
        if (over_kept) ng.g.add_edge(x, arc_node.at(cr.over), "o");
        ng.g.add_edge(x, arc_node.at(cr.under_in), "i");
        ng.g.add_edge(x, arc_node.at(cr.under_out), "u");
    }
    return ng;
}

namespace {

std::string prefix(const TopspinNetwork& net, const char* tag) { return std::string(tag) + "n=" + std::to_string(net.n) + ";"; }

// one normalization step; false when nothing to remove
bool remove_one(TopspinNetwork& net) {
    auto& d = net.d;
    for (const auto& v : d.vertices) {
        if (v.in_arcs.size() != 1 || v.out_arcs.size() != 1) continue;
        const auto& io = net.iota.at(v.id);
        if (!io.is_identity) continue;
        Id a_in = v.in_arcs[0], a_out = v.out_arcs[0];
        Id e1 = d.edge_of(a_in), e2 = d.edge_of(a_out);
        if (net.rho.at(e1) != net.rho.at(e2)) continue;
        if (net.marked.count(e1) != net.marked.count(e2)) continue;
        if (net.sigma.at(a_in) != net.sigma.at(a_out)) continue;
        Id vid = v.id;
        // a_out is absorbed into a_in
        auto subst = [&](Id& x) {
            if (x == a_out) x = a_in;
        };
        for (auto& c : d.crossings) {
            subst(c.over);
            subst(c.under_in);
            subst(c.under_out);
        }
        for (auto& w : d.vertices) {
            for (auto& x : w.in_arcs) subst(x);
            for (auto& x : w.out_arcs) subst(x);
        }
        if (e1 == e2) {
            DEdge* e = d.edge(e1);
            std::vector<Id> chain;
            // loop through the vertex: chain a_out .. a_in becomes a circle starting after a_out
            for (size_t k = 1; k < e->arcs.size(); ++k) chain.push_back(e->arcs[k]);
            if (chain.empty()) chain.push_back(a_in);
            e->arcs = chain;
        } else {
            DEdge* first = d.edge(e1);
            DEdge* second = d.edge(e2);
            std::vector<Id> chain = first->arcs;
            for (size_t k = 1; k < second->arcs.size(); ++k) chain.push_back(second->arcs[k]);
            for (auto& a : d.arcs)
                if (a.edge == e2) a.edge = e1;
            first->arcs = chain;
            d.edges.erase(std::remove_if(d.edges.begin(), d.edges.end(), [&](const DEdge& e) { return e.id == e2; }),
                          d.edges.end());
            net.rho.erase(e2);
            net.marked.erase(e2);
        }
        if (a_out != a_in) {
            d.arcs.erase(std::remove_if(d.arcs.begin(), d.arcs.end(), [&](const DArc& a) { return a.id == a_out; }),
                         d.arcs.end());
            net.sigma.erase(a_out);
        }
        net.iota.erase(vid);
        d.vertices.erase(std::remove_if(d.vertices.begin(), d.vertices.end(), [&](const DVertex& w) { return w.id == vid; }),
                         d.vertices.end());
        return true;
    }
    return false;
}

}  // namespace

TopspinNetwork normalize(const TopspinNetwork& net) {
    TopspinNetwork out = net;
    while (remove_one(out)) {
    }
    return out;
}

CanonicalKey raw_key(const TopspinNetwork& net) { return {prefix(net, "N") + canonicalize(network_graph(net).g).form}; }

CanonicalKey canonical_key(const TopspinNetwork& net) { return raw_key(normalize(net)); }

CanonicalKey shape_key(const TopspinNetwork& net) {
    return {"S" + canonicalize(network_graph(net, {false, false}).g).form};
}

CanonicalKey marked_key(const TopspinNetwork& net) {
    return {prefix(net, "M") + canonicalize(network_graph(net, {true, true}).g).form};
}

CanonicalKey canonical_key(const CyclicTopspinNetwork& net) {
    ColoredGraph g;
    std::map<Id, int> vnode;
    for (const auto& v : net.vertices) {
        const auto& io = net.iota.at(v.id);
        vnode[v.id] = g.add_node("v:" + io.label + (io.is_identity ? "#id" : ""));
    }
    for (const auto& e : net.edges) {
        std::string c = "e:" + std::to_string(net.sigma.at(e.id).k) + ":" + net.rho.at(e.id).str() +
                        (net.marked.count(e.id) ? "*" : "");
        int x = g.add_node(c);
        if (e.src) {
            const auto& outs = std::find_if(net.vertices.begin(), net.vertices.end(), [&](const CVertex& v) { return v.id == *e.src; })->out;
            size_t k = std::find(outs.begin(), outs.end(), e.id) - outs.begin();
            g.add_edge(vnode.at(*e.src), x, "out#" + std::to_string(k));
        }
        if (e.dst) {
            const auto& ins = std::find_if(net.vertices.begin(), net.vertices.end(), [&](const CVertex& v) { return v.id == *e.dst; })->in;
            size_t k = std::find(ins.begin(), ins.end(), e.id) - ins.begin();
            g.add_edge(vnode.at(*e.dst), x, "in#" + std::to_string(k));
        }
    }
    std::string pre = "C" + std::string(net.degenerate_allowed ? "d" : "") + "n=" + std::to_string(net.n) + ";";
    return {pre + canonicalize(g).form};
}

const std::map<Id, Id>& NetworkIso::of(CellKind k) const {
    switch (k) {
        case CellKind::Arc: return arc;
        case CellKind::Edge: return edge;
        case CellKind::Vertex: return vertex;
        default: return crossing;
    }
}

NetworkIso network_isomorphism(const TopspinNetwork& a, const TopspinNetwork& b, KeyOptions opt) {
    if (a.n != b.n) throw Error("networks of different order are not isomorphic");
    auto ga = network_graph(a, opt), gb = network_graph(b, opt);
    auto ca = canonicalize(ga.g), cb = canonicalize(gb.g);
    if (ca.form != cb.form) throw Error("networks are not isomorphic");
    auto m = isomorphism(ca, cb);
    NetworkIso iso;
    for (size_t v = 0; v < m.size(); ++v) {
        const auto& [kind, id] = ga.node[v];
        const auto& [kind_b, id_b] = gb.node[m[v]];
        if (kind != kind_b) throw Error("isomorphism mixes cell kinds");
        switch (kind) {
            case CellKind::Arc: iso.arc[id] = id_b; break;
            case CellKind::Edge: iso.edge[id] = id_b; break;
            case CellKind::Vertex: iso.vertex[id] = id_b; break;
            case CellKind::Crossing: iso.crossing[id] = id_b; break;
        }
    }
    return iso;
}

}  // namespace tsf
