#include "gen.hpp"

#include <algorithm>
#include <set>

#include <tsf/error.hpp>
#include <tsf/moves.hpp>

namespace tsf::test {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

PlanarGraphDiagram random_diagram(Rng& rng, const GenOptions& opt) {
    PlanarGraphDiagram d;
    int nv = uniform(rng, 0, opt.max_vertices);
    int ne = uniform(rng, 1, std::min(4, opt.max_arcs));
    int nc = uniform(rng, 0, opt.max_arcs - ne);
    for (int i = 0; i < nv; ++i) d.vertices.push_back({"v" + std::to_string(i), {}, {}});
    for (int i = 0; i < ne; ++i) {
        Id e = "e" + std::to_string(i), a = "a" + std::to_string(i);
        d.arcs.push_back({a, e});
        d.edges.push_back({e, {a}});
        if (nv > 0 && !coin(rng, 0.2)) {
            d.vertices[uniform(rng, 0, nv - 1)].out_arcs.push_back(a);
            d.vertices[uniform(rng, 0, nv - 1)].in_arcs.push_back(a);
        }
    }
    int next_arc = ne;
    for (int c = 0; c < nc; ++c) {
        DEdge& e = d.edges[uniform(rng, 0, ne - 1)];
        size_t k = uniform(rng, 0, static_cast<int>(e.arcs.size()) - 1);
        Id x = e.arcs[k];
        bool circle = d.is_circle(e.id);
        bool closed_single = circle && e.arcs.size() == 1 && !d.crossing_ending(x);
        DCrossing cr{"c" + std::to_string(c), "", x, x, uniform(rng, 0, 1) ? 1 : -1};
        if (!closed_single) {
            Id x2 = "a" + std::to_string(next_arc++);
            for (auto& y : d.crossings)
                if (y.under_in == x) y.under_in = x2;
            for (auto& v : d.vertices) std::replace(v.in_arcs.begin(), v.in_arcs.end(), x, x2);
            d.arcs.push_back({x2, e.id});
            e.arcs.insert(e.arcs.begin() + k + 1, x2);
            cr.under_out = x2;
        }
        cr.over = d.arcs[uniform(rng, 0, static_cast<int>(d.arcs.size()) - 1)].id;
        d.crossings.push_back(cr);
    }
    return d;
}

}  // namespace

Permutation random_permutation(Rng& rng, int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    std::shuffle(v.begin(), v.end(), rng);
    return Permutation(v);
}

std::optional<std::map<Id, Permutation>> random_labels(Rng& rng, const PlanarGraphDiagram& d, int n, long budget) {
    std::vector<Id> order;
    for (const auto& e : d.edges)
        for (const auto& a : e.arcs) order.push_back(a);
    std::map<Id, size_t> pos;
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    // constraint index: checked once its last arc is assigned
    std::vector<std::vector<const DCrossing*>> cross_at(order.size());
    std::vector<std::vector<const DVertex*>> vert_at(order.size());
    for (const auto& c : d.crossings) cross_at[std::max({pos[c.over], pos[c.under_in], pos[c.under_out]})].push_back(&c);
    for (const auto& v : d.vertices) {
        size_t last = 0;
        bool any = false;
        for (const auto* ports : {&v.in_arcs, &v.out_arcs})
            for (const auto& a : *ports) {
                last = std::max(last, pos[a]);
                any = true;
            }
        if (any) vert_at[last].push_back(&v);
    }
    std::vector<Permutation> pool = all_transpositions(n);
    std::map<Id, Permutation> cur;
    long nodes = 0;
    auto rec = [&](auto&& self, size_t k) -> bool {
        if (k == order.size()) return true;
        if (++nodes > budget) return false;
        std::vector<Permutation> cands = pool;
        std::shuffle(cands.begin(), cands.end(), rng);
        cands.push_back(Permutation::identity(n));
        for (const auto& p : cands) {
            cur[order[k]] = p;
            bool ok = true;
            for (const auto* c : cross_at[k])
                if (crossing_image(cur.at(c->under_in), cur.at(c->over), c->sign) != cur.at(c->under_out)) ok = false;
            for (const auto* v : vert_at[k]) {
                Permutation acc = Permutation::identity(n);
                for (const auto& a : v->in_arcs) acc = compose(acc, cur.at(a));
                for (const auto& a : v->out_arcs) acc = compose(acc, inverse(cur.at(a)));
                if (!acc.is_identity()) ok = false;
            }
            if (ok && self(self, k + 1)) return true;
            if (nodes > budget) return false;
        }
        cur.erase(order[k]);
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return cur;
}

TopspinNetwork random_network(Rng& rng, const GenOptions& opt) {
    const std::vector<Rep> reps = {Rep::spin(0), Rep::spin(0.5), Rep::spin(1), Rep({0, 2}), Rep({1, 1})};
    for (;;) {
        TopspinNetwork net;
        net.n = uniform(rng, opt.min_n, opt.max_n);
        net.d = random_diagram(rng, opt);
        auto labels = random_labels(rng, net.d, net.n);
        if (!labels) continue;
        net.sigma = *labels;
        bool uniform_rho = coin(rng, 0.5);
        Rep common = reps[uniform(rng, 1, 3)];
        for (const auto& e : net.d.edges) {
            net.rho[e.id] = uniform_rho ? common : reps[uniform(rng, 0, static_cast<int>(reps.size()) - 1)];
            if (coin(rng, opt.mark_probability)) net.marked.insert(e.id);
        }
        for (const auto& v : net.d.vertices) {
            auto [ins, outs] = port_reps(net, v.id);
            bool pass_through = ins.size() == 2 && outs.size() == 2 && ins[0] == outs[1] && ins[1] == outs[0];
            if (pass_through && coin(rng, 0.5))
                net.iota[v.id] = Intertwiner{"id", true, ins, ins};
            else
                net.iota[v.id] = Intertwiner{"i" + v.id, false, ins, outs};
        }
        if (!validate(net).ok() || !check_wirtinger(net).pass()) continue;
        int k = uniform(rng, 0, opt.scramble_moves);
        MoveOptions mo;
        mo.v1_max_order = 3;
        mo.destabilize = false;  // keeps the requested order
        for (int i = 0; i < k; ++i) {
            auto succ = successors(net, mo);
            std::erase_if(succ, [&](const Successor& s) { return s.result.net.d.arcs.size() > static_cast<size_t>(opt.max_arcs); });
            if (succ.empty()) break;
            net = succ[uniform(rng, 0, static_cast<int>(succ.size()) - 1)].result.net;
        }
        if (!validate(net).ok() || !check_wirtinger(net).pass()) continue;
        return net;
    }
}

TopspinNetwork extend_labels(const TopspinNetwork& net, int n) {
    TopspinNetwork out = net;
    out.n = n;
    for (auto& [a, s] : out.sigma) s = extend_degree(s, n);
    return out;
}

TopspinNetwork random_core(Rng& rng, int n) {
    GenOptions opt;
    opt.min_n = opt.max_n = n;
    opt.max_arcs = 6;
    opt.max_vertices = 2;
    opt.mark_probability = 1.0;
    opt.scramble_moves = 1;
    return random_network(rng, opt);
}

TopspinNetwork random_datum(Rng& rng, const TopspinNetwork& core, int n, bool with_extra) {
    auto base = extend_labels(core, n);
    if (!with_extra) return base;
    GenOptions opt;
    opt.min_n = opt.max_n = n;
    opt.max_arcs = 5;
    opt.max_vertices = 2;
    opt.scramble_moves = 1;
    return disjoint_union(base, random_network(rng, opt));
}

TopspinFoam random_elementary(Rng& rng, const TopspinNetwork& net) {
    std::vector<Id> contractible;
    for (const auto& e : net.d.edges) {
        auto u = net.d.edge_src(e.id), w = net.d.edge_dst(e.id);
        if (!u || *u == *w || e.arcs.size() != 1) continue;
        bool over = std::any_of(net.d.crossings.begin(), net.d.crossings.end(), [&](const DCrossing& c) { return c.over == e.arcs[0]; });
        if (!over) contractible.push_back(e.id);
    }
    std::vector<std::pair<Id, std::vector<Id>>> splittable;
    for (const auto& v : net.d.vertices) {
        std::set<Id> inc;
        for (const auto& e : net.d.in_edges(v.id)) inc.insert(e);
        for (const auto& e : net.d.out_edges(v.id)) inc.insert(e);
        if (inc.size() < 2) continue;
        std::vector<Id> all(inc.begin(), inc.end()), part;
        std::shuffle(all.begin(), all.end(), rng);
        part.assign(all.begin(), all.begin() + uniform(rng, 1, static_cast<int>(all.size()) - 1));
        splittable.emplace_back(v.id, part);
    }
    int pick = uniform(rng, 0, 2);
    if (pick == 1 && !contractible.empty())
        return edge_contraction(net, contractible[uniform(rng, 0, static_cast<int>(contractible.size()) - 1)]);
    if (pick == 2 && !splittable.empty()) {
        const auto& [v, part] = splittable[uniform(rng, 0, static_cast<int>(splittable.size()) - 1)];
        return vertex_splitting(net, v, part);
    }
    return cylinder(net);
}

std::vector<TopspinFoam> random_foam_chain(Rng& rng, const TopspinNetwork& start, int length) {
    std::vector<TopspinFoam> out;
    TopspinNetwork cur = start;
    for (int k = 0; k < length; ++k) {
        out.push_back(random_elementary(rng, cur));
        cur = out.back().target.net;
    }
    return out;
}

std::vector<std::vector<TwoMorphism>> random_grid(Rng& rng, int rows, int cols, int n) {
    if (n == 0) n = uniform(rng, 2, 4);
    auto marked = random_foam_chain(rng, random_core(rng, n), rows);
    GenOptions opt;
    opt.min_n = opt.max_n = n;
    opt.max_arcs = 5;
    opt.max_vertices = 2;
    opt.scramble_moves = 1;
    std::vector<std::vector<TopspinFoam>> extra;
    for (int k = 0; k < 2 * cols; ++k) extra.push_back(random_foam_chain(rng, random_network(rng, opt), rows));
    std::vector<std::vector<TwoMorphism>> grid(rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            grid[r].push_back(two_morphism(disjoint_union(marked[r], extra[2 * c][r]), disjoint_union(marked[r], extra[2 * c + 1][r])));
    return grid;
}

}  // namespace tsf::test
