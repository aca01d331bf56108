#include "tsf/canon.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <tuple>

#include "tsf/error.hpp"

namespace tsf {

int ColoredGraph::add_node(std::string c) {
    color.push_back(std::move(c));
    out.emplace_back();
    return size() - 1;
}

void ColoredGraph::add_edge(int from, int to, std::string label) { out[from].emplace_back(to, std::move(label)); }

ColoredGraph ColoredGraph::induced(const std::vector<char>& keep, std::vector<int>* remap) const {
    ColoredGraph g;
    std::vector<int> m(size(), -1);
    for (int v = 0; v < size(); ++v)
        if (keep[v]) m[v] = g.add_node(color[v]);
    for (int v = 0; v < size(); ++v)
        if (keep[v])
            for (const auto& [w, l] : out[v])
                if (keep[w]) g.add_edge(m[v], m[w], l);
    if (remap) *remap = std::move(m);
    return g;
}

namespace {

struct Component {
    int n = 0;
    std::vector<std::string> color;
    std::vector<std::vector<std::pair<int, int>>> out;  // (target, label id)
    std::vector<std::vector<std::pair<int, int>>> in;
    std::vector<std::string> labels;
};

int rerank(std::vector<int>& colors, const std::vector<std::vector<int>>& sigs) {
    std::vector<int> idx(colors.size());
    for (size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sigs[a] < sigs[b]; });
    int rank = -1;
    const std::vector<int>* prev = nullptr;
    for (int v : idx) {
        if (!prev || *prev != sigs[v]) ++rank;
        colors[v] = rank;
        prev = &sigs[v];
    }
    return rank + 1;
}

int refine(const Component& c, std::vector<int>& colors) {
    int classes = 0;
    {
        std::vector<std::vector<int>> s(c.n);
        for (int v = 0; v < c.n; ++v) s[v] = {colors[v]};
        classes = rerank(colors, s);
    }
    while (true) {
        std::vector<std::vector<int>> sigs(c.n);
        for (int v = 0; v < c.n; ++v) {
            std::vector<std::tuple<int, int, int>> nb;
            for (const auto& [w, l] : c.out[v]) nb.emplace_back(0, l, colors[w]);
            for (const auto& [w, l] : c.in[v]) nb.emplace_back(1, l, colors[w]);
            std::sort(nb.begin(), nb.end());
            auto& s = sigs[v];
            s.push_back(colors[v]);
            for (const auto& [d, l, col] : nb) {
                s.push_back(d);
                s.push_back(l);
                s.push_back(col);
            }
        }
        int next = rerank(colors, sigs);
        if (next == classes) return classes;
        classes = next;
    }
}

std::string encode(const Component& c, const std::vector<int>& pos) {
    std::vector<int> at(c.n);
    for (int v = 0; v < c.n; ++v) at[pos[v]] = v;
    std::string s;
    for (int p = 0; p < c.n; ++p) {
        int v = at[p];
        s += c.color[v];
        s += '[';
        std::vector<std::pair<int, int>> e;
        for (const auto& [w, l] : c.out[v]) e.emplace_back(l, pos[w]);
        std::sort(e.begin(), e.end());
        for (const auto& [l, q] : e) {
            s += c.labels[l];
            s += '>';
            s += std::to_string(q);
            s += ';';
        }
        s += ']';
    }
    return s;
}

std::pair<std::string, std::vector<int>> canon_component(const Component& c) {
    std::vector<int> colors(c.n);
    {
        std::vector<std::string> cs = c.color;
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        for (int v = 0; v < c.n; ++v) colors[v] = static_cast<int>(std::lower_bound(cs.begin(), cs.end(), c.color[v]) - cs.begin());
    }
    std::string best;
    std::vector<int> best_pos;
    bool have = false;
    std::function<void(std::vector<int>)> search = [&](std::vector<int> col) {
        int classes = refine(c, col);
        if (classes == c.n) {
            std::string e = encode(c, col);
            if (!have || e < best) {
                best = std::move(e);
                best_pos = col;
                have = true;
            }
            return;
        }
        std::vector<int> size(classes, 0);
        for (int v = 0; v < c.n; ++v) ++size[col[v]];
        int target = -1;
        for (int k = 0; k < classes; ++k)
            if (size[k] > 1 && (target < 0 || size[k] < size[target])) target = k;
        for (int v = 0; v < c.n; ++v) {
            if (col[v] != target) continue;
            std::vector<int> next(c.n);
            for (int w = 0; w < c.n; ++w) next[w] = 2 * col[w] + ((col[w] == target && w != v) ? 1 : 0);
            search(std::move(next));
        }
    };
    search(colors);
    return {best, best_pos};
}

}  // namespace

Canonical canonicalize(const ColoredGraph& g) {
    int n = g.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> und(n);
    for (int v = 0; v < n; ++v)
        for (const auto& [w, l] : g.out[v]) {
            und[v].push_back(w);
            und[w].push_back(v);
        }
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : und[v])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v)
        for (const auto& [w, l] : g.out[v]) labels.push_back(l);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto lid = [&](const std::string& l) { return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin()); };

    std::vector<std::vector<int>> members(ncomp);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    std::vector<int> local(n);
    struct Done {
        std::string enc;
        std::vector<int> nodes;
        std::vector<int> pos;
    };
    std::vector<Done> done;
    for (int k = 0; k < ncomp; ++k) {
        Component c;
        c.n = static_cast<int>(members[k].size());
        c.labels = labels;
        c.out.resize(c.n);
        c.in.resize(c.n);
        for (int t = 0; t < c.n; ++t) local[members[k][t]] = t;
        for (int t = 0; t < c.n; ++t) {
            int v = members[k][t];
            c.color.push_back(g.color[v]);
            for (const auto& [w, l] : g.out[v]) {
                c.out[t].emplace_back(local[w], lid(l));
                c.in[local[w]].emplace_back(t, lid(l));
            }
        }
        auto [enc, pos] = canon_component(c);
        done.push_back({"{" + enc + "}", members[k], pos});
    }
    std::stable_sort(done.begin(), done.end(), [](const Done& a, const Done& b) { return a.enc < b.enc; });
    Canonical out;
    out.position.assign(n, -1);
    int offset = 0;
    for (const auto& d : done) {
        out.form += d.enc;
        for (size_t t = 0; t < d.nodes.size(); ++t) out.position[d.nodes[t]] = offset + d.pos[t];
        offset += static_cast<int>(d.nodes.size());
    }
    return out;
}

std::vector<int> isomorphism(const Canonical& a, const Canonical& b) {
    if (a.form != b.form || a.position.size() != b.position.size()) throw Error("graphs are not isomorphic");
    std::vector<int> at_b(b.position.size());
    for (size_t v = 0; v < b.position.size(); ++v) at_b[b.position[v]] = static_cast<int>(v);
    std::vector<int> m(a.position.size());
    for (size_t v = 0; v < a.position.size(); ++v) m[v] = at_b[a.position[v]];
    return m;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tsf
