#include "tsf/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tsf/error.hpp"
#include "tsf/network_key.hpp"

namespace tsf {

namespace {

TopspinNetwork extended(const TopspinNetwork& net, int degree) {
    TopspinNetwork out = net;
    out.n = degree;
    for (auto& [a, s] : out.sigma) s = extend_degree(s, degree);
    return out;
}

TopspinFoam extended(const TopspinFoam& foam, int degree) {
    if (degree == foam.n) return foam;
    TopspinFoam out = foam;
    out.n = degree;
    for (auto& [s, p] : out.sigma) p = extend_degree(p, degree);
    out.source.net = extended(out.source.net, degree);
    out.target.net = extended(out.target.net, degree);
    for (auto& s : out.interior) s.net = extended(s.net, degree);
    return out;
}

}  // namespace

TwoMorphism two_morphism(const TopspinFoam& left, const TopspinFoam& right) {
    for (const auto* f : {&left, &right}) {
        auto v = validate(*f);
        if (!v.ok()) throw Error("invalid foam: " + v.violations.front());
    }
    return TwoMorphism{{TwoCell{left, right}}};
}

bool horizontally_composable(const TwoMorphism& a, const TwoMorphism& b) {
    if (a.is_unit() || b.is_unit()) return true;
    const auto& x = a.cells.back().right;
    const auto& y = b.cells.front().left;
    int n = std::max(x.n, y.n);
    return foam_marked_key(extended(x, n)) == foam_marked_key(extended(y, n));
}

TwoMorphism horizontal_product(const TwoMorphism& a, const TwoMorphism& b) {
    if (!horizontally_composable(a, b)) throw Error("boundary mismatch: marked subcomplexes differ");
    TwoMorphism out = a;
    out.cells.insert(out.cells.end(), b.cells.begin(), b.cells.end());
    return out;
}

TwoMorphism vertical_product(const TwoMorphism& a, const TwoMorphism& b) {
    if (a.cells.size() != b.cells.size()) throw Error("boundary mismatch: chains of different length");
    TwoMorphism out;
    for (size_t k = 0; k < a.cells.size(); ++k)
        out.cells.push_back({glue(a.cells[k].left, b.cells[k].left), glue(a.cells[k].right, b.cells[k].right)});
    return out;
}

long long order(const TwoMorphism& w) {
    long long n = 1;
    for (const auto& c : w.cells) n *= c.left.n;
    return n;
}

std::string to_string(AlgebraTag t) {
    switch (t) {
        case AlgebraTag::groupoid: return "groupoid";
        case AlgebraTag::semigroupoid: return "semigroupoid";
        default: return "two_semigroupoid";
    }
}

AlgebraTag algebra_tag_from_string(const std::string& s) {
    if (s == "groupoid") return AlgebraTag::groupoid;
    if (s == "semigroupoid") return AlgebraTag::semigroupoid;
    if (s == "two_semigroupoid") return AlgebraTag::two_semigroupoid;
    throw SchemaError("unknown algebra tag " + s);
}

AlgebraTag tag_of(const Morphism& m) {
    switch (m.index()) {
        case 0: return AlgebraTag::groupoid;
        case 1: return AlgebraTag::semigroupoid;
        default: return AlgebraTag::two_semigroupoid;
    }
}

CanonicalKey morphism_key(const Morphism& m) {
    if (const auto* p = std::get_if<PairMorphism>(&m)) return {"P(" + canonical_key(p->source).form + "|" + canonical_key(p->target).form + ")"};
    if (const auto* f = std::get_if<TopspinFoam>(&m)) return foam_key(*f);
    const auto& w = std::get<TwoMorphism>(m);
    std::string s = "W(";
    for (size_t k = 0; k < w.cells.size(); ++k) {
        if (k) s += ";";
        s += "[" + foam_key(w.cells[k].left).form + "|" + foam_key(w.cells[k].right).form + "]";
    }
    return {s + ")"};
}

void ConvolutionElement::add(const Morphism& m, Complex v) { add(morphism_key(m), m, v); }

void ConvolutionElement::add(const CanonicalKey& key, const Morphism& m, Complex v) {
    if (tag_of(m) != tag) throw Error("tag mismatch: " + to_string(tag_of(m)) + " morphism in a " + to_string(tag) + " element");
    auto it = support.find(key);
    if (it == support.end()) {
        if (v != Complex(0.0)) support.emplace(key, Entry{m, v});
        return;
    }
    it->second.value += v;
    if (it->second.value == Complex(0.0)) support.erase(it);
}

Complex ConvolutionElement::at(const CanonicalKey& key) const {
    auto it = support.find(key);
    return it == support.end() ? Complex(0.0) : it->second.value;
}

ConvolutionElement delta(const Morphism& m, Complex v) {
    ConvolutionElement f;
    f.tag = tag_of(m);
    f.add(m, v);
    return f;
}

ConvolutionElement sum(const ConvolutionElement& f, const ConvolutionElement& g) {
    if (f.tag != g.tag) throw Error("tag mismatch");
    ConvolutionElement out = f;
    for (const auto& [k, e] : g.support) out.add(k, e.morphism, e.value);
    return out;
}

ConvolutionElement scaled(const ConvolutionElement& f, Complex c) {
    ConvolutionElement out;
    out.tag = f.tag;
    for (const auto& [k, e] : f.support) out.add(k, e.morphism, e.value * c);
    return out;
}

bool approx_equal(const ConvolutionElement& f, const ConvolutionElement& g, double tol) {
    if (f.tag != g.tag || f.size() != g.size()) return false;
    for (const auto& [k, e] : f.support) {
        auto it = g.support.find(k);
        if (it == g.support.end()) return false;
        double scale = std::max(1.0, std::abs(e.value));
        if (std::abs(e.value - it->second.value) > tol * scale) return false;
    }
    return true;
}

std::optional<Morphism> compose(const PairMorphism& a, const PairMorphism& b) {
    if (canonical_key(a.target) != canonical_key(b.source)) return std::nullopt;
    return PairMorphism{a.source, b.target};
}

std::optional<Morphism> compose_glue(const TopspinFoam& a, const TopspinFoam& b) {
    if (a.n != b.n || raw_key(a.target.net) != raw_key(b.source.net)) return std::nullopt;
    return glue(a, b);
}

std::optional<Morphism> compose_vertical(const TwoMorphism& a, const TwoMorphism& b) {
    if (a.cells.size() != b.cells.size()) return std::nullopt;
    for (size_t k = 0; k < a.cells.size(); ++k) {
        const auto& x = a.cells[k];
        const auto& y = b.cells[k];
        if (x.left.n != y.left.n || x.right.n != y.right.n) return std::nullopt;
        if (raw_key(x.left.target.net) != raw_key(y.left.source.net)) return std::nullopt;
        if (raw_key(x.right.target.net) != raw_key(y.right.source.net)) return std::nullopt;
    }
    return vertical_product(a, b);
}

std::optional<Morphism> compose_horizontal(const TwoMorphism& a, const TwoMorphism& b) {
    if (!horizontally_composable(a, b)) return std::nullopt;
    return horizontal_product(a, b);
}

std::optional<Morphism> product(const Morphism& a, const Morphism& b) {
    if (a.index() != b.index()) throw Error("tag mismatch");
    if (const auto* p = std::get_if<PairMorphism>(&a)) return compose(*p, std::get<PairMorphism>(b));
    if (const auto* f = std::get_if<TopspinFoam>(&a)) return compose_glue(*f, std::get<TopspinFoam>(b));
    return compose_vertical(std::get<TwoMorphism>(a), std::get<TwoMorphism>(b));
}

namespace {

std::atomic<int> g_threads{0};

using PairProduct = std::optional<Morphism> (*)(const Morphism&, const Morphism&);

// all support pairs are composed concurrently; accumulation runs in key order
ConvolutionElement convolve(const ConvolutionElement& f, const ConvolutionElement& g, AlgebraTag tag, PairProduct op) {
    if (f.tag != tag || g.tag != tag) throw Error("tag mismatch: expected " + to_string(tag) + " elements");
    std::vector<std::pair<const Entry*, const Entry*>> pairs;
    for (const auto& [kf, ef] : f.support)
        for (const auto& [kg, eg] : g.support) pairs.emplace_back(&ef, &eg);
    std::vector<std::optional<Morphism>> results(pairs.size());
    size_t hw = g_threads > 0 ? static_cast<size_t>(g_threads) : std::max(1u, std::thread::hardware_concurrency());
    size_t workers = std::min<size_t>(hw, pairs.size() / 8 + 1);
    auto work = [&](size_t w) {
        for (size_t k = w; k < pairs.size(); k += workers) results[k] = op(pairs[k].first->morphism, pairs[k].second->morphism);
    };
    std::vector<std::thread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();
    ConvolutionElement out;
    out.tag = tag;
    for (size_t k = 0; k < pairs.size(); ++k)
        if (results[k]) out.add(*results[k], pairs[k].first->value * pairs[k].second->value);
    return out;
}

std::optional<Morphism> op_pair(const Morphism& a, const Morphism& b) { return product(a, b); }

std::optional<Morphism> op_horizontal(const Morphism& a, const Morphism& b) {
    return compose_horizontal(std::get<TwoMorphism>(a), std::get<TwoMorphism>(b));
}

}  // namespace

void set_convolution_threads(int n) { g_threads = std::max(0, n); }

ConvolutionElement star_groupoid(const ConvolutionElement& f, const ConvolutionElement& g) {
    return convolve(f, g, AlgebraTag::groupoid, op_pair);
}

ConvolutionElement star_semigroupoid(const ConvolutionElement& f, const ConvolutionElement& g) {
    return convolve(f, g, AlgebraTag::semigroupoid, op_pair);
}

ConvolutionElement star_vertical(const ConvolutionElement& f, const ConvolutionElement& g) {
    return convolve(f, g, AlgebraTag::two_semigroupoid, op_pair);
}

ConvolutionElement star_horizontal(const ConvolutionElement& f, const ConvolutionElement& g) {
    return convolve(f, g, AlgebraTag::two_semigroupoid, op_horizontal);
}

ConvolutionElement star(const ConvolutionElement& f, const ConvolutionElement& g) {
    if (f.tag != g.tag) throw Error("tag mismatch");
    return convolve(f, g, f.tag, op_pair);
}

}  // namespace tsf
