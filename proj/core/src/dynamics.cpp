#include "tsf/dynamics.hpp"

#include <cmath>
#include <deque>
#include <numbers>

#include "tsf/error.hpp"
#include "tsf/moves.hpp"
#include "tsf/network_key.hpp"

namespace tsf {

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::order: return "order";
        case GeneratorKind::order_faces: return "order_faces";
        case GeneratorKind::area: return "area";
        case GeneratorKind::amplitude_ratio: return "amplitude_ratio";
        case GeneratorKind::defect_twist: return "defect_twist";
        default: return "semigroupoid_amplitude";
    }
}

GeneratorKind generator_kind_from_string(const std::string& s) {
    for (auto k : {GeneratorKind::order, GeneratorKind::order_faces, GeneratorKind::area, GeneratorKind::amplitude_ratio,
                   GeneratorKind::defect_twist, GeneratorKind::semigroupoid_amplitude})
        if (to_string(k) == s) return k;
    if (s == "hamiltonian") return GeneratorKind::semigroupoid_amplitude;
    throw SchemaError("unknown generator kind " + s);
}

double area_operator(const TopspinNetwork& net, const std::map<Id, double>& N, double hbar) {
    double s = 0.0;
    for (const auto& e : net.d.edges) {
        auto it = N.find(e.id);
        if (it == N.end()) throw Error("multiplicity N undefined on edge " + e.id);
        if (it->second != 0.0) s += it->second * area_term(net.rho.at(e.id));
    }
    return hbar * s;
}

double marked_area(const TopspinNetwork& net, double hbar) {
    std::map<Id, double> N;
    for (const auto& e : net.d.edges) N[e.id] = net.marked.count(e.id) ? 1.0 : 0.0;
    return area_operator(net, N, hbar);
}

namespace {

int exponent(const Permutation& p, const Id& where) {
    int k = cyclic_exponent(p);
    if (k < 0) throw Error("defect_twist needs cyclic labels; " + where + " carries " + p.str());
    return k;
}

// vertex defect over marked ports only
long long marked_lift(const TopspinNetwork& net) {
    long long lift = 0;
    auto marked = [&](const Id& a) { return net.marked.count(net.d.edge_of(a)) > 0; };
    for (const auto& v : net.d.vertices) {
        for (const auto& a : v.in_arcs)
            if (marked(a)) lift += exponent(net.sigma.at(a), a);
        for (const auto& a : v.out_arcs)
            if (marked(a)) lift -= exponent(net.sigma.at(a), a);
    }
    return lift;
}

// edge defect over generic edges, incidences with marked faces only
long long marked_lift(const TopspinFoam& foam) {
    long long lift = 0;
    auto k = [&](const Incidence& inc) {
        const Id& s = foam.cx.face(inc.face)->boundary[inc.slot].strand;
        return exponent(foam.sigma.at(s), s);
    };
    for (const auto& e : foam.cx.edges) {
        if (e.kind == "slice") continue;
        for (const auto& i : e.in)
            if (foam.marked_faces.count(i.face)) lift += k(i);
        for (const auto& i : e.out)
            if (foam.marked_faces.count(i.face)) lift -= k(i);
    }
    return lift;
}

double twist(long long lift, int n) { return 2.0 * std::numbers::pi * static_cast<double>(lift) / n; }

[[noreturn]] void inapplicable(const Generator& g, const char* what) {
    throw Error("inapplicable generator: " + to_string(g.kind) + " on " + what);
}

double foam_charge(const TopspinFoam& f, const Generator& gen) {
    switch (gen.kind) {
        case GeneratorKind::order: return std::log(static_cast<double>(f.n));
        case GeneratorKind::order_faces: return static_cast<double>(f.marked_faces.size()) * std::log(static_cast<double>(f.n));
        case GeneratorKind::area: return marked_area(f.source.net, gen.hbar) - marked_area(f.target.net, gen.hbar);
        case GeneratorKind::defect_twist: return twist(marked_lift(f), f.n);
        case GeneratorKind::semigroupoid_amplitude: return std::log(marked_normalized_amplitude(f, gen.model));
        default: inapplicable(gen, "a single foam (ratio generators need pairs)");
    }
}

double cell_charge(const TwoCell& c, const Generator& gen) {
    switch (gen.kind) {
        case GeneratorKind::amplitude_ratio:
            return std::log(marked_normalized_amplitude(c.left, gen.model)) - std::log(marked_normalized_amplitude(c.right, gen.model));
        case GeneratorKind::defect_twist: return twist(marked_lift(c.left), c.left.n) - twist(marked_lift(c.right), c.right.n);
        case GeneratorKind::semigroupoid_amplitude: inapplicable(gen, "a 2-morphism");
        default: return foam_charge(c.left, gen);
    }
}

double pair_charge(const PairMorphism& p, const Generator& gen) {
    auto c = [&](const TopspinNetwork& net) {
        switch (gen.kind) {
            case GeneratorKind::order: return std::log(static_cast<double>(net.n));
            case GeneratorKind::area: return marked_area(net, gen.hbar);
            case GeneratorKind::amplitude_ratio: return std::log(marked_network_amplitude(net, gen.model));
            case GeneratorKind::defect_twist: return twist(marked_lift(net), net.n);
            default: inapplicable(gen, "a pair of networks");
        }
    };
    return c(p.source) - c(p.target);
}

}  // namespace

double charge(const Morphism& m, const Generator& gen) {
    if (const auto* p = std::get_if<PairMorphism>(&m)) return pair_charge(*p, gen);
    if (const auto* f = std::get_if<TopspinFoam>(&m)) return foam_charge(*f, gen);
    double s = 0.0;
    for (const auto& c : std::get<TwoMorphism>(m).cells) s += cell_charge(c, gen);
    return s;
}

ConvolutionElement evolve(const ConvolutionElement& f, double t, const Generator& gen) {
    ConvolutionElement out;
    out.tag = f.tag;
    for (const auto& [k, e] : f.support) out.add(k, e.morphism, e.value * std::polar(1.0, t * charge(e.morphism, gen)));
    return out;
}

ConvolutionElement evolve_imaginary(const ConvolutionElement& f, double beta, const Generator& gen) {
    ConvolutionElement out;
    out.tag = f.tag;
    for (const auto& [k, e] : f.support) out.add(k, e.morphism, e.value * std::exp(-beta * charge(e.morphism, gen)));
    return out;
}

bool TruncatedBasis::insert(const Morphism& m) {
    if (tag_of(m) != tag) throw Error("tag mismatch in basis");
    auto k = morphism_key(m);
    if (index_.count(k)) return false;
    index_[k] = static_cast<int>(keys.size());
    keys.push_back(m);
    return true;
}

int TruncatedBasis::index_of(const CanonicalKey& k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

TruncatedBasis move_basis(const TopspinNetwork& psi0, int max_moves, int max_size) {
    TruncatedBasis b;
    b.tag = AlgebraTag::groupoid;
    b.rule = "covering moves from the base network";
    b.bound = max_moves;
    std::deque<std::pair<TopspinNetwork, int>> queue{{psi0, 0}};
    b.insert(PairMorphism{psi0, psi0});
    while (!queue.empty() && static_cast<int>(b.keys.size()) < max_size) {
        auto [net, depth] = queue.front();
        queue.pop_front();
        if (depth >= max_moves) continue;
        for (const auto& s : successors(net, MoveOptions{})) {
            if (static_cast<int>(b.keys.size()) >= max_size) break;
            if (b.insert(PairMorphism{s.result.net, psi0})) queue.emplace_back(s.result.net, depth + 1);
        }
    }
    return b;
}

TruncatedBasis chain_basis(const std::vector<TopspinFoam>& chain) {
    if (chain.empty()) throw Error("empty chain");
    TruncatedBasis b;
    b.tag = AlgebraTag::semigroupoid;
    b.rule = "suffixes of a glued chain";
    b.bound = static_cast<int>(chain.size());
    std::vector<TopspinFoam> suffix{chain.back()};
    for (size_t k = chain.size() - 1; k-- > 0;) suffix.push_back(glue(chain[k], suffix.back()));
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) b.insert(*it);
    return b;
}

Representation represent(const ConvolutionElement& f, const TruncatedBasis& basis) {
    if (basis.keys.empty()) throw Error("empty basis");
    if (f.tag != basis.tag) throw Error("tag mismatch between element and basis");
    int n = static_cast<int>(basis.keys.size());
    Representation r;
    r.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [k, e] : f.support)
        for (int j = 0; j < n; ++j) {
            auto m = product(e.morphism, basis.keys[j]);
            if (!m) continue;
            int i = basis.index_of(morphism_key(*m));
            if (i < 0)
                ++r.dropped;
            else
                r.matrix(i, j) += e.value;
        }
    return r;
}

std::vector<double> eigenvalues(const TruncatedBasis& basis, const Generator& gen) {
    std::vector<double> h;
    for (const auto& m : basis.keys) h.push_back(charge(m, gen));
    return h;
}

namespace {

double checked(double z, double beta) {
    if (!std::isfinite(z)) throw Error("partition function overflows at beta=" + std::to_string(beta));
    if (z < 1e-300) throw Error("partition function below the floating-point floor at beta=" + std::to_string(beta));
    return z;
}

}  // namespace

double partition_function(const std::vector<double>& h, double beta) {
    if (!(beta > 0)) throw Error("beta must be positive");
    double z = 0.0;
    for (double x : h) z += std::exp(-beta * x);
    return checked(z, beta);
}

double partition_function(const TruncatedBasis& basis, const Generator& gen, double beta) {
    return partition_function(eigenvalues(basis, gen), beta);
}

Complex gibbs_state(const Eigen::MatrixXcd& a, const std::vector<double>& h, double beta) {
    double z = partition_function(h, beta);
    Complex tr = 0.0;
    for (int k = 0; k < a.rows(); ++k) tr += a(k, k) * std::exp(-beta * h[k]);
    return tr / z;
}

Complex gibbs_state(const ConvolutionElement& f, const TruncatedBasis& basis, const Generator& gen, double beta) {
    return gibbs_state(represent(f, basis).matrix, eigenvalues(basis, gen), beta);
}

std::vector<Level> synthetic_spectrum(double c, double kappa, int N) {
    std::vector<Level> out;
    for (int n = 0; n <= N; ++n) {
        double x = std::exp(kappa * n);
        double r = std::nearbyint(x);
        // exp(n log 2) may land one ulp above an integer
        double m = std::abs(x - r) <= 1e-9 * x ? r : std::ceil(x);
        out.push_back({c * n, m});
    }
    return out;
}

double partition_function(const std::vector<Level>& levels, double beta) {
    if (!(beta > 0)) throw Error("beta must be positive");
    double z = 0.0;
    for (const auto& l : levels) z += l.multiplicity * std::exp(-beta * l.h);
    return checked(z, beta);
}

std::pair<double, double> synthetic_bounds(double c, double kappa, int N, double beta) {
    auto geom = [N](double r) { return r == 1.0 ? N + 1.0 : (1.0 - std::pow(r, N + 1)) / (1.0 - r); };
    double lo = geom(std::exp(kappa - beta * c));
    return {lo, lo + geom(std::exp(-beta * c))};
}

}  // namespace tsf
