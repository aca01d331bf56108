// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: tsf_acceptance [criterion numbers...]; no arguments runs all ten.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <tsf/algebra.hpp>
#include <tsf/amplitude.hpp>
#include <tsf/cover.hpp>
#include <tsf/dynamics.hpp>
#include <tsf/error.hpp>
#include <tsf/moves.hpp>
#include <tsf/network_key.hpp>

#include "builders.hpp"
#include "gen.hpp"

using namespace tsf;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

Permutation tr(int n, int i, int j) { return Permutation::transposition(n, i, j); }

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300}); }

Complex coeff(test::Rng& rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    return {d(rng), d(rng)};
}

ConvolutionElement random_element(test::Rng& rng, const std::vector<Morphism>& pool, int terms) {
    ConvolutionElement f;
    f.tag = tag_of(pool.front());
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int k = 0; k < terms; ++k) f.add(pool[pick(rng)], coeff(rng));
    return f;
}

std::vector<Morphism> pair_pool(const std::vector<TopspinNetwork>& nets) {
    std::vector<Morphism> pool;
    for (const auto& s : nets)
        for (const auto& t : nets) pool.push_back(PairMorphism{s, t});
    return pool;
}

// segments ch[i..j] glued right-nested, matching chain_basis
std::vector<Morphism> segment_pool(const std::vector<TopspinFoam>& ch) {
    std::vector<Morphism> pool;
    for (size_t i = 0; i < ch.size(); ++i)
        for (size_t j = i; j + 1 < ch.size() || j == i; ++j) {
            TopspinFoam g = ch[j];
            for (size_t k = j; k-- > i;) g = glue(ch[k], g);
            pool.push_back(g);
            if (j + 1 >= ch.size()) break;
        }
    return pool;
}

std::vector<TopspinFoam> injective_chain(test::Rng& rng, const test::GenOptions& opt, int length) {
    for (;;) {
        auto ch = test::random_foam_chain(rng, test::random_network(rng, opt), length);
        std::set<CanonicalKey> seen{raw_key(ch.front().source.net)};
        bool ok = true;
        for (const auto& f : ch) ok = ok && seen.insert(raw_key(f.target.net)).second;
        if (ok) return ch;
    }
}

test::GenOptions opts(int min_n, int max_n, double mark) {
    test::GenOptions o;
    o.min_n = min_n;
    o.max_n = max_n;
    o.mark_probability = mark;
    return o;
}

// 1
void wirtinger_soundness(Outcome& out) {
    test::Rng rng(1001);
    MoveOptions mo;
    mo.stabilize = true;
    mo.c2_inverse = true;
    long instances = 0;
    std::map<MoveKind, long> per_kind;
    for (int i = 0; i < 500; ++i) {
        auto net = test::random_network(rng, opts(2, 5, 0.3));
        out.require(net.d.arcs.size() <= 8 && net.n <= 5, "generator exceeded n <= 5 or 8 arcs");
        for (const auto& s : successors(net, mo)) {
            ++instances;
            ++per_kind[s.move.kind];
            out.require(validate(s.result.net).ok(), "invalid output of " + s.move.str());
            out.require(check_wirtinger(s.result.net).pass(), "Wirtinger failure after " + s.move.str());
        }
    }
    out.detail << "500 networks, " << instances << " move instances (";
    for (const auto& [k, c] : per_kind) out.detail << to_string(k) << " " << c << " ";
    out.detail << ")";
}

// 2
void trefoil_enumeration(Outcome& out) {
    auto reps = enumerate_representations(test::trefoil_diagram(), 3, true);
    // exhaustive oracle over 3^3 transposition triples, crossing relations written out by hand
    auto ts = all_transpositions(3);
    std::set<std::array<Permutation, 3>> oracle;
    for (const auto& x : ts)
        for (const auto& y : ts)
            for (const auto& z : ts)
                if (compose(z, compose(x, z)) == y && compose(x, compose(y, x)) == z && compose(y, compose(z, y)) == x) oracle.insert({x, y, z});
    std::set<std::array<Permutation, 3>> found;
    int surjective = 0;
    for (const auto& r : reps) {
        std::array<Permutation, 3> t{r.at("a1"), r.at("a2"), r.at("a3")};
        found.insert(t);
        surjective += transitive({t[0], t[1], t[2]}, 3);
    }
    int oracle_surj = 0;
    for (const auto& t : oracle) oracle_surj += t[0] != t[1];
    out.require(reps.size() == 9, "expected 9 assignments");
    out.require(found == oracle, "assignments differ from the oracle");
    out.require(surjective == 6 && oracle_surj == 6, "expected 6 surjective");
    out.detail << reps.size() << " assignments, " << surjective << " surjective, oracle " << oracle.size() << "/" << oracle_surj;
}

// 3
void interchange(Outcome& out) {
    test::Rng rng(1003);
    int n = 0;
    for (; n < 200; ++n) {
        auto g = test::random_grid(rng, 2, 2);
        auto a = delta(g[0][0]), b = delta(g[0][1]), c = delta(g[1][0]), d = delta(g[1][1]);
        auto lhs = star_vertical(star_horizontal(a, b), star_horizontal(c, d));
        auto rhs = star_horizontal(star_vertical(a, c), star_vertical(b, d));
        out.require(lhs.size() == 1, "composite is empty");
        out.require(approx_equal(lhs, rhs, 0.0), "interchange law fails");
    }
    out.detail << n << " quadruples, exact key and value equality";
}

// 4
void amplitude_multiplicativity(Outcome& out) {
    test::Rng rng(1004);
    double worst = 0.0;
    int pairs = 0;
    for (; pairs < 100; ++pairs) {
        auto ch = test::random_foam_chain(rng, test::random_network(rng, opts(2, 5, 0.5)), 2);
        auto g = glue(ch[0], ch[1]);
        for (const auto& m : {trivial_model(0.5), exp_area_model(1.0, 0.5)}) {
            double lhs = normalized_amplitude(g, m), rhs = normalized_amplitude(ch[0], m) * normalized_amplitude(ch[1], m);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            out.require(rel_close(lhs, rhs, 1e-10), "A0 not multiplicative under " + m.name);
        }
    }
    out.detail << pairs << " glued pairs x {trivial, exp-area}, worst relative error " << worst;
}

// 5
void evolution_laws(Outcome& out) {
    test::Rng rng(1005);
    const double s = 0.43, t = -0.77, tol = 1e-10;
    auto model = exp_area_model(0.9, 0.3);
    auto G = [&](GeneratorKind k) {
        Generator g;
        g.kind = k;
        g.model = model;
        return g;
    };
    std::map<GeneratorKind, int> elements, products;
    auto group = [&](const ConvolutionElement& f, GeneratorKind k) {
        auto g = G(k);
        out.require(approx_equal(evolve(f, s + t, g), evolve(evolve(f, s, g), t, g), tol), "group law fails for " + to_string(k));
        ++elements[k];
    };
    using Star = ConvolutionElement (*)(const ConvolutionElement&, const ConvolutionElement&);
    auto compat = [&](Star st, const ConvolutionElement& f, const ConvolutionElement& h, GeneratorKind k, const char* what) {
        auto g = G(k);
        out.require(approx_equal(evolve(st(f, h), t, g), st(evolve(f, t, g), evolve(h, t, g)), tol),
                    std::string(what) + " compatibility fails for " + to_string(k));
        ++products[k];
    };
    using K = GeneratorKind;
    for (int trial = 0; trial < 100; ++trial) {
        // degree 2 keeps every label cyclic, so defect_twist applies everywhere
        std::vector<TopspinNetwork> nets;
        for (int k = 0; k < 3; ++k) nets.push_back(test::random_network(rng, opts(2, 2, 0.6)));
        auto pp = pair_pool(nets);
        auto f = random_element(rng, pp, 3), h = random_element(rng, pp, 3);
        for (auto k : {K::order, K::area, K::amplitude_ratio, K::defect_twist}) {
            group(f, k);
            compat(star_groupoid, f, h, k, "groupoid");
        }

        auto ch = test::random_foam_chain(rng, nets[0], 3);
        auto sp = segment_pool(ch);
        auto a = random_element(rng, sp, 3), b = random_element(rng, sp, 3);
        group(a, K::order);
        for (auto k : {K::order_faces, K::area, K::defect_twist, K::semigroupoid_amplitude}) {
            group(a, k);
            compat(star_semigroupoid, a, b, k, "glue");
        }

        auto grid = test::random_grid(rng, 2, 2, 2);
        auto x = sum(delta(grid[0][0]), delta(grid[0][1], coeff(rng))), y = sum(delta(grid[1][0]), delta(grid[1][1], coeff(rng)));
        auto u = sum(delta(grid[0][0]), delta(grid[1][0], coeff(rng))), v = sum(delta(grid[0][1]), delta(TwoMorphism{}, coeff(rng)));
        group(u, K::order);
        compat(star_horizontal, u, v, K::order, "horizontal");
        for (auto k : {K::order_faces, K::area, K::amplitude_ratio, K::defect_twist}) {
            group(x, k);
            compat(star_vertical, x, y, k, "vertical");
            compat(star_horizontal, u, v, k, "horizontal");
        }
    }
    for (const auto& [k, c] : elements) {
        out.require(c >= 100, "fewer than 100 elements for " + to_string(k));
        out.detail << to_string(k) << " " << c << "/" << products[k] << " ";
    }
    out.detail << "(elements/product checks)";
}

// 6
void order_bookkeeping(Outcome& out) {
    test::Rng rng(1006);
    int pairs = 0;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            for (int rep = 0; rep < 3; ++rep) {
                // the shared core has to fit into both degrees
                auto mid = test::random_core(rng, std::min({n, m, 2}));
                auto c0 = test::random_core(rng, 2), c2 = test::random_core(rng, 2);
                auto x = one_morphism(test::random_datum(rng, c0, 2 + rep), test::random_datum(rng, mid, n));
                auto y = one_morphism(test::random_datum(rng, mid, m), test::random_datum(rng, c2, 4 - rep));
                out.require(composable(x, y), "fixture pair not composable");
                auto xy = fibered_product(x, y);
                out.require(xy.middles.at(0).locus.n == n * m, "middle order != n m");
                out.require(xy.left_order() == x.left_order() * y.left_order(), "left order not multiplicative");
                out.require(xy.right_order() == x.right_order() * y.right_order(), "right order not multiplicative");
                ++pairs;
            }
    out.detail << pairs << " composable pairs with n, m in 1..4";
}

// 7
void weighted_euler_checks(Outcome& out) {
    test::Rng rng(1007);
    std::set<long long> chis;
    for (int k = 0; k < 20; ++k) {
        auto ch = test::random_foam_chain(rng, test::random_network(rng, opts(2, 5, 0.0)), 3);
        auto cx = glue(glue(ch[0], ch[1]), ch[2]).cx;
        long long chi = euler_characteristic(cx);
        chis.insert(chi);
        for (long long n : {1, 2, 3, 5}) out.require(weighted_euler(cx, constant_multiplicity(cx, n)) == n * chi, "constant multiplicity identity");
    }
    for (int k = 0; k < 20; ++k) {
        auto core = test::random_core(rng, 2);
        int n = 2 + k % 3, m = 2 + (k / 3) % 3;
        auto x = one_morphism(test::random_datum(rng, core, 2), test::random_datum(rng, core, n));
        auto y = one_morphism(test::random_datum(rng, core, m), test::random_datum(rng, core, 2));
        auto xy = fibered_product(x, y);  // a generic overlay of the two middle loci
        auto sa = cylinder(x.factors[0].right).cx, sb = cylinder(y.factors[0].left).cx;
        auto rand_mult = [&](const TwoComplex& cx, long long ord) {
            std::uniform_int_distribution<long long> pick(1, ord);
            MultiplicityAssignment w;
            for (const auto& f : cx.faces) w.faces[f.id] = pick(rng);
            for (const auto& e : cx.edges) w.edges[e.id] = pick(rng);
            for (const auto& v : cx.vertices) w.vertices[v.id] = pick(rng);
            return w;
        };
        auto wa = rand_mult(sa, n), wb = rand_mult(sb, m);
        auto u = disjoint_union(sa, sb);
        out.require(xy.middles[0].locus.n == n * m, "overlay order");
        out.require(normalized_euler(u, fibered_multiplicity(wa, n, wb, m), static_cast<long long>(n) * m) ==
                        normalized_euler(sa, wa, n) + normalized_euler(sb, wb, m),
                    "normalized additivity");
    }
    out.detail << "20 fixtures (chi values";
    for (auto c : chis) out.detail << " " << c;
    out.detail << "), 20 generic overlays in exact rationals";
}

// 8
void gibbs_kms(Outcome& out) {
    test::Rng rng(1008);
    const double beta = 0.9;
    double worst = 0.0;
    int checks = 0, nonzero = 0;
    size_t largest = 0;
    auto kms = [&](const TruncatedBasis& basis, const std::vector<Morphism>& pool, const Generator& g) {
        largest = std::max(largest, basis.keys.size());
        out.require(basis.keys.size() <= 16, "basis larger than 16");
        for (int k = 0; k < 5; ++k) {
            auto a = random_element(rng, pool, 3), b = random_element(rng, pool, 3);
            // reversed pairs give a nonzero trace
            for (const auto& [key, e] : a.support)
                if (const auto* p = std::get_if<PairMorphism>(&e.morphism)) b.add(PairMorphism{p->target, p->source}, coeff(rng));
            auto ab = star(a, b), bs = star(b, evolve_imaginary(a, beta, g));
            out.require(represent(ab, basis).dropped == 0 && represent(bs, basis).dropped == 0, "composite left the basis");
            // dense-matrix oracle: Tr(A B e^{-beta H}) / Z from the two representing matrices
            auto h = eigenvalues(basis, g);
            Eigen::VectorXcd w(h.size());
            for (size_t i = 0; i < h.size(); ++i) w(i) = std::exp(-beta * h[i]);
            Eigen::MatrixXcd rho = w.asDiagonal();
            Complex oracle = (represent(a, basis).matrix * represent(b, basis).matrix * rho).trace() / rho.trace();
            Complex lhs = gibbs_state(ab, basis, g, beta), rhs = gibbs_state(bs, basis, g, beta);
            double scale = std::max(1.0, std::abs(lhs));
            worst = std::max({worst, std::abs(lhs - rhs) / scale, std::abs(lhs - oracle) / scale});
            out.require(std::abs(lhs - rhs) <= 1e-9 * scale && std::abs(lhs - oracle) <= 1e-9 * scale, "KMS identity");
            ++checks;
            nonzero += std::abs(lhs) > 1e-12;
        }
    };
    auto gen = [](GeneratorKind k, const AmplitudeModel& m) {
        Generator g;
        g.kind = k;
        g.model = m;
        return g;
    };
    for (int trial = 0; trial < 4; ++trial) {
        test::GenOptions o = opts(2, 3, 0.5);
        o.max_arcs = 4;
        auto basis = move_basis(test::random_network(rng, o), 2, 16);
        std::vector<TopspinNetwork> nets;
        for (const auto& m : basis.keys) nets.push_back(std::get<PairMorphism>(m).source);
        for (auto k : {GeneratorKind::order, GeneratorKind::area, GeneratorKind::amplitude_ratio}) kms(basis, pair_pool(nets), gen(k, exp_area_model()));
        auto ch = injective_chain(rng, opts(2, 5, 0.5), 6);
        kms(chain_basis(ch), segment_pool(ch), gen(GeneratorKind::semigroupoid_amplitude, exp_area_model(0.7, 0.2)));
    }
    out.require(nonzero > 0, "every Gibbs value vanished");
    out.detail << checks << " KMS checks (" << nonzero << " with nonzero value) on bases up to size " << largest << ", worst deviation " << worst << "; ";

    // synthetic series: kappa = log 2 makes the multiplicities exactly 2^n
    const double c = 1.0, kappa = std::log(2.0);
    double worst_series = 0.0;
    for (double b : {0.8, 1.0, 1.5, 2.5})
        for (int N : {5, 10, 20, 40}) {
            double r = 2.0 * std::exp(-b * c);
            double closed = (1.0 - std::pow(r, N + 1)) / (1.0 - r);
            double z = partition_function(synthetic_spectrum(c, kappa, N), b);
            worst_series = std::max(worst_series, std::abs(z - closed) / closed);
            out.require(std::abs(z - closed) <= 1e-10 * closed, "synthetic series differs from closed form");
        }
    auto zs = [&](double b, int N) { return partition_function(synthetic_spectrum(c, kappa, N), b); };
    // above kappa/c the increments shrink geometrically, at or below it they never do
    auto increments = [&](double b) {
        std::vector<double> d;
        for (int N = 10; N <= 60; N += 10) d.push_back(zs(b, N) - zs(b, N - 10));
        return d;
    };
    auto above = increments(kappa / c + 0.2), at = increments(kappa / c), below = increments(kappa / c - 0.2);
    bool converges = true, diverges = true;
    for (size_t k = 1; k < above.size(); ++k) {
        converges = converges && above[k] < above[k - 1];
        diverges = diverges && at[k] >= at[k - 1] * (1 - 1e-9) && below[k] > below[k - 1];
    }
    out.require(converges && above.back() < 1e-3, "no convergence above the threshold");
    out.require(diverges, "truncations stay bounded at or below the threshold");
    out.detail << "synthetic worst relative error " << worst_series << ", threshold beta = " << kappa / c;
}

// 9
void certificates(Outcome& out) {
    test::Rng rng(1009);
    int found = 0, replayed = 0, searches = 0;
    SearchBudget budget;
    budget.max_moves = 4;
    budget.max_states = 4000;
    for (int k = 0; k < 40; ++k) {
        auto a = test::random_network(rng, opts(2, 4, 0.0));
        auto b = a;
        std::uniform_int_distribution<int> len(1, 3);
        for (int s = len(rng); s > 0; --s) {
            auto succ = successors(b);
            if (succ.empty()) break;
            b = succ[std::uniform_int_distribution<size_t>(0, succ.size() - 1)(rng)].result.net;
        }
        ++searches;
        auto r = equivalence_search(a, b, budget);
        if (!r.certificate) continue;
        ++found;
        auto rep = verify_certificate(a, *r.certificate, b);
        replayed += rep.ok;
        out.require(rep.ok, "certificate replay: " + rep.message);
        out.require(r.certificate->keys.back() == fnv1a_hex(canonical_key(b).form), "certificate ends elsewhere");
    }
    out.require(found > 0, "no certificate found");

    std::map<MoveKind, int> rounds;
    MoveOptions mo;
    mo.v1_max_order = 3;
    for (int guard = 0; guard < 20000; ++guard) {
        bool done = true;
        for (auto k : {MoveKind::V1, MoveKind::V2, MoveKind::C1, MoveKind::C2}) done = done && rounds[k] >= 200;
        if (done) break;
        auto net = test::random_network(rng, opts(2, 4, 0.0));
        // V2 sites are identity vertices; insert some first
        if (guard % 2) {
            for (const auto& s : successors(net, mo))
                if (s.move.kind == MoveKind::V2_inverse) {
                    net = s.result.net;
                    break;
                }
        }
        for (const auto& s : successors(net, mo)) {
            auto k = s.move.kind;
            if (k != MoveKind::V1 && k != MoveKind::V2 && k != MoveKind::C1 && k != MoveKind::C2) continue;
            if (rounds[k] >= 200) continue;
            auto back = apply_move(s.result.net, s.result.inverse);
            out.require(canonical_key(back) == canonical_key(net), "round trip fails for " + s.move.str());
            ++rounds[k];
        }
    }
    for (auto k : {MoveKind::V1, MoveKind::V2, MoveKind::C1, MoveKind::C2}) out.require(rounds[k] >= 200, "fewer than 200 " + to_string(k));
    out.detail << replayed << "/" << found << " certificates replay (" << searches << " searches); round trips";
    for (const auto& [k, c] : rounds) out.detail << " " << to_string(k) << " " << c;
}

// 10
void area_eigenvalues(Outcome& out) {
    const std::array<std::pair<double, double>, 3> cases{{{0.5, std::sqrt(3.0) / 2}, {1.0, std::sqrt(2.0)}, {1.5, std::sqrt(15.0) / 2}}};
    for (const auto& [j, expected] : cases) {
        auto net = test::single_edge(2, Rep::spin(j));
        double a = area_operator(net, {{"e", 1.0}});
        net.marked.insert("e");
        double m = marked_area(net, 1.0);
        out.require(std::abs(a - expected) <= 1e-12 && std::abs(m - expected) <= 1e-12, "area eigenvalue");
        out.detail << "j=" << j << ": " << a << " ";
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all{
        {1, "Wirtinger soundness of moves", 30, wirtinger_soundness},
        {2, "trefoil enumeration", 1, trefoil_enumeration},
        {3, "interchange law", 60, interchange},
        {4, "amplitude multiplicativity", 30, amplitude_multiplicativity},
        {5, "evolution laws", 60, evolution_laws},
        {6, "order bookkeeping", 1, order_bookkeeping},
        {7, "weighted Euler characteristic", 1, weighted_euler_checks},
        {8, "Gibbs/KMS numerics", 30, gibbs_kms},
        {9, "certificate integrity", 60, certificates},
        {10, "area eigenvalues", 1, area_eigenvalues},
    };
    std::set<int> only;
    for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail << "; over the " << c.budget_s << " s budget";
        }
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
