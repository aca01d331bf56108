#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <tsf/algebra.hpp>
#include <tsf/amplitude.hpp>
#include <tsf/cover.hpp>
#include <tsf/dynamics.hpp>
#include <tsf/error.hpp>
#include <tsf/io.hpp>
#include <tsf/moves.hpp>
#include <tsf/network_key.hpp>

using namespace tsf;

namespace {

struct Globals {
    std::string output;
    unsigned long long seed = 0;
    int threads = 0;
};

// a check that ran but failed: the report is still emitted, with exit code 1
struct Failed {
    Json report;
};

struct ModelFlags {
    std::string model = "trivial";
    double hbar = 1.0;
    double alpha = 0.0;

    AmplitudeModel build() const { return model_by_name(model, hbar, alpha); }
    void add(CLI::App* app) {
        app->add_option("--model", model, "amplitude model: trivial or exp-area")->capture_default_str();
        app->add_option("--hbar", hbar)->capture_default_str();
        app->add_option("--alpha", alpha, "Euler weight exponent")->capture_default_str();
    }
};

Json load(const std::string& path) {
    auto j = read_json_file(path);
    require_format(j);
    spdlog::debug("read {}", path);
    return j;
}

std::string digest(const CanonicalKey& k) { return fnv1a_hex(k.form); }

Json report(const std::string& command) { return Json{{"format", kFormat}, {"command", command}}; }

void finite(double x, const char* name) {
    if (!std::isfinite(x)) throw SchemaError(std::string("--") + name + " must be finite");
}

Generator generator(const std::string& kind, const ModelFlags& m) {
    Generator g;
    g.kind = generator_kind_from_string(kind);
    g.hbar = m.hbar;
    g.model = m.build();
    return g;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

// commands

Json cmd_check(const std::string& path) {
    auto j = load(path);
    Json r = report("check");
    if (j.value("kind", std::string()) == "cyclic") {
        auto net = cyclic_network_from_json(j);
        auto v = validate(net);
        r["validation"] = to_json(v);
        if (!v.ok()) throw Failed{r};
        auto w = check_cyclic_relations(net);
        r.update(to_json(w));
        auto d = wirtinger_defect(net);
        r["defect_lift"] = d.lift;
        if (!w.pass()) throw Failed{r};
        return r;
    }
    auto net = network_from_json(j);
    auto v = validate(net);
    r["validation"] = to_json(v);
    if (!v.ok()) throw Failed{r};
    auto w = check_wirtinger(net);
    r.update(to_json(w));
    r["n"] = net.n;
    r["canonical_key"] = digest(canonical_key(net));
    r["marked_key"] = digest(marked_key(net));
    if (!w.pass()) {
        std::vector<std::string> where;
        for (const auto& f : w.failures) where.push_back(f.kind + " " + f.id);
        r["error"] = "Wirtinger relations fail at " + join(where);
        throw Failed{r};
    }
    return r;
}

Json cmd_check_foam(const std::string& path) {
    auto foam = foam_from_json(load(path));
    Json r = report("check-foam");
    auto v = validate(foam);
    r["validation"] = to_json(v);
    if (!v.ok()) throw Failed{r};
    r["boundary_squared_zero"] = boundary_squared_zero(foam.cx);
    auto w = check_wirtinger_2d(foam);
    r.update(to_json(w));
    r["euler_characteristic"] = euler_characteristic(foam.cx);
    r["faces"] = foam.cx.faces.size();
    r["marked_faces"] = foam.marked_faces.size();
    r["key"] = digest(foam_key(foam));
    if (!w.pass() || !r["boundary_squared_zero"].get<bool>()) throw Failed{r};
    return r;
}

struct MoveFlags {
    std::string path;
    std::string apply;
    int pick = -1;
    bool random = false;
    bool stabilize = false;
};

Json cmd_move(const MoveFlags& f, const Globals& g) {
    auto net = network_from_json(load(f.path));
    MoveOptions opt;
    opt.stabilize = f.stabilize;
    Json r = report("move");
    std::optional<MoveSpec> chosen;
    if (!f.apply.empty()) {
        chosen = move_from_json(load(f.apply).at("move"));
    } else if (f.pick >= 0 || f.random) {
        auto moves = applicable_moves(net, opt);
        if (moves.empty()) throw Error("no applicable move");
        std::mt19937_64 rng(g.seed);
        size_t k = f.random ? std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng) : static_cast<size_t>(f.pick);
        if (k >= moves.size()) throw Error("move index " + std::to_string(k) + " out of range (" + std::to_string(moves.size()) + " moves)");
        chosen = moves[k];
    }
    if (!chosen) {
        Json ms = Json::array();
        for (const auto& m : applicable_moves(net, opt)) ms.push_back(to_json(m));
        r["count"] = ms.size();
        r["moves"] = ms;
        return r;
    }
    auto res = apply_move_with_inverse(net, *chosen);
    r["move"] = to_json(*chosen);
    r["inverse"] = to_json(res.inverse);
    r["wirtinger"] = check_wirtinger(res.net).pass() ? "pass" : "fail";
    r["canonical_key"] = digest(canonical_key(res.net));
    r["network"] = to_json(res.net);
    return r;
}

struct EquivFlags {
    std::string a, b, certificate;
    SearchBudget budget;
};

Json cmd_equiv(const EquivFlags& f, const Globals& g) {
    auto a = network_from_json(load(f.a));
    auto b = network_from_json(load(f.b));
    Json r = report("equiv");
    if (!f.certificate.empty()) {
        auto rep = verify_certificate(a, certificate_from_json(load(f.certificate)), b);
        r["replay"] = rep.ok ? "pass" : "fail";
        if (!rep.ok) {
            r["failed_step"] = rep.failed_step;
            r["error"] = rep.message;
            throw Failed{r};
        }
        return r;
    }
    auto budget = f.budget;
    budget.threads = g.threads;
    auto res = equivalence_search(a, b, budget);
    r["stats"] = Json{{"states_a", res.stats.states_a}, {"states_b", res.stats.states_b}, {"depth_a", res.stats.depth_a}, {"depth_b", res.stats.depth_b}};
    if (res.certificate) {
        r["result"] = "equivalent";
        r["certificate"] = to_json(*res.certificate);
        r["replay"] = verify_certificate(a, *res.certificate, b).ok ? "pass" : "fail";
    } else {
        r["result"] = "unknown";
        r["reason"] = res.stats.reason;
    }
    return r;
}

Json cmd_compose(const std::string& x, const std::string& y) {
    auto xy = fibered_product(one_morphism_from_json(load(x)), one_morphism_from_json(load(y)));
    Json r = to_json(xy);
    r["command"] = "compose";
    auto outer = [](const OuterMonodromy& o) {
        Json j{{"order", o.order}, {"exact", o.exact}};
        if (o.exact) {
            Json ls = Json::object();
            for (const auto& [k, p] : o.labels) ls[k] = to_json(p);
            j["labels"] = ls;
        }
        return j;
    };
    r["left_outer"] = outer(left_outer(xy));
    r["right_outer"] = outer(right_outer(xy));
    return r;
}

Json cmd_glue(const std::string& a, const std::string& b) {
    auto g = glue(foam_from_json(load(a)), foam_from_json(load(b)));
    Json r = report("glue");
    r["key"] = digest(foam_key(g));
    r["foam"] = to_json(g);
    return r;
}

Json cmd_cylinder(const std::string& path) {
    auto f = cylinder(network_from_json(load(path)));
    Json r = to_json(f);
    r["command"] = "cylinder";
    return r;
}

Json cmd_euler(const std::string& foam_path, const std::string& mult_path, long long order) {
    auto foam = foam_from_json(load(foam_path));
    auto mult = multiplicity_from_json(load(mult_path), foam.cx);
    long long n = order > 0 ? order : foam.n;
    auto chi = normalized_euler(foam.cx, mult, n);
    Json r = report("euler");
    r["euler_characteristic"] = euler_characteristic(foam.cx);
    r["weighted"] = weighted_euler(foam.cx, mult);
    r["n"] = n;
    r["normalized"] = std::to_string(chi.numerator()) + (chi.denominator() == 1 ? "" : "/" + std::to_string(chi.denominator()));
    return r;
}

Json cmd_amplitude(const std::string& path, const ModelFlags& m) {
    auto foam = foam_from_json(load(path));
    auto model = m.build();
    Json r = report("amplitude");
    r["model"] = model.name;
    r["hbar"] = model.hbar;
    r["alpha"] = model.alpha;
    r["amplitude"] = amplitude(foam, model);
    r["normalized"] = normalized_amplitude(foam, model);
    if (!foam.marked_faces.empty()) r["marked_normalized"] = marked_normalized_amplitude(foam, model);
    return r;
}

Json cmd_delta(const std::vector<std::string>& paths, double re, double im) {
    Morphism m;
    if (paths.size() == 2) {
        m = PairMorphism{network_from_json(load(paths[0])), network_from_json(load(paths[1]))};
    } else {
        auto j = load(paths[0]);
        auto kind = j.value("kind", std::string());
        if (kind == "foam")
            m = foam_from_json(j);
        else if (j.contains("left"))
            m = two_morphism(foam_from_json(j.at("left")), foam_from_json(j.at("right")));
        else
            m = morphism_from_json(j);
    }
    return to_json(delta(m, {re, im}));
}

Json cmd_evolve(const std::string& path, const std::string& gen, double t, std::optional<double> beta, const ModelFlags& m) {
    auto f = element_from_json(load(path));
    auto g = generator(gen, m);
    auto out = beta ? evolve_imaginary(f, *beta, g) : evolve(f, t, g);
    Json r = to_json(out);
    r["command"] = "evolve";
    r["generator"] = to_string(g.kind);
    if (beta)
        r["beta"] = *beta;
    else
        r["t"] = t;
    return r;
}

Json cmd_represent(const std::string& element, const std::string& basis_path) {
    auto f = element_from_json(load(element));
    auto basis = basis_from_json(load(basis_path));
    auto rep = represent(f, basis);
    Json re = Json::array(), im = Json::array();
    for (int i = 0; i < rep.matrix.rows(); ++i) {
        Json a = Json::array(), b = Json::array();
        for (int j = 0; j < rep.matrix.cols(); ++j) {
            a.push_back(rep.matrix(i, j).real());
            b.push_back(rep.matrix(i, j).imag());
        }
        re.push_back(a);
        im.push_back(b);
    }
    Json r = report("represent");
    r["size"] = rep.matrix.rows();
    r["dropped"] = rep.dropped;
    r["re"] = re;
    r["im"] = im;
    return r;
}

struct PartitionFlags {
    std::string basis;
    std::string gen = "hamiltonian";
    double beta = 1.0;
    bool csv = false;
    double beta_min = 0.1, beta_max = 5.0;
    int steps = 50;
    std::vector<double> synthetic;  // c, kappa, N
    ModelFlags model;
};

// returns JSON, or CSV text in "csv"
Json cmd_partition(const PartitionFlags& f) {
    std::function<double(double)> z;
    Json r = report("partition");
    if (!f.synthetic.empty()) {
        if (f.synthetic.size() != 3) throw SchemaError("--synthetic takes c kappa N");
        double c = f.synthetic[0], kappa = f.synthetic[1];
        int N = static_cast<int>(f.synthetic[2]);
        auto levels = synthetic_spectrum(c, kappa, N);
        z = [levels](double b) { return partition_function(levels, b); };
        r["synthetic"] = Json{{"c", c}, {"kappa", kappa}, {"N", N}, {"threshold", kappa / c}};
    } else {
        if (f.basis.empty()) throw SchemaError("partition needs a basis file or --synthetic");
        auto basis = basis_from_json(load(f.basis));
        auto h = eigenvalues(basis, generator(f.gen, f.model));
        z = [h](double b) { return partition_function(h, b); };
        r["generator"] = to_string(generator_kind_from_string(f.gen));
        r["eigenvalues"] = h;
    }
    if (f.csv) {
        if (f.steps < 1 || !(f.beta_min > 0) || !(f.beta_max >= f.beta_min)) throw SchemaError("bad beta sweep");
        std::ostringstream os;
        os << "beta,Z\n";
        os.precision(17);
        for (int k = 0; k <= f.steps; ++k) {
            double b = f.beta_min + (f.beta_max - f.beta_min) * k / f.steps;
            os << b << "," << z(b) << "\n";
        }
        return Json{{"csv", os.str()}};
    }
    r["beta"] = f.beta;
    r["Z"] = z(f.beta);
    return r;
}

Json cmd_basis(const std::string& path, int moves, int max_size) {
    auto j = load(path);
    TruncatedBasis b;
    if (j.value("kind", std::string()) == "chain") {
        std::vector<TopspinFoam> chain;
        for (const auto& f : j.at("foams")) chain.push_back(foam_from_json(f));
        b = chain_basis(chain);
    } else {
        b = move_basis(network_from_json(j), moves, max_size);
    }
    Json r = to_json(b);
    r["command"] = "basis";
    return r;
}

Json cmd_enumerate(const std::string& path, int n, bool all) {
    auto net = network_from_json(load(path));
    auto reps = enumerate_representations(net.d, n, !all);
    Json as = Json::array();
    int surjective = 0;
    for (const auto& a : reps) {
        std::vector<Permutation> ls;
        Json labels = Json::object();
        for (const auto& [k, p] : a) {
            ls.push_back(p);
            labels[k] = to_json(p);
        }
        bool s = transitive(ls, n);
        surjective += s;
        as.push_back({{"sigma", labels}, {"surjective", s}});
    }
    Json r = report("enumerate");
    r["n"] = n;
    r["labels"] = all ? "all" : "transpositions";
    r["count"] = reps.size();
    r["surjective"] = surjective;
    r["assignments"] = as;
    return r;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("tsf");
    spdlog::set_default_logger(logger);
    const char* env = std::getenv("TSF_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

int write(const Json& r, const Globals& g) {
    std::string text = r.contains("csv") && r.size() == 1 ? r.at("csv").get<std::string>() : r.dump(2) + "\n";
    if (g.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.output);
        if (!out) throw SchemaError("cannot write " + g.output);
        out << text;
        spdlog::info("wrote {}", g.output);
    }
    return 0;
}

Json error_json(const std::string& command, const char* kind, const std::string& message) {
    Json r = report(command);
    r["status"] = "error";
    r["error"] = Json{{"kind", kind}, {"message", message}};
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"topspin networks, foams and their convolution algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("-o,--output", g.output, "write the report here instead of stdout");
    app.add_option("--seed", g.seed, "seed for randomized choices")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads, 0 for all cores")->capture_default_str();

    std::function<Json()> run;
    std::string command;
    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->parse_complete_callback([&command, name] { command = name; });
        return s;
    };

    std::string p1, p2;

    auto* check = sub("check", "validate a network and check its Wirtinger relations");
    check->add_option("network", p1)->required();
    check->final_callback([&] { run = [&] { return cmd_check(p1); }; });

    auto* check_foam = sub("check-foam", "validate a foam, its boundary and its edge relations");
    check_foam->add_option("foam", p1)->required();
    check_foam->final_callback([&] { run = [&] { return cmd_check_foam(p1); }; });

    MoveFlags mf;
    auto* move = sub("move", "list the applicable covering moves, or apply one");
    move->add_option("network", mf.path)->required();
    move->add_option("--apply", mf.apply, "file holding {\"format\", \"move\": {...}}");
    move->add_option("--pick", mf.pick, "apply the k-th applicable move");
    move->add_flag("--random", mf.random, "apply a seeded random applicable move");
    move->add_flag("--stabilize", mf.stabilize, "include stabilization");
    move->final_callback([&] { run = [&] { return cmd_move(mf, g); }; });

    EquivFlags ef;
    auto* equiv = sub("equiv", "search for a certificate of covering-move equivalence");
    equiv->add_option("a", ef.a)->required();
    equiv->add_option("b", ef.b)->required();
    equiv->add_option("--max-moves", ef.budget.max_moves)->capture_default_str();
    equiv->add_option("--max-states", ef.budget.max_states)->capture_default_str();
    equiv->add_option("--max-stabilizations", ef.budget.max_stabilizations)->capture_default_str();
    equiv->add_option("--certificate", ef.certificate, "replay this certificate instead of searching");
    equiv->final_callback([&] { run = [&] { return cmd_equiv(ef, g); }; });

    auto* compose = sub("compose", "fibered product of two covering 1-morphisms");
    compose->add_option("x", p1)->required();
    compose->add_option("y", p2)->required();
    compose->final_callback([&] { run = [&] { return cmd_compose(p1, p2); }; });

    auto* gl = sub("glue", "glue two foams along the target of the first");
    gl->add_option("a", p1)->required();
    gl->add_option("b", p2)->required();
    gl->final_callback([&] { run = [&] { return cmd_glue(p1, p2); }; });

    auto* cyl = sub("cylinder", "the product foam net x [0,1]");
    cyl->add_option("network", p1)->required();
    cyl->final_callback([&] { run = [&] { return cmd_cylinder(p1); }; });

    long long order = 0;
    auto* euler = sub("euler", "weighted and normalized Euler characteristic");
    euler->add_option("foam", p1)->required();
    euler->add_option("multiplicity", p2)->required();
    euler->add_option("--order", order, "normalizing order (default: the foam's order)");
    euler->final_callback([&] { run = [&] { return cmd_euler(p1, p2, order); }; });

    ModelFlags mflags;
    auto* amp = sub("amplitude", "foam amplitude under a built-in model");
    amp->add_option("foam", p1)->required();
    mflags.add(amp);
    amp->final_callback([&] { run = [&] { return cmd_amplitude(p1, mflags); }; });

    std::vector<std::string> dpaths;
    double re = 1.0, im = 0.0;
    auto* dl = sub("delta", "delta element on a foam, a 2-cell or a pair of networks");
    dl->add_option("inputs", dpaths)->required()->expected(1, 2);
    dl->add_option("--re", re)->capture_default_str();
    dl->add_option("--im", im)->capture_default_str();
    dl->final_callback([&] { run = [&] { return cmd_delta(dpaths, re, im); }; });

    std::string gen = "order";
    double t = 0.0;
    std::optional<double> beta;
    auto* ev = sub("evolve", "apply a time evolution to a convolution element");
    ev->add_option("element", p1)->required();
    ev->add_option("--gen", gen, "order, order_faces, area, amplitude_ratio, defect_twist, semigroupoid_amplitude (hamiltonian)")
        ->capture_default_str();
    ev->add_option("--t", t)->capture_default_str();
    ev->add_option("--imaginary", beta, "evaluate at t = i beta instead");
    mflags.add(ev);
    ev->final_callback([&] {
        run = [&] {
            finite(t, "t");
            return cmd_evolve(p1, gen, t, beta, mflags);
        };
    });

    auto* rp = sub("represent", "matrix of an element on a truncated basis");
    rp->add_option("element", p1)->required();
    rp->add_option("basis", p2)->required();
    rp->final_callback([&] { run = [&] { return cmd_represent(p1, p2); }; });

    PartitionFlags pf;
    auto* pt = sub("partition", "partition function on a basis or a synthetic spectrum");
    pt->add_option("basis", pf.basis);
    pt->add_option("--gen", pf.gen)->capture_default_str();
    pt->add_option("--beta", pf.beta)->capture_default_str();
    pt->add_flag("--emit-csv", pf.csv, "beta sweep as CSV");
    pt->add_option("--beta-min", pf.beta_min)->capture_default_str();
    pt->add_option("--beta-max", pf.beta_max)->capture_default_str();
    pt->add_option("--steps", pf.steps)->capture_default_str();
    pt->add_option("--synthetic", pf.synthetic, "c kappa N")->expected(3);
    pf.model.add(pt);
    pt->final_callback([&] {
        run = [&] {
            finite(pf.beta, "beta");
            return cmd_partition(pf);
        };
    });

    int moves = 2, max_size = 16;
    auto* bs = sub("basis", "truncated basis from a network (move exploration) or a foam chain");
    bs->add_option("input", p1)->required();
    bs->add_option("--moves", moves)->capture_default_str();
    bs->add_option("--max", max_size)->capture_default_str();
    bs->final_callback([&] { run = [&] { return cmd_basis(p1, moves, max_size); }; });

    int n = 3;
    bool all = false;
    auto* en = sub("enumerate", "all Wirtinger-valid labelings of a diagram");
    en->add_option("network", p1)->required();
    en->add_option("--n", n)->capture_default_str();
    en->add_flag("--all-permutations", all, "label by all of S_n instead of transpositions");
    en->final_callback([&] { run = [&] { return cmd_enumerate(p1, n, all); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json(command, "usage", e.what()).dump(2) << "\n";
        return 2;
    }
    set_convolution_threads(g.threads);

    try {
        return write(run(), g);
    } catch (const Failed& f) {
        Json r = f.report;
        r["status"] = "error";
        write(r, g);
        return 1;
    } catch (const nlohmann::json::exception& e) {
        spdlog::debug("{}", e.what());
        std::cout << error_json(command, "schema", e.what()).dump(2) << "\n";
        return 2;
    } catch (const SchemaError& e) {
        spdlog::debug("{}", e.what());
        std::cout << error_json(command, "schema", e.what()).dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        spdlog::debug("{}", e.what());
        std::cout << error_json(command, "domain", e.what()).dump(2) << "\n";
        return 1;
    }
}
