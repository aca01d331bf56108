#include "tsf/io.hpp"

#include <fstream>
#include <sstream>

#include "tsf/error.hpp"

namespace tsf {

namespace {

template <class F>
auto schema(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(what + ": " + e.what());
    }
}

std::vector<Id> ids(const Json& j) {
    if (!j.is_array()) throw SchemaError("expected an array of ids");
    return j.get<std::vector<Id>>();
}

Json map_json(const std::map<Id, Id>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

std::map<Id, Id> map_from(const Json& j, const char* key) {
    std::map<Id, Id> m;
    if (!j.contains(key)) return m;
    for (const auto& [k, v] : j.at(key).items()) m[k] = v.get<std::string>();
    return m;
}

}  // namespace

void require_format(const Json& j) {
    if (!j.is_object() || !j.contains("format") || j.at("format") != kFormat)
        throw SchemaError("missing or unsupported \"format\" (expected \"tsf/1\")");
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

Json to_json(const Permutation& p) { return p.images(); }

Permutation perm_from_json(const Json& j) {
    auto v = schema("permutation", [&] { return j.get<std::vector<int>>(); });
    return Permutation(v);
}

Json to_json(const CyclicElement& c) { return Json{{"n", c.n}, {"k", c.k}}; }

CyclicElement cyclic_from_json(const Json& j, int n) {
    return schema("cyclic element", [&] {
        if (j.is_number_integer()) return CyclicElement(n, j.get<long long>());
        int m = j.at("n").get<int>();
        if (m != n) throw Error("cyclic element modulus differs from network order");
        return CyclicElement(m, j.at("k").get<long long>());
    });
}

Json to_json(const Rep& r) { return r.spins(); }

Rep rep_from_json(const Json& j) {
    if (j.is_number()) return Rep::from_spins({j.get<double>()});
    auto v = schema("rep", [&] { return j.get<std::vector<double>>(); });
    return Rep::from_spins(v);
}

Json to_json(const Intertwiner& io) {
    Json d = Json::array(), c = Json::array();
    for (const auto& r : io.domain) d.push_back(to_json(r));
    for (const auto& r : io.codomain) c.push_back(to_json(r));
    return Json{{"label", io.label}, {"identity", io.is_identity}, {"domain", d}, {"codomain", c}};
}

Intertwiner intertwiner_from_json(const Json& j) {
    return schema("intertwiner", [&] {
        Intertwiner io;
        io.label = j.at("label").get<std::string>();
        io.is_identity = j.value("identity", false);
        for (const auto& r : j.at("domain")) io.domain.push_back(rep_from_json(r));
        for (const auto& r : j.at("codomain")) io.codomain.push_back(rep_from_json(r));
        return io;
    });
}

Json to_json(const TopspinNetwork& net) {
    Json j;
    j["format"] = kFormat;
    j["n"] = net.n;
    Json vs = Json::array(), as = Json::array(), cs = Json::array(), es = Json::array();
    for (const auto& v : net.d.vertices) vs.push_back({{"id", v.id}, {"in", v.in_arcs}, {"out", v.out_arcs}});
    for (const auto& a : net.d.arcs) as.push_back({{"id", a.id}, {"edge", a.edge}});
    for (const auto& c : net.d.crossings)
        cs.push_back({{"id", c.id}, {"over", c.over}, {"under_in", c.under_in}, {"under_out", c.under_out}, {"sign", c.sign}});
    for (const auto& e : net.d.edges) es.push_back({{"id", e.id}, {"arcs", e.arcs}});
    j["vertices"] = vs;
    j["arcs"] = as;
    j["crossings"] = cs;
    j["edges"] = es;
    Json rho = Json::object(), iota = Json::object(), sigma = Json::object();
    for (const auto& [k, v] : net.rho) rho[k] = to_json(v);
    for (const auto& [k, v] : net.iota) iota[k] = to_json(v);
    for (const auto& [k, v] : net.sigma) sigma[k] = to_json(v);
    j["rho"] = rho;
    j["iota"] = iota;
    j["sigma"] = sigma;
    j["marked"] = std::vector<Id>(net.marked.begin(), net.marked.end());
    return j;
}

TopspinNetwork network_from_json(const Json& j) {
    return schema("network", [&] {
        TopspinNetwork net;
        net.n = j.at("n").get<int>();
        for (const auto& v : j.value("vertices", Json::array()))
            net.d.vertices.push_back({v.at("id").get<std::string>(), ids(v.value("in", Json::array())), ids(v.value("out", Json::array()))});
        for (const auto& a : j.at("arcs")) net.d.arcs.push_back({a.at("id").get<std::string>(), a.at("edge").get<std::string>()});
        int k = 0;
        for (const auto& c : j.value("crossings", Json::array())) {
            DCrossing x;
            x.id = c.contains("id") ? c.at("id").get<std::string>() : "c" + std::to_string(k);
            x.over = c.at("over").get<std::string>();
            x.under_in = c.at("under_in").get<std::string>();
            x.under_out = c.at("under_out").get<std::string>();
            x.sign = c.at("sign").get<int>();
            net.d.crossings.push_back(x);
            ++k;
        }
        for (const auto& e : j.at("edges")) net.d.edges.push_back({e.at("id").get<std::string>(), ids(e.at("arcs"))});
        for (const auto& [key, v] : j.at("rho").items()) net.rho[key] = rep_from_json(v);
        if (j.contains("iota"))
            for (const auto& [key, v] : j.at("iota").items()) net.iota[key] = intertwiner_from_json(v);
        for (const auto& [key, v] : j.at("sigma").items()) net.sigma[key] = perm_from_json(v);
        for (const auto& m : j.value("marked", Json::array())) net.marked.insert(m.get<std::string>());
        return net;
    });
}

Json to_json(const CyclicTopspinNetwork& net) {
    Json j;
    j["format"] = kFormat;
    j["kind"] = "cyclic";
    j["n"] = net.n;
    j["degenerate"] = net.degenerate_allowed;
    Json vs = Json::array(), es = Json::array();
    for (const auto& v : net.vertices) vs.push_back({{"id", v.id}, {"in", v.in}, {"out", v.out}});
    for (const auto& e : net.edges) {
        Json x{{"id", e.id}};
        x["src"] = e.src ? Json(*e.src) : Json(nullptr);
        x["dst"] = e.dst ? Json(*e.dst) : Json(nullptr);
        es.push_back(x);
    }
    j["vertices"] = vs;
    j["edges"] = es;
    Json rho = Json::object(), iota = Json::object(), sigma = Json::object();
    for (const auto& [k, v] : net.rho) rho[k] = to_json(v);
    for (const auto& [k, v] : net.iota) iota[k] = to_json(v);
    for (const auto& [k, v] : net.sigma) sigma[k] = v.k;
    j["rho"] = rho;
    j["iota"] = iota;
    j["sigma"] = sigma;
    j["marked"] = std::vector<Id>(net.marked.begin(), net.marked.end());
    return j;
}

CyclicTopspinNetwork cyclic_network_from_json(const Json& j) {
    return schema("cyclic network", [&] {
        CyclicTopspinNetwork net;
        net.n = j.at("n").get<int>();
        net.degenerate_allowed = j.value("degenerate", false);
        for (const auto& v : j.value("vertices", Json::array()))
            net.vertices.push_back({v.at("id").get<std::string>(), ids(v.value("in", Json::array())), ids(v.value("out", Json::array()))});
        for (const auto& e : j.at("edges")) {
            CEdge x{e.at("id").get<std::string>(), std::nullopt, std::nullopt};
            if (e.contains("src") && !e.at("src").is_null()) x.src = e.at("src").get<std::string>();
            if (e.contains("dst") && !e.at("dst").is_null()) x.dst = e.at("dst").get<std::string>();
            net.edges.push_back(x);
        }
        for (const auto& [key, v] : j.at("sigma").items()) net.sigma[key] = cyclic_from_json(v, net.n);
        if (j.contains("rho"))
            for (const auto& [key, v] : j.at("rho").items()) net.rho[key] = rep_from_json(v);
        for (const auto& e : net.edges)
            if (!net.rho.count(e.id)) net.rho[e.id] = Rep::spin(0.5);
        if (j.contains("iota"))
            for (const auto& [key, v] : j.at("iota").items()) net.iota[key] = intertwiner_from_json(v);
        for (const auto& v : net.vertices) {
            if (net.iota.count(v.id)) continue;
            Intertwiner io{"i:" + v.id, false, {}, {}};
            for (const auto& e : v.in) io.domain.push_back(net.rho.at(e));
            for (const auto& e : v.out) io.codomain.push_back(net.rho.at(e));
            net.iota[v.id] = io;
        }
        for (const auto& m : j.value("marked", Json::array())) net.marked.insert(m.get<std::string>());
        return net;
    });
}

namespace {

Json slice_json(const BoundarySlice& s) {
    Json j;
    j["network"] = to_json(s.net);
    j["edge_cells"] = map_json(s.edge_cells);
    j["vertex_cells"] = map_json(s.vertex_cells);
    j["seam_cells"] = map_json(s.seam_cells);
    j["arc_strands"] = map_json(s.arc_strands);
    j["edge_faces"] = map_json(s.edge_faces);
    j["vertex_edges"] = map_json(s.vertex_edges);
    return j;
}

BoundarySlice slice_from(const Json& j) {
    BoundarySlice s;
    s.net = network_from_json(j.at("network"));
    s.edge_cells = map_from(j, "edge_cells");
    s.vertex_cells = map_from(j, "vertex_cells");
    s.seam_cells = map_from(j, "seam_cells");
    s.arc_strands = map_from(j, "arc_strands");
    s.edge_faces = map_from(j, "edge_faces");
    s.vertex_edges = map_from(j, "vertex_edges");
    return s;
}

Json incidences(const std::vector<Incidence>& xs) {
    Json a = Json::array();
    for (const auto& i : xs) a.push_back(Json::array({i.face, i.slot}));
    return a;
}

std::vector<Incidence> incidences_from(const Json& j) {
    std::vector<Incidence> xs;
    for (const auto& i : j) xs.push_back({i.at(0).get<std::string>(), i.at(1).get<int>()});
    return xs;
}

}  // namespace

Json to_json(const TopspinFoam& f) {
    Json j;
    j["format"] = kFormat;
    j["kind"] = "foam";
    j["n"] = f.n;
    j["weight_hook"] = f.weight_hook;
    Json vs = Json::array(), es = Json::array(), fs = Json::array(), ss = Json::array(), cs = Json::array();
    for (const auto& v : f.cx.vertices) vs.push_back({{"id", v.id}, {"kind", v.kind}});
    for (const auto& e : f.cx.edges) {
        Json x{{"id", e.id}, {"kind", e.kind}};
        x["src"] = e.src ? Json(*e.src) : Json(nullptr);
        x["dst"] = e.dst ? Json(*e.dst) : Json(nullptr);
        x["in"] = incidences(e.in);
        x["out"] = incidences(e.out);
        es.push_back(x);
    }
    for (const auto& fc : f.cx.faces) {
        Json b = Json::array();
        for (const auto& be : fc.boundary) b.push_back({{"edge", be.edge}, {"sign", be.sign}, {"strand", be.strand}});
        fs.push_back({{"id", fc.id}, {"boundary", b}});
    }
    for (const auto& s : f.cx.strands) ss.push_back({{"id", s.id}, {"face", s.face}});
    for (const auto& c : f.cx.crossings)
        cs.push_back({{"id", c.id}, {"over", c.over}, {"under_in", c.under_in}, {"under_out", c.under_out}, {"sign", c.sign}});
    j["vertices"] = vs;
    j["edges"] = es;
    j["faces"] = fs;
    j["face_strands"] = ss;
    j["face_crossings"] = cs;
    Json sigma = Json::object(), rho = Json::object(), iota = Json::object();
    for (const auto& [k, v] : f.sigma) sigma[k] = to_json(v);
    for (const auto& [k, v] : f.rho) rho[k] = to_json(v);
    for (const auto& [k, v] : f.iota) iota[k] = to_json(v);
    j["sigma"] = sigma;
    j["rho"] = rho;
    j["iota"] = iota;
    j["source"] = slice_json(f.source);
    j["target"] = slice_json(f.target);
    Json in = Json::array();
    for (const auto& s : f.interior) in.push_back(slice_json(s));
    j["interior"] = in;
    j["marked_faces"] = std::vector<Id>(f.marked_faces.begin(), f.marked_faces.end());
    return j;
}

TopspinFoam foam_from_json(const Json& j) {
    return schema("foam", [&] {
        TopspinFoam f;
        f.n = j.at("n").get<int>();
        f.weight_hook = j.value("weight_hook", std::string("euler"));
        for (const auto& v : j.at("vertices")) f.cx.vertices.push_back({v.at("id").get<std::string>(), v.value("kind", std::string("generic"))});
        for (const auto& e : j.at("edges")) {
            FEdge x;
            x.id = e.at("id").get<std::string>();
            x.kind = e.value("kind", std::string("generic"));
            if (e.contains("src") && !e.at("src").is_null()) x.src = e.at("src").get<std::string>();
            if (e.contains("dst") && !e.at("dst").is_null()) x.dst = e.at("dst").get<std::string>();
            x.in = incidences_from(e.value("in", Json::array()));
            x.out = incidences_from(e.value("out", Json::array()));
            f.cx.edges.push_back(x);
        }
        for (const auto& fc : j.at("faces")) {
            Face x{fc.at("id").get<std::string>(), {}};
            for (const auto& b : fc.at("boundary"))
                x.boundary.push_back({b.at("edge").get<std::string>(), b.at("sign").get<int>(), b.at("strand").get<std::string>()});
            f.cx.faces.push_back(x);
        }
        for (const auto& s : j.at("face_strands")) f.cx.strands.push_back({s.at("id").get<std::string>(), s.at("face").get<std::string>()});
        for (const auto& c : j.value("face_crossings", Json::array()))
            f.cx.crossings.push_back({c.at("id").get<std::string>(), c.at("over").get<std::string>(), c.at("under_in").get<std::string>(),
                                      c.at("under_out").get<std::string>(), c.at("sign").get<int>()});
        for (const auto& [k, v] : j.at("sigma").items()) f.sigma[k] = perm_from_json(v);
        for (const auto& [k, v] : j.at("rho").items()) f.rho[k] = rep_from_json(v);
        if (j.contains("iota"))
            for (const auto& [k, v] : j.at("iota").items()) f.iota[k] = intertwiner_from_json(v);
        f.source = slice_from(j.at("source"));
        f.target = slice_from(j.at("target"));
        for (const auto& s : j.value("interior", Json::array())) f.interior.push_back(slice_from(s));
        for (const auto& m : j.value("marked_faces", Json::array())) f.marked_faces.insert(m.get<std::string>());
        return f;
    });
}

Json to_json(const ValidationReport& r) {
    return Json{{"ok", r.ok()}, {"violations", r.violations}};
}

Json to_json(const WirtingerReport& r) {
    Json fs = Json::array();
    for (const auto& f : r.failures) {
        Json x{{"kind", f.kind}, {"id", f.id}, {"lhs", f.lhs}, {"rhs", f.rhs}};
        if (f.defect) x["defect"] = f.defect;
        fs.push_back(x);
    }
    return Json{{"wirtinger", r.pass() ? "pass" : "fail"}, {"failures", fs}};
}

Json to_json(const MoveSpec& m) {
    Json j{{"kind", to_string(m.kind)}, {"site", m.site}};
    Json params = Json::object();
    if (!m.perms.empty()) {
        Json ps = Json::array();
        for (const auto& p : m.perms) ps.push_back(to_json(p));
        params["perms"] = ps;
    }
    if (!m.reps.empty()) {
        Json rs = Json::array();
        for (const auto& r : m.reps) rs.push_back(to_json(r));
        params["reps"] = rs;
    }
    if (!m.moved.empty()) params["moved"] = m.moved;
    if (m.iota) params["iota"] = to_json(*m.iota);
    if (!m.signs.empty()) params["signs"] = m.signs;
    j["params"] = params;
    return j;
}

MoveSpec move_from_json(const Json& j) {
    return schema("move", [&] {
        MoveSpec m;
        m.kind = move_kind_from_string(j.at("kind").get<std::string>());
        m.site = ids(j.value("site", Json::array()));
        Json params = j.value("params", Json::object());
        for (const auto& p : params.value("perms", Json::array())) m.perms.push_back(perm_from_json(p));
        for (const auto& r : params.value("reps", Json::array())) m.reps.push_back(rep_from_json(r));
        m.moved = ids(params.value("moved", Json::array()));
        if (params.contains("iota")) m.iota = intertwiner_from_json(params.at("iota"));
        m.signs = params.value("signs", std::vector<int>{});
        return m;
    });
}

Json to_json(const Certificate& c) {
    Json ms = Json::array();
    for (const auto& m : c.moves) ms.push_back(to_json(m));
    return Json{{"format", kFormat}, {"kind", "certificate"}, {"moves", ms}, {"keys", c.keys}};
}

Certificate certificate_from_json(const Json& j) {
    return schema("certificate", [&] {
        Certificate c;
        for (const auto& m : j.at("moves")) c.moves.push_back(move_from_json(m));
        c.keys = j.value("keys", std::vector<std::string>{});
        return c;
    });
}

Json to_json(const OneMorphismKey& x) {
    Json fs = Json::array(), ms = Json::array();
    for (const auto& f : x.factors) fs.push_back({{"left", to_json(f.left)}, {"right", to_json(f.right)}});
    for (const auto& m : x.middles) ms.push_back({{"locus", to_json(m.locus)}, {"n_left", m.n_left}, {"n_right", m.n_right}});
    return Json{{"format", kFormat},       {"kind", "one_morphism"},     {"left_order", x.left_order()},
                {"right_order", x.right_order()}, {"digest", x.digest()}, {"factors", fs},
                {"middles", ms}};
}

OneMorphismKey one_morphism_from_json(const Json& j) {
    return schema("one-morphism", [&] {
        if (j.contains("left") && !j.contains("factors"))
            return one_morphism(network_from_json(j.at("left")), network_from_json(j.at("right")));
        OneMorphismKey x;
        for (const auto& f : j.at("factors")) x.factors.push_back({network_from_json(f.at("left")), network_from_json(f.at("right"))});
        for (const auto& m : j.value("middles", Json::array()))
            x.middles.push_back({network_from_json(m.at("locus")), m.at("n_left").get<int>(), m.at("n_right").get<int>()});
        if (!x.factors.empty() && x.middles.size() + 1 != x.factors.size()) throw SchemaError("one-morphism: one middle per factor junction");
        return x;
    });
}

Json to_json(const MultiplicityAssignment& m) {
    Json j{{"format", kFormat}, {"kind", "multiplicity"}};
    j["faces"] = m.faces;
    j["edges"] = m.edges;
    j["vertices"] = m.vertices;
    return j;
}

MultiplicityAssignment multiplicity_from_json(const Json& j, const TwoComplex& cx) {
    return schema("multiplicity", [&] {
        if (j.contains("constant")) return constant_multiplicity(cx, j.at("constant").get<long long>());
        MultiplicityAssignment m;
        m.faces = j.value("faces", Json::object()).get<std::map<Id, long long>>();
        m.edges = j.value("edges", Json::object()).get<std::map<Id, long long>>();
        m.vertices = j.value("vertices", Json::object()).get<std::map<Id, long long>>();
        return m;
    });
}

Json to_json(const Morphism& m) {
    if (const auto* p = std::get_if<PairMorphism>(&m)) return Json{{"kind", "pair"}, {"source", to_json(p->source)}, {"target", to_json(p->target)}};
    if (const auto* f = std::get_if<TopspinFoam>(&m)) return to_json(*f);
    Json cells = Json::array();
    for (const auto& c : std::get<TwoMorphism>(m).cells) cells.push_back({{"left", to_json(c.left)}, {"right", to_json(c.right)}});
    return Json{{"kind", "two_morphism"}, {"cells", cells}};
}

Morphism morphism_from_json(const Json& j) {
    auto kind = schema("morphism", [&] { return j.at("kind").get<std::string>(); });
    if (kind == "pair") return schema("pair", [&] { return PairMorphism{network_from_json(j.at("source")), network_from_json(j.at("target"))}; });
    if (kind == "foam") return foam_from_json(j);
    if (kind == "two_morphism")
        return schema("two-morphism", [&] {
            TwoMorphism w;
            for (const auto& c : j.at("cells")) w.cells.push_back({foam_from_json(c.at("left")), foam_from_json(c.at("right"))});
            return w;
        });
    throw SchemaError("unknown morphism kind " + kind);
}

Json to_json(const ConvolutionElement& f) {
    Json sup = Json::array();
    for (const auto& [k, e] : f.support)
        sup.push_back({{"key", fnv1a_hex(k.form)}, {"value", {e.value.real(), e.value.imag()}}, {"morphism", to_json(e.morphism)}});
    return Json{{"format", kFormat}, {"kind", "element"}, {"algebra", to_string(f.tag)}, {"support", sup}};
}

namespace {

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2) throw SchemaError("complex value must be a number or [re, im]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

ConvolutionElement element_from_json(const Json& j) {
    return schema("element", [&] {
        ConvolutionElement f;
        f.tag = algebra_tag_from_string(j.at("algebra").get<std::string>());
        for (const auto& e : j.at("support")) f.add(morphism_from_json(e.at("morphism")), complex_from_json(e.value("value", Json(1.0))));
        return f;
    });
}

Json to_json(const TruncatedBasis& b) {
    Json keys = Json::array();
    for (const auto& m : b.keys) keys.push_back(to_json(m));
    return Json{{"format", kFormat}, {"kind", "basis"}, {"algebra", to_string(b.tag)}, {"rule", b.rule}, {"bound", b.bound}, {"keys", keys}};
}

TruncatedBasis basis_from_json(const Json& j) {
    return schema("basis", [&] {
        TruncatedBasis b;
        b.tag = algebra_tag_from_string(j.at("algebra").get<std::string>());
        b.rule = j.value("rule", std::string());
        b.bound = j.value("bound", 0);
        for (const auto& m : j.at("keys")) b.insert(morphism_from_json(m));
        return b;
    });
}

}  // namespace tsf
