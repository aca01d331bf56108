#include "tsf/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "tsf/error.hpp"

namespace tsf {

double area_term(const Rep& r) {
    double s = 0.0;
    for (int t : r.twice) {
        double j = t / 2.0;
        s += std::sqrt(j * (j + 1.0));
    }
    return s;
}

namespace {

std::function<double(long long, long long)> euler_weight(double alpha) {
    return [alpha](long long chi, long long chi_src) { return std::exp(alpha * static_cast<double>(chi - chi_src)); };
}

double positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(std::string("non-positive model value for ") + what);
    return v;
}

// product of sorted factors, for order independence
double product(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    double p = 1.0;
    for (double x : xs) p *= x;
    return p;
}

struct Restriction {
    bool marked = false;
    MarkedClosure mc;
};

std::vector<Rep> edge_reps(const TopspinFoam& foam, const FEdge& e, const Restriction& r) {
    std::vector<Rep> reps;
    for (const auto* list : {&e.in, &e.out})
        for (const auto& i : *list)
            if (!r.marked || r.mc.faces.count(i.face)) reps.push_back(foam.rho.at(i.face));
    return reps;
}

double network_factor(const TopspinNetwork& net, const AmplitudeModel& m, bool marked) {
    std::vector<double> xs;
    for (const auto& e : net.d.edges)
        if (!marked || net.marked.count(e.id)) xs.push_back(positive(m.face_amp(net.rho.at(e.id)), "face"));
    for (const auto& v : net.d.vertices) {
        std::vector<Rep> reps;
        for (const auto& a : v.in_arcs) {
            Id e = net.d.edge_of(a);
            if (!marked || net.marked.count(e)) reps.push_back(net.rho.at(e));
        }
        for (const auto& a : v.out_arcs) {
            Id e = net.d.edge_of(a);
            if (!marked || net.marked.count(e)) reps.push_back(net.rho.at(e));
        }
        if (marked && reps.empty()) continue;
        xs.push_back(positive(m.edge_amp(reps, net.iota.at(v.id)), "edge"));
    }
    return product(xs);
}

long long marked_network_euler(const TopspinNetwork& net) {
    std::set<Id> verts;
    long long edges = 0, circles = 0;
    for (const auto& e : net.d.edges) {
        if (!net.marked.count(e.id)) continue;
        ++edges;
        auto s = net.d.edge_src(e.id), t = net.d.edge_dst(e.id);
        if (s) verts.insert(*s);
        if (t) verts.insert(*t);
        if (!s && !t) ++circles;
    }
    return static_cast<long long>(verts.size()) - edges + circles;
}

double comb(const TopspinFoam& foam, const AmplitudeModel& m, const Restriction& r) {
    std::vector<double> xs;
    for (const auto& f : foam.cx.faces)
        if (!r.marked || r.mc.faces.count(f.id)) xs.push_back(positive(m.face_amp(foam.rho.at(f.id)), "face"));
    for (const auto& e : foam.cx.edges) {
        if (e.kind != "generic" || (r.marked && !r.mc.edges.count(e.id))) continue;
        xs.push_back(positive(m.edge_amp(edge_reps(foam, e, r), foam.iota.at(e.id)), "edge"));
    }
    for (const auto& v : foam.cx.vertices) {
        if (v.kind != "generic" || (r.marked && !r.mc.vertices.count(v.id))) continue;
        std::vector<Rep> reps;
        std::vector<Intertwiner> ios;
        for (const auto& e : foam.cx.edges) {
            if (e.src != v.id && e.dst != v.id) continue;
            if (r.marked && !r.mc.edges.count(e.id)) continue;
            auto er = edge_reps(foam, e, r);
            reps.insert(reps.end(), er.begin(), er.end());
            if (e.kind == "generic") ios.push_back(foam.iota.at(e.id));
        }
        xs.push_back(positive(m.vertex_amp(reps, ios), "vertex"));
    }
    double p = product(xs);
    std::vector<double> ds;
    for (const auto& s : foam.interior) ds.push_back(network_factor(s.net, m, r.marked));
    return p / product(ds);
}

}  // namespace

AmplitudeModel trivial_model(double alpha) {
    AmplitudeModel m;
    m.name = "trivial";
    m.alpha = alpha;
    m.face_amp = [](const Rep&) { return 1.0; };
    m.edge_amp = [](const std::vector<Rep>&, const Intertwiner&) { return 1.0; };
    m.vertex_amp = [](const std::vector<Rep>&, const std::vector<Intertwiner>&) { return 1.0; };
    m.weight = euler_weight(alpha);
    return m;
}

AmplitudeModel exp_area_model(double hbar, double alpha) {
    AmplitudeModel m = trivial_model(alpha);
    m.name = "exp-area";
    m.hbar = hbar;
    m.face_amp = [hbar](const Rep& r) { return std::exp(hbar * area_term(r)); };
    return m;
}

AmplitudeModel model_by_name(const std::string& name, double hbar, double alpha) {
    if (name == "trivial") return trivial_model(alpha);
    if (name == "exp-area") return exp_area_model(hbar, alpha);
    throw Error("unknown amplitude model " + name);
}

double amplitude_comb(const TopspinFoam& foam, const AmplitudeModel& model) { return comb(foam, model, {}); }

double amplitude(const TopspinFoam& foam, const AmplitudeModel& model) {
    double w = positive(model.weight(euler_characteristic(foam.cx), network_euler(foam.source.net)), "weight");
    return w * amplitude_comb(foam, model);
}

double network_amplitude(const TopspinNetwork& net, const AmplitudeModel& model) { return network_factor(net, model, false); }

double normalized_amplitude(const TopspinFoam& foam, const AmplitudeModel& model) {
    return amplitude(foam, model) / network_amplitude(foam.source.net, model);
}

double marked_network_amplitude(const TopspinNetwork& net, const AmplitudeModel& model) {
    return network_factor(net, model, true);
}

double marked_normalized_amplitude(const TopspinFoam& foam, const AmplitudeModel& model) {
    Restriction r{true, marked_closure(foam)};
    long long chi = static_cast<long long>(r.mc.vertices.size()) - static_cast<long long>(r.mc.edges.size()) +
                    static_cast<long long>(r.mc.faces.size());
    double w = positive(model.weight(chi, marked_network_euler(foam.source.net)), "weight");
    return w * comb(foam, model, r) / marked_network_amplitude(foam.source.net, model);
}

}  // namespace tsf
