#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsf/perm.hpp"
#include "tsf/rep.hpp"

namespace tsf {

using Id = std::string;

struct DVertex {
    Id id;
    std::vector<Id> in_arcs;
    std::vector<Id> out_arcs;
    bool operator==(const DVertex&) const = default;
};

struct DArc {
    Id id;
    Id edge;
    bool operator==(const DArc&) const = default;
};

struct DCrossing {
    Id id;
    Id over;
    Id under_in;
    Id under_out;
    int sign = 1;
    bool operator==(const DCrossing&) const = default;
};

// edge table entry: ordered arc chain from tail to head
struct DEdge {
    Id id;
    std::vector<Id> arcs;
    bool operator==(const DEdge&) const = default;
};

struct PlanarGraphDiagram {
    std::vector<DVertex> vertices;
    std::vector<DArc> arcs;
    std::vector<DCrossing> crossings;
    std::vector<DEdge> edges;

    const DVertex* vertex(const Id& id) const;
    const DArc* arc(const Id& id) const;
    const DCrossing* crossing(const Id& id) const;
    const DEdge* edge(const Id& id) const;
    DVertex* vertex(const Id& id);
    DEdge* edge(const Id& id);
    DCrossing* crossing(const Id& id);

    // vertex whose out_arcs / in_arcs hold the edge's first / last arc
    std::optional<Id> edge_src(const Id& edge) const;
    std::optional<Id> edge_dst(const Id& edge) const;
    bool is_circle(const Id& edge) const;
    // edges whose arcs sit at the vertex ports, in port order
    std::vector<Id> in_edges(const Id& vertex) const;
    std::vector<Id> out_edges(const Id& vertex) const;
    // crossing where the arc is under_in / under_out
    const DCrossing* crossing_ending(const Id& arc) const;
    const DCrossing* crossing_starting(const Id& arc) const;
    // edge id owning an arc
    Id edge_of(const Id& arc) const;
};

struct TopspinNetwork {
    PlanarGraphDiagram d;
    int n = 1;
    std::map<Id, Permutation> sigma;
    std::map<Id, Rep> rho;
    std::map<Id, Intertwiner> iota;
    std::set<Id> marked;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct RelationFailure {
    std::string kind;  // "crossing" or "vertex"
    Id id;
    std::string lhs;
    std::string rhs;
    long long defect = 0;  // cyclic reports only
};

struct WirtingerReport {
    std::vector<RelationFailure> failures;
    bool pass() const { return failures.empty(); }
};

ValidationReport validate(const TopspinNetwork& net);
WirtingerReport check_wirtinger(const TopspinNetwork& net);
// product of in labels times inverse out labels, in port order
Permutation vertex_relation(const TopspinNetwork& net, const Id& vertex);
// expected under_out label from the under_in and over labels
Permutation crossing_image(const Permutation& under_in, const Permutation& over, int sign);

using SigmaAssignment = std::map<Id, Permutation>;
std::vector<SigmaAssignment> enumerate_representations(const PlanarGraphDiagram& d, int n,
                                                       bool restrict_to_transpositions);

std::pair<std::vector<Rep>, std::vector<Rep>> port_reps(const TopspinNetwork& net, const Id& vertex);
// V - E + number of closed circle components
long long network_euler(const TopspinNetwork& net);

TopspinNetwork disjoint_union(const TopspinNetwork& a, const TopspinNetwork& b);
// empty network of the given order
TopspinNetwork empty_network(int n);

// cyclic mode

struct CVertex {
    Id id;
    std::vector<Id> in;   // edge ids
    std::vector<Id> out;  // edge ids
};

// null endpoints are free ends
struct CEdge {
    Id id;
    std::optional<Id> src;
    std::optional<Id> dst;
};

struct CyclicTopspinNetwork {
    int n = 1;
    std::vector<CVertex> vertices;
    std::vector<CEdge> edges;
    std::map<Id, CyclicElement> sigma;
    std::map<Id, Rep> rho;
    std::map<Id, Intertwiner> iota;
    std::set<Id> marked;
    bool degenerate_allowed = false;
};

ValidationReport validate(const CyclicTopspinNetwork& net);
WirtingerReport check_cyclic_relations(const CyclicTopspinNetwork& net);
// integer lift of the defect: sum over vertices of in minus out representatives
long long cyclic_defect_lift(const CyclicTopspinNetwork& net);
CyclicTopspinNetwork disjoint_union(const CyclicTopspinNetwork& a, const CyclicTopspinNetwork& b);

struct DefectElement {
    bool cyclic = false;
    CyclicElement value;      // cyclic mode
    long long lift = 0;       // cyclic mode, integer representative
    Permutation perm;         // non-cyclic mode, identity on success
    bool is_identity() const { return cyclic ? value.k == 0 : perm.is_identity(); }
};

DefectElement wirtinger_defect(const CyclicTopspinNetwork& net);
DefectElement wirtinger_defect(const TopspinNetwork& net, bool cyclic_mode);

}  // namespace tsf
