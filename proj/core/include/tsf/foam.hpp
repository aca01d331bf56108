#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsf/canon.hpp"
#include "tsf/diagram.hpp"

namespace tsf {

struct FVertex {
    Id id;
    std::string kind = "generic";  // generic | slice | aux
};

struct Incidence {
    Id face;
    int slot = 0;  // index into the face boundary
    bool operator==(const Incidence&) const = default;
};

struct FEdge {
    Id id;
    std::optional<Id> src;
    std::optional<Id> dst;
    std::vector<Incidence> in;   // entries with sign +1, in relation order
    std::vector<Incidence> out;  // entries with sign -1, in relation order
    std::string kind = "generic";  // generic | slice | seam
};

struct BoundaryEntry {
    Id edge;
    int sign = 1;
    Id strand;  // face strand adjacent to this boundary edge
};

struct Face {
    Id id;
    std::vector<BoundaryEntry> boundary;
};

struct Strand {
    Id id;
    Id face;
};

struct FaceCrossing {
    Id id;
    Id over;
    Id under_in;
    Id under_out;
    int sign = 1;
};

struct TwoComplex {
    std::vector<FVertex> vertices;
    std::vector<FEdge> edges;
    std::vector<Face> faces;
    std::vector<Strand> strands;
    std::vector<FaceCrossing> crossings;

    const FVertex* vertex(const Id& id) const;
    const FEdge* edge(const Id& id) const;
    const Face* face(const Id& id) const;
    const Strand* strand(const Id& id) const;
    FVertex* vertex(const Id& id);
    FEdge* edge(const Id& id);
    Face* face(const Id& id);
};

// formal boundary of a face on vertices; empty map when the chain closes
std::map<Id, long long> boundary_of_boundary(const TwoComplex& cx, const Face& f);
bool boundary_squared_zero(const TwoComplex& cx);
long long euler_characteristic(const TwoComplex& cx);

// identification of a boundary network with slice cells of the foam
struct BoundarySlice {
    TopspinNetwork net;
    std::map<Id, Id> edge_cells;    // network edge -> foam slice edge
    std::map<Id, Id> vertex_cells;  // network vertex -> foam slice vertex
    std::map<Id, Id> seam_cells;    // closed network edge -> foam aux vertex
    std::map<Id, Id> arc_strands;   // network arc -> face strand
    std::map<Id, Id> edge_faces;    // network edge -> adjacent face
    std::map<Id, Id> vertex_edges;  // network vertex -> the single generic edge over it
};

struct TopspinFoam {
    TwoComplex cx;
    int n = 1;
    std::map<Id, Permutation> sigma;  // strand -> label
    std::map<Id, Rep> rho;            // face -> rep
    std::map<Id, Intertwiner> iota;   // generic edge -> intertwiner
    BoundarySlice source;
    BoundarySlice target;
    std::vector<BoundarySlice> interior;
    std::set<Id> marked_faces;
    std::string weight_hook = "euler";
};

ValidationReport validate(const TopspinFoam& foam);
std::pair<TopspinNetwork, TopspinNetwork> boundary(const TopspinFoam& foam);
WirtingerReport check_wirtinger_2d(const TopspinFoam& foam);
// product over incidences of the edge, in then inverse out
Permutation edge_relation(const TopspinFoam& foam, const Id& edge);
DefectElement wirtinger_defect(const TopspinFoam& foam, bool cyclic_mode);

TopspinFoam cylinder(const TopspinNetwork& net);
TopspinFoam glue(const TopspinFoam& a, const TopspinFoam& b);
TopspinFoam edge_contraction(const TopspinNetwork& net, const Id& edge);
TopspinFoam vertex_splitting(const TopspinNetwork& net, const Id& vertex, const std::vector<Id>& part_a);
TopspinFoam disjoint_union(const TopspinFoam& a, const TopspinFoam& b);

CanonicalKey foam_key(const TopspinFoam& foam);
// canonical form of the closure of the marked faces together with the marked slice subgraphs
CanonicalKey foam_marked_key(const TopspinFoam& foam);

struct MarkedClosure {
    std::set<Id> faces, edges, vertices;
};
MarkedClosure marked_closure(const TopspinFoam& foam);

}  // namespace tsf
