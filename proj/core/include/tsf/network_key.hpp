#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tsf/canon.hpp"
#include "tsf/diagram.hpp"

namespace tsf {

enum class CellKind : char { Arc = 'a', Edge = 'e', Vertex = 'v', Crossing = 'x' };

struct NetworkGraph {
    ColoredGraph g;
    std::vector<std::pair<CellKind, Id>> node;
};

struct KeyOptions {
    bool labels = true;       // include sigma / rho / iota / marked colors
    bool marked_only = false; // restrict to the marked subgraph
};

NetworkGraph network_graph(const TopspinNetwork& net, KeyOptions opt = {});

// removes valence-2 identity vertices joining edges with equal rho and marking
TopspinNetwork normalize(const TopspinNetwork& net);

CanonicalKey raw_key(const TopspinNetwork& net);
CanonicalKey canonical_key(const TopspinNetwork& net);
CanonicalKey shape_key(const TopspinNetwork& net);
CanonicalKey marked_key(const TopspinNetwork& net);
CanonicalKey canonical_key(const CyclicTopspinNetwork& net);

struct NetworkIso {
    std::map<Id, Id> vertex, arc, edge, crossing;
    const std::map<Id, Id>& of(CellKind k) const;
};

// raw isomorphism a -> b; throws when the raw keys differ
NetworkIso network_isomorphism(const TopspinNetwork& a, const TopspinNetwork& b, KeyOptions opt = {});

}  // namespace tsf
