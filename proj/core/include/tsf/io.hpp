#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "tsf/algebra.hpp"
#include "tsf/cover.hpp"
#include "tsf/diagram.hpp"
#include "tsf/dynamics.hpp"
#include "tsf/foam.hpp"
#include "tsf/moves.hpp"

namespace tsf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "tsf/1";

Json to_json(const Permutation& p);
Permutation perm_from_json(const Json& j);
Json to_json(const CyclicElement& c);
CyclicElement cyclic_from_json(const Json& j, int n);
Json to_json(const Rep& r);
Rep rep_from_json(const Json& j);
Json to_json(const Intertwiner& io);
Intertwiner intertwiner_from_json(const Json& j);

Json to_json(const TopspinNetwork& net);
TopspinNetwork network_from_json(const Json& j);
Json to_json(const CyclicTopspinNetwork& net);
CyclicTopspinNetwork cyclic_network_from_json(const Json& j);
Json to_json(const TopspinFoam& foam);
TopspinFoam foam_from_json(const Json& j);

Json to_json(const MoveSpec& m);
MoveSpec move_from_json(const Json& j);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

// {"factors": [{"left", "right"}...], "middles": [...]}, or a single {"left", "right"} pair
Json to_json(const OneMorphismKey& x);
OneMorphismKey one_morphism_from_json(const Json& j);
// explicit per-cell maps, or {"constant": n} expanded over cx
Json to_json(const MultiplicityAssignment& m);
MultiplicityAssignment multiplicity_from_json(const Json& j, const TwoComplex& cx);

// pairs {"kind": "pair"}, foams {"kind": "foam"}, 2-morphisms {"kind": "two_morphism"}
Json to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j);
Json to_json(const ConvolutionElement& f);
ConvolutionElement element_from_json(const Json& j);
Json to_json(const TruncatedBasis& b);
TruncatedBasis basis_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const WirtingerReport& r);

// throws SchemaError unless j carries "format": "tsf/1"
void require_format(const Json& j);
Json read_json_file(const std::string& path);

}  // namespace tsf
