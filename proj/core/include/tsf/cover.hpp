#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tsf/canon.hpp"
#include "tsf/diagram.hpp"
#include "tsf/foam.hpp"

namespace tsf {

// Branch locus, order, strand labels and marked subgraph of one covering map.
using CoveringDatum = TopspinNetwork;

struct CoverFactor {
    CoveringDatum left;   // M -> S3 over the source
    CoveringDatum right;  // M -> S3 over the target
};

// Overlay of two covers of the same middle sphere, labelled by the product action.
struct MiddleOverlay {
    TopspinNetwork locus;
    int n_left = 1;   // order of the right cover of the earlier factor
    int n_right = 1;  // order of the left cover of the later factor
};

// A composable chain of covering pairs. The empty chain is the trivial covering
// (order 1, empty locus), which is the unit for fibered_product.
struct OneMorphismKey {
    std::vector<CoverFactor> factors;
    std::vector<MiddleOverlay> middles;  // one between each consecutive pair

    bool is_unit() const { return factors.empty(); }
    long long left_order() const;
    long long right_order() const;
    std::string identity_tag() const;
    std::string digest() const { return fnv1a_hex(identity_tag()); }
};

OneMorphismKey one_morphism(const CoveringDatum& left, const CoveringDatum& right);
OneMorphismKey unit_one_morphism();

// marked key after extending labels to a common degree
CanonicalKey boundary_key(const TopspinNetwork& net, int degree);
CanonicalKey source_key(const OneMorphismKey& x, int degree);
CanonicalKey target_key(const OneMorphismKey& x, int degree);
bool composable(const OneMorphismKey& x, const OneMorphismKey& y);

// disjoint-union overlay of two middle loci sharing their marked part
MiddleOverlay overlay(const TopspinNetwork& x_right, const TopspinNetwork& y_left);
OneMorphismKey fibered_product(const OneMorphismKey& x, const OneMorphismKey& y);

// Monodromy of the composite outer cover around the strands of the outermost locus.
// Labels are exact only when every factor is cyclic; otherwise only the order is kept.
struct OuterMonodromy {
    long long order = 1;
    bool exact = false;
    std::map<Id, Permutation> labels;
};

bool is_cyclic_datum(const CoveringDatum& c);
OuterMonodromy left_outer(const OneMorphismKey& x);
OuterMonodromy right_outer(const OneMorphismKey& x);

// weighted Euler characteristic

struct MultiplicityAssignment {
    std::map<Id, long long> faces;
    std::map<Id, long long> edges;
    std::map<Id, long long> vertices;
};

using Rational = boost::rational<long long>;

MultiplicityAssignment constant_multiplicity(const TwoComplex& cx, long long n);
long long weighted_euler(const TwoComplex& cx, const MultiplicityAssignment& mult);
Rational normalized_euler(const TwoComplex& cx, const MultiplicityAssignment& mult, long long n);

// cells of the two complexes prefixed "a." and "b."
TwoComplex disjoint_union(const TwoComplex& a, const TwoComplex& b);
// multiplicities over the generic composite locus: the first piece is covered n_b times
// as often, the second n_a times
MultiplicityAssignment fibered_multiplicity(const MultiplicityAssignment& a, long long n_a,
                                            const MultiplicityAssignment& b, long long n_b);

}  // namespace tsf
