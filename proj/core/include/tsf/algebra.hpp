#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsf/canon.hpp"
#include "tsf/diagram.hpp"
#include "tsf/foam.hpp"

namespace tsf {

using Complex = std::complex<double>;

// Pair of equivalent networks (a morphism of the groupoid of coverings).
struct PairMorphism {
    TopspinNetwork source;
    TopspinNetwork target;
};

// Pair of foams over the left and right bases of a cobordism of covers.
struct TwoCell {
    TopspinFoam left;
    TopspinFoam right;
};

// Horizontal chain of cells. The empty chain is the trivial covering cylinder.
struct TwoMorphism {
    std::vector<TwoCell> cells;
    bool is_unit() const { return cells.empty(); }
};

TwoMorphism two_morphism(const TopspinFoam& left, const TopspinFoam& right);
// marked keys of adjacent cells must agree up to extending labels
bool horizontally_composable(const TwoMorphism& a, const TwoMorphism& b);
TwoMorphism horizontal_product(const TwoMorphism& a, const TwoMorphism& b);
// columnwise glue; chains must have equal length
TwoMorphism vertical_product(const TwoMorphism& a, const TwoMorphism& b);
long long order(const TwoMorphism& w);

using Morphism = std::variant<PairMorphism, TopspinFoam, TwoMorphism>;

enum class AlgebraTag { groupoid, semigroupoid, two_semigroupoid };
std::string to_string(AlgebraTag t);
AlgebraTag algebra_tag_from_string(const std::string& s);
AlgebraTag tag_of(const Morphism& m);

CanonicalKey morphism_key(const Morphism& m);

struct Entry {
    Morphism morphism;
    Complex value;
};

// Finitely supported function on morphism keys; zero entries are never stored.
struct ConvolutionElement {
    AlgebraTag tag = AlgebraTag::groupoid;
    std::map<CanonicalKey, Entry> support;

    void add(const Morphism& m, Complex v);
    void add(const CanonicalKey& key, const Morphism& m, Complex v);
    Complex at(const CanonicalKey& key) const;
    size_t size() const { return support.size(); }
};

ConvolutionElement delta(const Morphism& m, Complex v = 1.0);
ConvolutionElement sum(const ConvolutionElement& f, const ConvolutionElement& g);
ConvolutionElement scaled(const ConvolutionElement& f, Complex c);
// same keys and values within tol
bool approx_equal(const ConvolutionElement& f, const ConvolutionElement& g, double tol = 1e-12);

// the algebra product of two morphisms, nullopt when they do not compose
std::optional<Morphism> compose(const PairMorphism& a, const PairMorphism& b);
std::optional<Morphism> compose_glue(const TopspinFoam& a, const TopspinFoam& b);
std::optional<Morphism> compose_vertical(const TwoMorphism& a, const TwoMorphism& b);
std::optional<Morphism> compose_horizontal(const TwoMorphism& a, const TwoMorphism& b);
// product used by the stars and by represent for each tag
std::optional<Morphism> product(const Morphism& a, const Morphism& b);

// worker threads for the stars; 0 means hardware concurrency
void set_convolution_threads(int n);

ConvolutionElement star_groupoid(const ConvolutionElement& f, const ConvolutionElement& g);
ConvolutionElement star_semigroupoid(const ConvolutionElement& f, const ConvolutionElement& g);
ConvolutionElement star_vertical(const ConvolutionElement& f, const ConvolutionElement& g);
ConvolutionElement star_horizontal(const ConvolutionElement& f, const ConvolutionElement& g);
// dispatch on the tag: groupoid, glue, or vertical product
ConvolutionElement star(const ConvolutionElement& f, const ConvolutionElement& g);

}  // namespace tsf
