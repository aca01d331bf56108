#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tsf {

class Permutation {
public:
    Permutation() : img_{1} {}
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    // cycle (c0 c1 ... ck) in S_n
    static Permutation cycle(int n, const std::vector<int>& c);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[x - 1]; }
    const std::vector<int>& images() const { return img_; }
    bool is_identity() const;

    // cycle notation, "()" for the identity
    std::string str() const;
    std::string images_str() const;

    auto operator<=>(const Permutation&) const = default;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> img_;
};

Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
Permutation conjugate(const Permutation& base, const Permutation& by);
Permutation extend_degree(const Permutation& p, int new_degree);
std::vector<int> cycle_type(const Permutation& p);
bool is_transposition(const Permutation& p);
int order(const Permutation& p);
// (i,j) -> (sigma i, tau j) on {1..n}x{1..m}, pair (i,j) indexed (i-1)m+j
Permutation product_action(const Permutation& sigma, const Permutation& tau);
// the generated subgroup acts transitively on {1..n}, i.e. the cover is connected
bool transitive(const std::vector<Permutation>& gens, int n);
// all of S_n in lexicographic image order
std::vector<Permutation> all_permutations(int n);
std::vector<Permutation> all_transpositions(int n);

struct CyclicElement {
    int n = 1;
    int k = 0;

    CyclicElement() = default;
    CyclicElement(int modulus, long long value);

    CyclicElement operator+(const CyclicElement& o) const;
    CyclicElement operator-(const CyclicElement& o) const;
    CyclicElement operator-() const;
    bool operator==(const CyclicElement&) const = default;
};

struct UnitComplex {
    double re = 1.0;
    double im = 0.0;

    static constexpr double tolerance = 1e-12;

    UnitComplex() = default;
    UnitComplex(double r, double i);

    UnitComplex operator*(const UnitComplex& o) const;
    bool approx(const UnitComplex& o, double tol = tolerance) const;
};

UnitComplex character(const CyclicElement& e);

// generator (1 2 ... n) of the cyclic subgroup used for cyclic labels
Permutation standard_cycle(int n);
// k with standard_cycle(n)^k == p, or -1
int cyclic_exponent(const Permutation& p);

}  // namespace tsf
