#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsf/algebra.hpp"
#include "tsf/amplitude.hpp"

namespace tsf {

enum class GeneratorKind { order, order_faces, area, amplitude_ratio, defect_twist, semigroupoid_amplitude };
std::string to_string(GeneratorKind k);
// also accepts "hamiltonian" for semigroupoid_amplitude
GeneratorKind generator_kind_from_string(const std::string& s);

struct Generator {
    GeneratorKind kind = GeneratorKind::order;
    double hbar = 1.0;
    AmplitudeModel model = trivial_model();
};

// Real charge L of a morphism: the generator acts on a delta by exp(i t L).
double charge(const Morphism& m, const Generator& gen);
ConvolutionElement evolve(const ConvolutionElement& f, double t, const Generator& gen);
// analytic continuation to t = i beta: entries scaled by exp(-beta L)
ConvolutionElement evolve_imaginary(const ConvolutionElement& f, double beta, const Generator& gen);

// hbar * sum over edges of N(e) * sqrt(j(j+1)); every edge needs an N value
double area_operator(const TopspinNetwork& net, const std::map<Id, double>& N, double hbar = 1.0);
// N = characteristic function of the marked subgraph
double marked_area(const TopspinNetwork& net, double hbar = 1.0);

struct TruncatedBasis {
    AlgebraTag tag = AlgebraTag::groupoid;
    std::vector<Morphism> keys;
    std::string rule;
    int bound = 0;

    // appends unless the key is already present
    bool insert(const Morphism& m);
    int index_of(const CanonicalKey& k) const;

private:
    std::map<CanonicalKey, int> index_;
};

// networks reachable by covering moves, as pairs (psi, psi0) with the common target psi0
TruncatedBasis move_basis(const TopspinNetwork& psi0, int max_moves, int max_size);
// suffixes of a chain of composable foams: every basis foam ends at the chain's target.
// Segment products stay in the basis when the intermediate networks are pairwise distinct.
TruncatedBasis chain_basis(const std::vector<TopspinFoam>& chain);

struct Representation {
    Eigen::MatrixXcd matrix;
    long dropped = 0;  // composites that left the basis
};

// (pi(f) xi)(B) = sum over m, B' with m B' = B of f(m) xi(B')
Representation represent(const ConvolutionElement& f, const TruncatedBasis& basis);
std::vector<double> eigenvalues(const TruncatedBasis& basis, const Generator& gen);

double partition_function(const std::vector<double>& h, double beta);
double partition_function(const TruncatedBasis& basis, const Generator& gen, double beta);
Complex gibbs_state(const ConvolutionElement& f, const TruncatedBasis& basis, const Generator& gen, double beta);
// the same state on a precomputed matrix and spectrum
Complex gibbs_state(const Eigen::MatrixXcd& a, const std::vector<double>& h, double beta);

// spectrum h_n = c n with multiplicity ceil(exp(kappa n)), n = 0..N
struct Level {
    double h;
    double multiplicity;
};
std::vector<Level> synthetic_spectrum(double c, double kappa, int N);
double partition_function(const std::vector<Level>& levels, double beta);
// geometric bounds sum r^n <= Z_N < sum r^n + sum q^n with r = exp(kappa - beta c), q = exp(-beta c)
std::pair<double, double> synthetic_bounds(double c, double kappa, int N, double beta);

}  // namespace tsf
