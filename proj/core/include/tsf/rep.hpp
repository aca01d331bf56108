#pragma once

#include <string>
#include <vector>

namespace tsf {

// SU(2) representation as a sorted multiset of irreps, stored as twice-spins.
struct Rep {
    std::vector<int> twice;

    Rep() : twice{0} {}
    explicit Rep(std::vector<int> twice_spins);
    static Rep from_spins(const std::vector<double>& spins);
    static Rep spin(double j) { return from_spins({j}); }

    std::vector<double> spins() const;
    long long dim() const;
    std::string str() const;

    auto operator<=>(const Rep&) const = default;
    bool operator==(const Rep&) const = default;
};

Rep tensor_decompose(const Rep& a, const Rep& b);
// left fold of tensor_decompose, trivial rep for an empty list
Rep tensor_all(const std::vector<Rep>& reps);

struct Intertwiner {
    std::string label;
    bool is_identity = false;
    std::vector<Rep> domain;
    std::vector<Rep> codomain;

    bool operator==(const Intertwiner&) const = default;
    std::string str() const;
};

}  // namespace tsf
