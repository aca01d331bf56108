#include "tsf/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tsf/error.hpp"

namespace tsf {

Rep::Rep(std::vector<int> twice_spins) : twice(std::move(twice_spins)) {
    if (twice.empty()) throw Error("representation must contain at least one irrep");
    for (int t : twice)
        if (t < 0) throw Error("negative spin");
    std::sort(twice.begin(), twice.end());
}

Rep Rep::from_spins(const std::vector<double>& spins) {
    std::vector<int> t;
    for (double j : spins) {
        double d = 2.0 * j;
        if (!std::isfinite(d) || std::abs(d - std::round(d)) > 1e-9 || d < -1e-9)
            throw Error("spin is not a non-negative half-integer");
        t.push_back(static_cast<int>(std::lround(d)));
    }
    return Rep(std::move(t));
}

std::vector<double> Rep::spins() const {
    std::vector<double> out;
    for (int t : twice) out.push_back(t / 2.0);
    return out;
}

long long Rep::dim() const {
    long long d = 0;
    for (int t : twice) d += t + 1;
    return d;
}

std::string Rep::str() const {
    std::string out = "{";
    for (size_t k = 0; k < twice.size(); ++k) {
        if (k) out += ',';
        out += (twice[k] % 2) ? std::to_string(twice[k]) + "/2" : std::to_string(twice[k] / 2);
    }
    return out + "}";
}

Rep tensor_decompose(const Rep& a, const Rep& b) {
    std::vector<int> out;
    for (int x : a.twice)
        for (int y : b.twice)
            for (int j = std::abs(x - y); j <= x + y; j += 2) out.push_back(j);
    return Rep(std::move(out));
}

Rep tensor_all(const std::vector<Rep>& reps) {
    Rep acc;
    for (const auto& r : reps) acc = tensor_decompose(acc, r);
    return acc;
}

std::string Intertwiner::str() const { return label + (is_identity ? "#id" : ""); }

}  // namespace tsf
