#include "tsf/perm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tsf/error.hpp"

namespace tsf {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    if (img_.empty()) throw Error("permutation degree must be at least 1");
    std::vector<char> seen(img_.size() + 1, 0);
    for (int x : img_) {
        if (x < 1 || x > degree() || seen[x])
            throw Error("permutation images are not a bijection on 1.." + std::to_string(degree()));
        seen[x] = 1;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 1) throw Error("permutation degree must be at least 1");
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n || j > n) throw Error("bad transposition");
    auto p = identity(n);
    std::swap(p.img_[i - 1], p.img_[j - 1]);
    return p;
}

Permutation Permutation::cycle(int n, const std::vector<int>& c) {
    auto p = identity(n);
    for (size_t t = 0; t < c.size(); ++t) {
        int a = c[t], b = c[(t + 1) % c.size()];
        if (a < 1 || a > n) throw Error("cycle entry out of range");
        p.img_[a - 1] = b;
    }
    return Permutation(p.img_);
}

bool Permutation::is_identity() const {
    for (int k = 0; k < degree(); ++k)
        if (img_[k] != k + 1) return false;
    return true;
}

std::string Permutation::str() const {
    std::string out;
    std::vector<char> seen(img_.size() + 1, 0);
    for (int s = 1; s <= degree(); ++s) {
        if (seen[s] || img_[s - 1] == s) continue;
        out += '(';
        int x = s;
        bool first = true;
        while (!seen[x]) {
            seen[x] = 1;
            if (!first) out += ' ';
            out += std::to_string(x);
            first = false;
            x = img_[x - 1];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::string Permutation::images_str() const {
    std::string out = "[";
    for (size_t k = 0; k < img_.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(img_[k]);
    }
    return out + "]";
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw Error("degree mismatch in compose");
    std::vector<int> r(p.degree());
    for (int x = 1; x <= p.degree(); ++x) r[x - 1] = p(q(x));
    return Permutation(std::move(r));
}

Permutation inverse(const Permutation& p) {
    std::vector<int> r(p.degree());
    for (int x = 1; x <= p.degree(); ++x) r[p(x) - 1] = x;
    return Permutation(std::move(r));
}

Permutation conjugate(const Permutation& base, const Permutation& by) {
    if (base.degree() != by.degree()) throw Error("degree mismatch in conjugate");
    return compose(by, compose(base, inverse(by)));
}

Permutation extend_degree(const Permutation& p, int new_degree) {
    if (new_degree < p.degree()) throw Error("extend_degree: new degree below current degree");
    std::vector<int> r = p.images();
    for (int x = p.degree() + 1; x <= new_degree; ++x) r.push_back(x);
    return Permutation(std::move(r));
}

std::vector<int> cycle_type(const Permutation& p) {
    std::vector<int> lens;
    std::vector<char> seen(p.degree() + 1, 0);
    for (int s = 1; s <= p.degree(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (int x = s; !seen[x]; x = p(x)) {
            seen[x] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

bool is_transposition(const Permutation& p) {
    auto ct = cycle_type(p);
    return !ct.empty() && ct[0] == 2 && (ct.size() < 2 || ct[1] == 1);
}

int order(const Permutation& p) {
    int o = 1;
    for (int len : cycle_type(p)) o = std::lcm(o, len);
    return o;
}

Permutation product_action(const Permutation& sigma, const Permutation& tau) {
    int n = sigma.degree(), m = tau.degree();
    std::vector<int> r(n * m);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) r[(i - 1) * m + j - 1] = (sigma(i) - 1) * m + tau(j);
    return Permutation(std::move(r));
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

std::vector<Permutation> all_transpositions(int n) {
    std::vector<Permutation> out;
    for (auto& p : all_permutations(n))
        if (is_transposition(p)) out.push_back(p);
    return out;
}

CyclicElement::CyclicElement(int modulus, long long value) : n(modulus) {
    if (modulus < 1) throw Error("cyclic modulus must be positive");
    long long r = value % modulus;
    if (r < 0) r += modulus;
    k = static_cast<int>(r);
}

CyclicElement CyclicElement::operator+(const CyclicElement& o) const {
    if (n != o.n) throw Error("cyclic modulus mismatch");
    return CyclicElement(n, static_cast<long long>(k) + o.k);
}

CyclicElement CyclicElement::operator-(const CyclicElement& o) const {
    if (n != o.n) throw Error("cyclic modulus mismatch");
    return CyclicElement(n, static_cast<long long>(k) - o.k);
}

CyclicElement CyclicElement::operator-() const { return CyclicElement(n, -static_cast<long long>(k)); }

UnitComplex::UnitComplex(double r, double i) : re(r), im(i) {
    if (std::abs(std::hypot(r, i) - 1.0) > tolerance) throw Error("UnitComplex off the unit circle");
}

UnitComplex UnitComplex::operator*(const UnitComplex& o) const {
    UnitComplex z;
    z.re = re * o.re - im * o.im;
    z.im = re * o.im + im * o.re;
    return z;
}

bool UnitComplex::approx(const UnitComplex& o, double tol) const {
    return std::abs(re - o.re) <= tol && std::abs(im - o.im) <= tol;
}

UnitComplex character(const CyclicElement& e) {
    // exact values on the axes so that small cases compare cleanly
    if (e.k == 0) return {1.0, 0.0};
    if (4 * e.k == e.n) return {0.0, 1.0};
    if (2 * e.k == e.n) return {-1.0, 0.0};
    if (4 * e.k == 3 * e.n) return {0.0, -1.0};
    double a = 2.0 * std::numbers::pi * e.k / e.n;
    UnitComplex z;
    z.re = std::cos(a);
    z.im = std::sin(a);
    return z;
}

Permutation standard_cycle(int n) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 1);
    return Permutation::cycle(n, c);
}

int cyclic_exponent(const Permutation& p) {
    int n = p.degree();
    // c^k sends 1 to 1+k
    int k = p(1) - 1;
    for (int x = 1; x <= n; ++x)
        if (p(x) != (x - 1 + k) % n + 1) return -1;
    return k;
}

bool transitive(const std::vector<Permutation>& gens, int n) {
    std::vector<char> seen(n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
            int y = g(x);
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

}  // namespace tsf
