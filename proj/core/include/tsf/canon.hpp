#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tsf {

// Node- and edge-colored directed graph used as the canonical form carrier.
struct ColoredGraph {
    std::vector<std::string> color;
    std::vector<std::vector<std::pair<int, std::string>>> out;

    int add_node(std::string c);
    void add_edge(int from, int to, std::string label);
    int size() const { return static_cast<int>(color.size()); }
    // subgraph on the kept nodes, with map old -> new (-1 when dropped)
    ColoredGraph induced(const std::vector<char>& keep, std::vector<int>* remap = nullptr) const;
};

struct Canonical {
    std::string form;
    std::vector<int> position;  // node -> canonical index
};

Canonical canonicalize(const ColoredGraph& g);

// node of a -> node of b; forms must be equal
std::vector<int> isomorphism(const Canonical& a, const Canonical& b);

std::string fnv1a_hex(const std::string& s);

struct CanonicalKey {
    std::string form;

    std::string digest() const { return fnv1a_hex(form); }
    auto operator<=>(const CanonicalKey&) const = default;
    bool operator==(const CanonicalKey&) const = default;
};

}  // namespace tsf
