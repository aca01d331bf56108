#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsf/diagram.hpp"
#include "tsf/network_key.hpp"

namespace tsf {

enum class MoveKind {
    V1,
    V2,
    C1,
    C2,
    V1_inverse,
    V2_inverse,
    C1_inverse,
    C2_inverse,
    Stabilize,
    Destabilize
};

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

// Site layout per kind:
//   V1 [edge]            V1_inverse [edge, edge]
//   V2 [vertex]          V2_inverse [arc, arc]
//   C1 [crossing]        C1_inverse [crossing, crossing]
//   C2 / C2_inverse [crossing]
//   Stabilize []         Destabilize [edge]
struct MoveSpec {
    MoveKind kind = MoveKind::Stabilize;
    std::vector<Id> site;
    std::vector<Permutation> perms;  // V1: sigma1, sigma2 with sigma = sigma1 sigma2
    std::vector<Rep> reps;           // V1: rho1, rho2 with rho = rho1 (x) rho2
    std::vector<Id> moved;           // V2_inverse / C1: crossings whose over arc moves to the new tail arc
    std::optional<Intertwiner> iota; // V2_inverse: intertwiner of the inserted vertex
    std::vector<int> signs;          // C1: signs of the two new crossings; C1_inverse: restored sign
    bool operator==(const MoveSpec&) const = default;
    std::string str() const;
};

struct MoveResult {
    TopspinNetwork net;
    MoveSpec inverse;
};

TopspinNetwork apply_move(const TopspinNetwork& net, const MoveSpec& m);
MoveResult apply_move_with_inverse(const TopspinNetwork& net, const MoveSpec& m);
// spec undoing m, expressed in the ids of apply_move(net, m)
MoveSpec inverse_move(const TopspinNetwork& net, const MoveSpec& m);

TopspinNetwork stabilize(const TopspinNetwork& net);

// renames the cells a spec refers to
MoveSpec translate(const MoveSpec& m, const NetworkIso& iso);

struct MoveOptions {
    int v1_max_order = 4;   // V1 factorizations enumerated only up to this order
    int v1_max_irreps = 2;  // irreps per tensor factor
    bool v2_inverse = true;
    bool c2_inverse = false;  // C2_inverse coincides with C2 on every site
    bool stabilize = false;
    bool destabilize = true;
};

struct Successor {
    MoveSpec move;
    MoveResult result;
};

// every candidate instance whose preconditions hold, with its output
std::vector<Successor> successors(const TopspinNetwork& net, const MoveOptions& opt = {});
std::vector<MoveSpec> applicable_moves(const TopspinNetwork& net, const MoveOptions& opt = {});

// pairs (rho1, rho2) with rho1 (x) rho2 == rho and at most max_irreps irreps each
std::vector<std::pair<Rep, Rep>> tensor_factorizations(const Rep& rho, int max_irreps);

struct Certificate {
    std::vector<MoveSpec> moves;
    std::vector<std::string> keys;  // canonical key digests, start network first
};

struct SearchBudget {
    int max_moves = 8;
    int max_stabilizations = 0;
    long long max_states = 20000;
    int threads = 0;  // 0: hardware concurrency
};

struct SearchStats {
    long long states_a = 0;
    long long states_b = 0;
    int depth_a = 0;
    int depth_b = 0;
    std::string reason;  // why the search stopped without a certificate
};

struct SearchResult {
    std::optional<Certificate> certificate;  // empty means unknown
    SearchStats stats;
};

SearchResult equivalence_search(const TopspinNetwork& a, const TopspinNetwork& b, const SearchBudget& budget,
                                const MoveOptions& opt = {});

struct ReplayReport {
    bool ok = false;
    size_t failed_step = 0;
    std::string message;
};

// replays the moves from a, compares every intermediate key and the final one with b
ReplayReport verify_certificate(const TopspinNetwork& a, const Certificate& c, const TopspinNetwork& b);

}  // namespace tsf
