#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treering/protocol.hpp"
#include "treering/tree.hpp"

namespace treering {

// Weight of a configuration: 3 + depth(p) for each node still in InitP,
// 1 per FC, 1 per BC, 2 per AC, and 3 + depth(destination) per Info message.
// Zero exactly on quiescent states. Variants without FC (succ) or BC (pred)
// simply never contribute to the corresponding term.
struct WeightBreakdown {
    std::uint64_t node_term = 0;
    std::uint64_t fc_term = 0;
    std::uint64_t bc_term = 0;
    std::uint64_t ac_term = 0;
    std::uint64_t info_term = 0;
    std::uint64_t total() const { return node_term + fc_term + bc_term + ac_term + info_term; }
};

WeightBreakdown weight(const Configuration& config, const Tree& tree, Variant variant);

struct CheckResult {
    bool ok = true;
    std::vector<std::string> violations;
};

// Place invariant A (variants simplified and succ): InitP + first components
// of Succ + identities of Info and AC + destinations of BC cover every real
// node exactly once.
CheckResult check_invariant_A(const Configuration& config, const Tree& tree, Variant variant);

// Place invariant B (variants simplified and original): Succ + (destination,
// identity) of BC equals (source, destination) of FC + reversed Pred, as pair
// multisets. For variant original, entries with a fake value are dropped from
// both sides first.
CheckResult check_invariant_B(const Configuration& config, const Tree& tree, Variant variant);

// Exact decrement the weight norm must lose when event fires.
std::int64_t expected_weight_decrement(const Event& event, const Tree& tree, Variant variant);

struct WeightDecreaseResult {
    bool ok = true;
    std::int64_t observed = 0;
    std::int64_t expected = 0;
    std::string detail;
};

WeightDecreaseResult check_weight_decrease(const Configuration& pre, const Event& event, const Configuration& post,
                                           const Tree& tree, Variant variant);

enum class PredCase : std::uint8_t { OldestChild, PrecedingLeaf, LastLeaf };
const char* pred_case_name(PredCase c);

struct PredExpectation {
    PredCase kind{};
    NodeId expected = kFake;
};

// Case-analysis oracle for the predecessor of every node: the parent for an
// oldest child, the rightmost leaf of the elder sibling's subtree for any
// other non-root node, and the rightmost leaf of the whole tree for the root.
std::vector<PredExpectation> expected_predecessors(const Tree& tree);

struct RingReport {
    bool silent = false;
    bool is_ring = false;
    bool succ_matches_oracle = false;
    bool mirror_ok = false;
    bool pred_cases_ok = false;
    std::vector<std::string> details;
    bool all_ok() const { return silent && is_ring && succ_matches_oracle && mirror_ok && pred_cases_ok; }
};

// Judges a quiescent configuration; throws std::invalid_argument if any event
// is still enabled. A single-node tree quiesces immediately with no ring
// entry and is reported as vacuously correct.
RingReport check_terminal(const Configuration& config, const Tree& tree, Variant variant);

}  // namespace treering
