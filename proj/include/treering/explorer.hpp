#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treering/protocol.hpp"
#include "treering/tree.hpp"

namespace treering {

enum class CheckKind : std::uint8_t { InvariantA, InvariantB, WeightDecrease };
const char* check_kind_name(CheckKind c);

// Checks applicable to a variant: invariant A needs the places of
// simplified/succ, invariant B those of simplified/original, the weight
// decrement check applies everywhere.
bool check_applies(CheckKind check, Variant variant);
std::vector<CheckKind> all_checks_for(Variant variant);

struct ExploreOptions {
    std::vector<CheckKind> checks;
    std::optional<std::uint64_t> state_bound;
    bool reduced = false;        // explore one dependency class per state
    bool record_graph = false;   // keep edges while the graph stays small
};

inline constexpr std::uint64_t kDotStateLimit = 10'000;

struct ViolationRecord {
    std::string check;
    std::uint64_t state_digest = 0;
    std::string detail;
    std::vector<Event> trace;  // shortest event sequence from the initial state
};

struct GraphEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    Event event;
};

struct ExplorationReport {
    std::uint64_t tree_digest = 0;
    Variant variant{};
    bool reduced = false;
    std::uint64_t states = 0;
    std::uint64_t arcs = 0;  // one per (state, event binding) explored
    std::vector<Configuration> terminals;
    std::uint64_t max_frontier = 0;
    double elapsed_seconds = 0;
    std::vector<ViolationRecord> violations;
    bool violations_truncated = false;
    bool bound_exceeded = false;
    std::vector<GraphEdge> edges;
    bool graph_recorded = false;
};

// Breadth-first exhaustive exploration of every interleaving from the default
// initial configuration. Deterministic: identical inputs give identical
// reports (modulo elapsed_seconds).
ExplorationReport explore(const Tree& tree, Variant variant, const ExploreOptions& options = {});

// Terminal-preserving reduction: per state, only the dependency class of the
// first enabled event is explored, where two events are dependent when their
// consumed/produced tokens (InitP elements, Succ/Pred keys, message
// instances) overlap. Every token in this protocol family has a unique
// consuming binding, so unexplored events stay enabled and independent until
// fired; terminal states are therefore preserved.
ExplorationReport explore_reduced(const Tree& tree, Variant variant, const ExploreOptions& options = {});

// Graphviz rendering of a recorded reachability graph (record_graph runs
// with at most kDotStateLimit states).
std::string statespace_dot(const ExplorationReport& report, const Tree& tree);

// Graphviz rendering of a terminal ring over the tree: tree edges in grey,
// ring edges coloured by predecessor case (oldest-child red, preceding-leaf
// green, last-leaf blue).
std::string ring_dot(const Configuration& terminal, const Tree& tree, Variant variant);

}  // namespace treering
