#pragma once

#include <cstdint>
#include <vector>

#include "treering/protocol.hpp"
#include "treering/tree.hpp"

namespace treering::test {

// Independent oracle for exhaustive-exploration sizes, computed from the tree
// structure alone (no protocol engine, no explorer).
//
// Along any run, each token has exactly one consuming rule binding, so the
// events form disjoint causal chains: per non-leaf p the chain T1(p) [then
// T3 at its oldest child when FC messages exist], and per leaf l the chain
// T2(l), one T4b per hop the Info makes towards its resolution point, then
// either T4a+T5 (a sibling takes over) or T4c (the root does), then T6 when
// BC messages exist. All chains are pairwise independent, so the reachable
// states are exactly the products of chain prefixes:
//   states = prod_i (len_i + 1)
//   arcs   = sum_i len_i * states / (len_i + 1)
//   events = sum_i len_i   (every maximal run fires each chain completely)
struct ChainCounts {
    std::uint64_t states = 1;
    std::uint64_t arcs = 0;
    std::uint64_t events = 0;
};

inline std::vector<std::uint64_t> causal_chain_lengths(const Tree& tree, Variant variant) {
    std::vector<std::uint64_t> lengths;
    if (tree.node_count() == 1) return lengths;  // both init rules are guard-disabled
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        if (!tree.is_leaf(v)) {
            lengths.push_back(variant_emits_fc(variant) ? 2 : 1);
            continue;
        }
        std::uint64_t len = 1;  // T2
        NodeId sender = v;
        for (;;) {
            NodeId receiver = tree.parent(sender);
            if (tree.next_sibling(sender) != kFake) {
                len += 2;  // T4a, T5
                break;
            }
            if (receiver == tree.root()) {
                len += 1;  // T4c
                break;
            }
            len += 1;  // T4b
            sender = receiver;
        }
        if (variant_emits_bc(variant)) len += 1;  // T6
        lengths.push_back(len);
    }
    return lengths;
}

inline ChainCounts chain_product_counts(const Tree& tree, Variant variant) {
    ChainCounts counts;
    const auto lengths = causal_chain_lengths(tree, variant);
    for (std::uint64_t len : lengths) {
        counts.states *= len + 1;
        counts.events += len;
    }
    for (std::uint64_t len : lengths) counts.arcs += len * (counts.states / (len + 1));
    return counts;
}

}  // namespace treering::test
