#include "treering/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace treering {

namespace {

std::string node_name(const Tree& tree, NodeId v) { return v == kFake ? "fake" : tree.label(v); }

std::string pair_name(const Tree& tree, std::pair<NodeId, NodeId> p) {
    return "(" + node_name(tree, p.first) + "," + node_name(tree, p.second) + ")";
}

}  // namespace

WeightBreakdown weight(const Configuration& config, const Tree& tree, Variant) {
    WeightBreakdown w;
    for (NodeId v : config.initp) w.node_term += 3 + tree.depth(v);
    for (const Message& msg : config.messages) {
        switch (msg.kind) {
            case MessageKind::FC: w.fc_term += 1; break;
            case MessageKind::BC: w.bc_term += 1; break;
            case MessageKind::AC: w.ac_term += 2; break;
            case MessageKind::Info: w.info_term += 3 + tree.depth(msg.destination); break;
        }
    }
    return w;
}

CheckResult check_invariant_A(const Configuration& config, const Tree& tree, Variant variant) {
    if (variant != Variant::simplified && variant != Variant::succ)
        throw std::invalid_argument("invariant A applies to variants simplified and succ only");

    std::map<NodeId, int> count;
    for (NodeId v : config.initp) ++count[v];
    for (const auto& [a, b] : config.succ) ++count[a];
    for (const Message& msg : config.messages) {
        if (msg.kind == MessageKind::Info || msg.kind == MessageKind::AC) ++count[msg.identity];
        if (msg.kind == MessageKind::BC) ++count[msg.destination];
    }

    CheckResult result;
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        int c = count.count(v) ? count[v] : 0;
        if (c != 1)
            result.violations.push_back("node " + node_name(tree, v) + " covered " + std::to_string(c) +
                                        " times (expected 1)");
        count.erase(v);
    }
    for (const auto& [v, c] : count)
        result.violations.push_back("unexpected coverage of " + node_name(tree, v));
    result.ok = result.violations.empty();
    return result;
}

CheckResult check_invariant_B(const Configuration& config, const Tree& tree, Variant variant) {
    if (variant != Variant::simplified && variant != Variant::original)
        throw std::invalid_argument("invariant B applies to variants simplified and original only");

    const bool drop_fake = variant == Variant::original;
    std::map<std::pair<NodeId, NodeId>, int> balance;
    for (const auto& entry : config.succ) {
        if (drop_fake && (entry.first == kFake || entry.second == kFake)) continue;
        ++balance[entry];
    }
    for (const auto& [a, b] : config.pred) {
        if (drop_fake && (a == kFake || b == kFake)) continue;
        --balance[{b, a}];
    }
    for (const Message& msg : config.messages) {
        if (msg.kind == MessageKind::BC) ++balance[{msg.destination, msg.identity}];
        if (msg.kind == MessageKind::FC) --balance[{msg.source, msg.destination}];
    }

    CheckResult result;
    for (const auto& [pair, c] : balance) {
        if (c == 0) continue;
        result.violations.push_back("pair " + pair_name(tree, pair) + " unbalanced by " + std::to_string(c));
    }
    result.ok = result.violations.empty();
    return result;
}

std::int64_t expected_weight_decrement(const Event& event, const Tree& tree, Variant variant) {
    switch (event.rule) {
        case Rule::T1:
            // Node weight 3+depth(p) is dropped; an FC of weight 1 appears
            // unless the variant has no FC messages.
            return (variant_emits_fc(variant) ? 2 : 3) + tree.depth(event.p);
        case Rule::T2: return 1;
        case Rule::T3: return 1;
        case Rule::T4a: return 1 + tree.depth(event.r);
        case Rule::T4b: return 1;
        case Rule::T4c: return variant_emits_bc(variant) ? 2 : 3;
        case Rule::T5: return variant_emits_bc(variant) ? 1 : 2;
        case Rule::T6: return 1;
    }
    return 0;
}

WeightDecreaseResult check_weight_decrease(const Configuration& pre, const Event& event, const Configuration& post,
                                           const Tree& tree, Variant variant) {
    WeightDecreaseResult result;
    result.observed = static_cast<std::int64_t>(weight(pre, tree, variant).total()) -
                      static_cast<std::int64_t>(weight(post, tree, variant).total());
    result.expected = expected_weight_decrement(event, tree, variant);
    result.ok = result.observed > 0 && result.observed == result.expected;
    if (!result.ok) {
        std::ostringstream os;
        os << event_to_string(event, tree) << ": weight changed by " << -result.observed << ", expected -"
           << result.expected;
        result.detail = os.str();
    }
    return result;
}

const char* pred_case_name(PredCase c) {
    switch (c) {
        case PredCase::OldestChild: return "oldest-child";
        case PredCase::PrecedingLeaf: return "preceding-leaf";
        case PredCase::LastLeaf: return "last-leaf";
    }
    return "?";
}

std::vector<PredExpectation> expected_predecessors(const Tree& tree) {
    std::vector<PredExpectation> out(tree.node_count());
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        if (v == tree.root()) {
            out[v] = {PredCase::LastLeaf, tree.last_leaf()};
        } else if (tree.child_position(v) == 1) {
            out[v] = {PredCase::OldestChild, tree.parent(v)};
        } else {
            NodeId elder = tree.children(tree.parent(v))[tree.child_position(v) - 2u];
            out[v] = {PredCase::PrecedingLeaf, tree.rightmost_leaf(elder)};
        }
    }
    return out;
}

namespace {

// Extracts a total map over real nodes from place entries, recording every
// defect. For variant original, leftover fake-valued entries are defects on
// trees with at least two nodes.
bool extract_map(const std::vector<std::pair<NodeId, NodeId>>& entries, const Tree& tree, bool drop_fake,
                 const char* place, std::vector<NodeId>& map, std::vector<std::string>& details) {
    bool ok = true;
    map.assign(tree.node_count(), kFake);
    std::vector<int> hits(tree.node_count(), 0);
    for (const auto& [a, b] : entries) {
        if (drop_fake && b == kFake) {
            details.push_back(std::string(place) + " keeps a bogus entry " + pair_name(tree, {a, b}));
            ok = false;
            continue;
        }
        if (a == kFake || a >= tree.node_count() || b == kFake || b >= tree.node_count()) {
            details.push_back(std::string(place) + " has entry " + pair_name(tree, {a, b}) + " outside the node set");
            ok = false;
            continue;
        }
        if (++hits[a] > 1) {
            details.push_back(std::string(place) + " has several entries for " + tree.label(a));
            ok = false;
            continue;
        }
        map[a] = b;
    }
    for (NodeId v = 0; v < tree.node_count(); ++v)
        if (hits[v] == 0) {
            details.push_back(std::string(place) + " has no entry for " + tree.label(v));
            ok = false;
        }
    return ok;
}

bool single_cycle(const std::vector<NodeId>& succ, const Tree& tree) {
    const NodeId n = tree.node_count();
    std::vector<bool> seen(n, false);
    NodeId v = tree.root();
    for (NodeId i = 0; i < n; ++i) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
        v = succ[v];
    }
    return v == tree.root();
}

}  // namespace

RingReport check_terminal(const Configuration& config, const Tree& tree, Variant variant) {
    if (!enabled_events(config, tree, variant).empty())
        throw std::invalid_argument("configuration is not quiescent");

    RingReport report;
    if (tree.node_count() == 1) {
        // Degenerate: both T1 and T2 are guard-disabled, the run is empty and
        // no ring entry is ever produced.
        report = {true, true, true, true, true, {"single-node tree: vacuously correct"}};
        return report;
    }

    report.silent = config.initp.empty() && config.messages.empty();
    if (!report.silent) report.details.push_back("terminal state is not silent");

    const bool drop_fake = variant == Variant::original;
    const std::vector<NodeId> oracle = dfs_ring_oracle(tree);

    std::vector<NodeId> ring;
    bool ring_total;
    if (variant == Variant::pred) {
        std::vector<std::pair<NodeId, NodeId>> reversed;
        reversed.reserve(config.pred.size());
        for (const auto& [a, b] : config.pred) reversed.emplace_back(b, a);
        std::sort(reversed.begin(), reversed.end());
        ring_total = extract_map(reversed, tree, false, "reversed Pred", ring, report.details);
    } else {
        ring_total = extract_map(config.succ, tree, drop_fake, "Succ", ring, report.details);
    }

    report.is_ring = ring_total && single_cycle(ring, tree);
    if (ring_total && !report.is_ring) report.details.push_back("successor map is not a single cycle");

    report.succ_matches_oracle = ring_total && ring == oracle;
    if (ring_total && !report.succ_matches_oracle)
        for (NodeId v = 0; v < tree.node_count(); ++v)
            if (ring[v] != oracle[v])
                report.details.push_back("succ(" + tree.label(v) + ") = " + node_name(tree, ring[v]) +
                                         ", expected " + node_name(tree, oracle[v]));

    if (variant == Variant::simplified || variant == Variant::original) {
        std::vector<NodeId> pred_map;
        bool pred_total = extract_map(config.pred, tree, drop_fake, "Pred", pred_map, report.details);
        report.mirror_ok = ring_total && pred_total;
        if (report.mirror_ok)
            for (NodeId v = 0; v < tree.node_count(); ++v)
                if (pred_map[ring[v]] != v) {
                    report.mirror_ok = false;
                    report.details.push_back("Pred is not the mirror of Succ at " + tree.label(v));
                }
    } else {
        report.mirror_ok = true;  // only one of the two maps exists
    }

    // Predecessor case analysis, on Pred where it exists, else on reversed Succ.
    std::vector<NodeId> pred_map(tree.node_count(), kFake);
    bool pred_total = true;
    if (variant_has_pred(variant)) {
        std::vector<std::string> scratch;
        pred_total = extract_map(config.pred, tree, drop_fake, "Pred", pred_map, scratch);
    } else if (ring_total) {
        for (NodeId v = 0; v < tree.node_count(); ++v) pred_map[ring[v]] = v;
    } else {
        pred_total = false;
    }
    report.pred_cases_ok = pred_total;
    if (pred_total) {
        const auto expectations = expected_predecessors(tree);
        for (NodeId v = 0; v < tree.node_count(); ++v)
            if (pred_map[v] != expectations[v].expected) {
                report.pred_cases_ok = false;
                report.details.push_back("pred(" + tree.label(v) + ") = " + node_name(tree, pred_map[v]) +
                                         ", expected " + node_name(tree, expectations[v].expected) + " (" +
                                         pred_case_name(expectations[v].kind) + " case)");
            }
    }
    return report;
}

}  // namespace treering
