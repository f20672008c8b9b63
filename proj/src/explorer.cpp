#include "treering/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "treering/digest.hpp"
#include "treering/verify.hpp"

namespace treering {

const char* check_kind_name(CheckKind c) {
    switch (c) {
        case CheckKind::InvariantA: return "A";
        case CheckKind::InvariantB: return "B";
        case CheckKind::WeightDecrease: return "weight";
    }
    return "?";
}

bool check_applies(CheckKind check, Variant variant) {
    switch (check) {
        case CheckKind::InvariantA: return variant == Variant::simplified || variant == Variant::succ;
        case CheckKind::InvariantB: return variant == Variant::simplified || variant == Variant::original;
        case CheckKind::WeightDecrease: return true;
    }
    return false;
}

std::vector<CheckKind> all_checks_for(Variant variant) {
    std::vector<CheckKind> out;
    for (CheckKind c : {CheckKind::InvariantA, CheckKind::InvariantB, CheckKind::WeightDecrease})
        if (check_applies(c, variant)) out.push_back(c);
    return out;
}

namespace {

constexpr std::size_t kMaxViolationRecords = 256;

// Tokens an event consumes or produces, packed for overlap detection.
// Tag in the top bits: 0 InitP element, 1 Succ key, 2 Pred key, 3 message.
void event_footprint(const Event& e, Variant variant, std::vector<std::uint64_t>& out) {
    auto node_token = [](unsigned tag, NodeId v) {
        return (static_cast<std::uint64_t>(tag) << 56) | v;
    };
    auto message_token = [](const Message& m) {
        return (3ull << 56) | (static_cast<std::uint64_t>(m.kind) << 48) |
               (static_cast<std::uint64_t>(m.identity) << 32) | (static_cast<std::uint64_t>(m.source) << 16) |
               m.destination;
    };
    out.clear();
    switch (e.rule) {
        case Rule::T1:
            out.push_back(node_token(0, e.p));
            if (variant_has_succ(variant)) out.push_back(node_token(1, e.p));
            break;
        case Rule::T2:
            out.push_back(node_token(0, e.p));
            break;
        case Rule::T3:
            out.push_back(node_token(2, e.r));
            break;
        case Rule::T4a:
        case Rule::T4b:
            break;
        case Rule::T4c:
        case Rule::T5:
            if (variant_has_pred(variant)) out.push_back(node_token(2, e.r));
            break;
        case Rule::T6:
            out.push_back(node_token(1, e.r));
            break;
    }
    if (auto msg = consumed_message(e, variant)) out.push_back(message_token(*msg));
    for (const Message& msg : produced_messages(e, variant)) out.push_back(message_token(msg));
}

// The dependency class of events.front() under token-footprint overlap,
// closed transitively. Events of the class keep their canonical order.
std::vector<Event> persistent_subset(const std::vector<Event>& events, Variant variant) {
    if (events.size() <= 1) return events;

    std::vector<std::vector<std::uint64_t>> footprints(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) {
        event_footprint(events[i], variant, footprints[i]);
        std::sort(footprints[i].begin(), footprints[i].end());
    }
    auto overlap = [&footprints](std::size_t a, std::size_t b) {
        const auto& fa = footprints[a];
        const auto& fb = footprints[b];
        std::size_t i = 0, j = 0;
        while (i < fa.size() && j < fb.size()) {
            if (fa[i] == fb[j]) return true;
            if (fa[i] < fb[j]) ++i; else ++j;
        }
        return false;
    };

    std::vector<bool> selected(events.size(), false);
    selected[0] = true;
    std::vector<std::size_t> work{0};
    while (!work.empty()) {
        std::size_t a = work.back();
        work.pop_back();
        for (std::size_t b = 0; b < events.size(); ++b)
            if (!selected[b] && overlap(a, b)) {
                selected[b] = true;
                work.push_back(b);
            }
    }
    std::vector<Event> out;
    for (std::size_t i = 0; i < events.size(); ++i)
        if (selected[i]) out.push_back(events[i]);
    return out;
}

struct ViolationSink {
    ExplorationReport& report;
    bool enabled;

    void add(const char* check, std::uint64_t digest, std::string detail, std::vector<Event> trace) {
        if (report.violations.size() >= kMaxViolationRecords) {
            report.violations_truncated = true;
            return;
        }
        report.violations.push_back({check, digest, std::move(detail), std::move(trace)});
    }
};

}  // namespace

ExplorationReport explore(const Tree& tree, Variant variant, const ExploreOptions& options) {
    const auto started = std::chrono::steady_clock::now();

    ExplorationReport report;
    report.tree_digest = tree.digest();
    report.variant = variant;
    report.reduced = options.reduced;

    bool want_a = false, want_b = false, want_weight = false;
    for (CheckKind c : options.checks) {
        if (!check_applies(c, variant))
            throw std::invalid_argument(std::string("check ") + check_kind_name(c) + " does not apply to variant " +
                                        variant_name(variant));
        if (c == CheckKind::InvariantA) want_a = true;
        if (c == CheckKind::InvariantB) want_b = true;
        if (c == CheckKind::WeightDecrease) want_weight = true;
    }
    const bool track_parents = want_a || want_b || want_weight;
    ViolationSink sink{report, true};

    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<const std::string*> keys;
    struct ParentLink {
        std::uint32_t parent = 0;
        Event event;
    };
    std::vector<ParentLink> parents;

    auto rebuild_trace = [&](std::uint32_t id) {
        std::vector<Event> trace;
        while (id != 0) {
            trace.push_back(parents[id].event);
            id = parents[id].parent;
        }
        std::reverse(trace.begin(), trace.end());
        return trace;
    };

    auto run_state_checks = [&](const Configuration& config, std::uint32_t id) {
        if (want_a) {
            CheckResult res = check_invariant_A(config, tree, variant);
            if (!res.ok)
                for (const std::string& v : res.violations)
                    sink.add("A", config_digest(config, tree), v, rebuild_trace(id));
        }
        if (want_b) {
            CheckResult res = check_invariant_B(config, tree, variant);
            if (!res.ok)
                for (const std::string& v : res.violations)
                    sink.add("B", config_digest(config, tree), v, rebuild_trace(id));
        }
    };

    auto insert_state = [&](std::string key) -> std::pair<std::uint32_t, bool> {
        auto [it, inserted] = index.emplace(std::move(key), static_cast<std::uint32_t>(keys.size()));
        if (inserted) {
            keys.push_back(&it->first);
            if (track_parents) parents.emplace_back();
        }
        return {it->second, inserted};
    };

    Configuration initial = initial_config(tree, variant);
    insert_state(encode_config(initial, tree));
    run_state_checks(initial, 0);

    std::deque<std::uint32_t> queue{0};
    report.max_frontier = 1;

    bool aborted = false;
    while (!queue.empty() && !aborted) {
        std::uint32_t id = queue.front();
        queue.pop_front();
        Configuration config = decode_config(*keys[id], tree);

        std::vector<Event> events = enabled_events(config, tree, variant);
        if (events.empty()) {
            report.terminals.push_back(config);
            continue;
        }
        if (options.reduced) events = persistent_subset(events, variant);

        for (const Event& event : events) {
            ++report.arcs;
            Configuration next = fire(config, event, tree, variant);
            if (want_weight) {
                WeightDecreaseResult res = check_weight_decrease(config, event, next, tree, variant);
                if (!res.ok) {
                    auto trace = rebuild_trace(id);
                    trace.push_back(event);
                    sink.add("weight", config_digest(config, tree), res.detail, std::move(trace));
                }
            }
            auto [next_id, inserted] = insert_state(encode_config(next, tree));
            if (inserted) {
                if (track_parents) parents[next_id] = {id, event};
                run_state_checks(next, next_id);
                queue.push_back(next_id);
                report.max_frontier = std::max<std::uint64_t>(report.max_frontier, queue.size());
                if (options.state_bound && keys.size() > *options.state_bound) {
                    report.bound_exceeded = true;
                    aborted = true;
                    break;
                }
            }
            if (options.record_graph && keys.size() <= kDotStateLimit)
                report.edges.push_back({id, next_id, event});
        }
    }

    report.states = keys.size();
    report.graph_recorded = options.record_graph && !report.bound_exceeded && report.states <= kDotStateLimit;
    if (!report.graph_recorded) report.edges.clear();
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

ExplorationReport explore_reduced(const Tree& tree, Variant variant, const ExploreOptions& options) {
    ExploreOptions reduced = options;
    reduced.reduced = true;
    return explore(tree, variant, reduced);
}

std::string statespace_dot(const ExplorationReport& report, const Tree& tree) {
    if (!report.graph_recorded)
        throw std::invalid_argument("reachability graph was not recorded (more than " +
                                    std::to_string(kDotStateLimit) + " states, bound exceeded, or not requested)");
    std::ostringstream os;
    os << "digraph statespace {\n  rankdir=LR;\n  node [shape=circle,label=\"\",width=0.12];\n";
    os << "  s0 [shape=doublecircle,label=\"init\",width=0.3];\n";
    std::vector<bool> has_out(report.states, false);
    for (const GraphEdge& e : report.edges) has_out[e.src] = true;
    for (std::uint64_t id = 0; id < report.states; ++id)
        if (!has_out[id] && id != 0) os << "  s" << id << " [shape=doublecircle,label=\"final\",width=0.3];\n";
    for (const GraphEdge& e : report.edges)
        os << "  s" << e.src << " -> s" << e.dst << " [label=\"" << event_to_string(e.event, tree) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string ring_dot(const Configuration& terminal, const Tree& tree, Variant variant) {
    auto colour_of = [](PredCase c) {
        switch (c) {
            case PredCase::OldestChild: return "red";
            case PredCase::PrecedingLeaf: return "green";
            case PredCase::LastLeaf: return "blue";
        }
        return "black";
    };

    std::ostringstream os;
    os << "digraph ring {\n  node [shape=circle];\n";
    for (NodeId v = 0; v < tree.node_count(); ++v) {
        for (NodeId c : tree.children(v))
            os << "  " << tree.label(v) << " -> " << tree.label(c) << " [color=grey,style=dashed,arrowhead=none];\n";
    }
    const auto expectations = expected_predecessors(tree);
    auto emit_ring_edge = [&](NodeId from, NodeId to) {
        // Edge pred(v) -> v is classified by v's predecessor case.
        os << "  " << tree.label(from) << " -> " << tree.label(to) << " [color=" << colour_of(expectations[to].kind)
           << ",penwidth=2];\n";
    };
    if (variant == Variant::pred) {
        for (const auto& [v, p] : terminal.pred)
            if (v != kFake && p != kFake) emit_ring_edge(p, v);
    } else {
        for (const auto& [v, s] : terminal.succ)
            if (v != kFake && s != kFake) emit_ring_edge(v, s);
    }
    os << "}\n";
    return os.str();
}

}  // namespace treering
