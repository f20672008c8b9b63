#include "treering/semantics.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "treering/verify.hpp"

namespace treering {

std::optional<SchedulerPolicy> SchedulerPolicy::parse(std::string_view name, std::uint64_t seed) {
    if (name == "lex" || name == "lexicographic") return SchedulerPolicy{Kind::lexicographic, seed};
    if (name == "fifo") return SchedulerPolicy{Kind::fifo, seed};
    if (name == "lifo") return SchedulerPolicy{Kind::lifo, seed};
    if (name == "random") return SchedulerPolicy{Kind::random, seed};
    return std::nullopt;
}

std::string SchedulerPolicy::name() const {
    switch (kind) {
        case Kind::lexicographic: return "lexicographic";
        case Kind::fifo: return "fifo";
        case Kind::lifo: return "lifo";
        case Kind::random: return "random";
    }
    return "?";
}

namespace {

bool is_init_rule(Rule rule) { return rule == Rule::T1 || rule == Rule::T2; }

std::size_t select_event(const std::vector<Event>& events, const SchedulerPolicy& policy, std::mt19937_64& rng,
                         const std::map<Message, std::uint64_t>& production_order, Variant variant) {
    switch (policy.kind) {
        case SchedulerPolicy::Kind::lexicographic:
            return 0;
        case SchedulerPolicy::Kind::random:
            return static_cast<std::size_t>(rng() % events.size());
        case SchedulerPolicy::Kind::fifo: {
            if (is_init_rule(events.front().rule)) return 0;  // canonical order lists T1/T2 first
            std::size_t best = 0;
            std::uint64_t best_seq = ~0ull;
            for (std::size_t i = 0; i < events.size(); ++i) {
                auto msg = consumed_message(events[i], variant);
                auto it = production_order.find(*msg);
                std::uint64_t seq = it == production_order.end() ? 0 : it->second;
                if (seq < best_seq) {
                    best_seq = seq;
                    best = i;
                }
            }
            return best;
        }
        case SchedulerPolicy::Kind::lifo: {
            std::size_t best = events.size();
            std::uint64_t best_seq = 0;
            for (std::size_t i = 0; i < events.size(); ++i) {
                if (is_init_rule(events[i].rule)) continue;
                auto msg = consumed_message(events[i], variant);
                auto it = production_order.find(*msg);
                std::uint64_t seq = it == production_order.end() ? 0 : it->second;
                if (best == events.size() || seq >= best_seq) {
                    best_seq = seq;
                    best = i;
                }
            }
            return best == events.size() ? 0 : best;  // only init events left
        }
    }
    return 0;
}

}  // namespace

Trace run_to_quiescence(std::shared_ptr<const Tree> tree, Variant variant, const RunOptions& options,
                        const std::optional<SeedState>& seed) {
    if (!tree) throw std::invalid_argument("tree must not be null");

    Trace trace;
    trace.tree = tree;
    trace.variant = variant;
    trace.policy = options.policy;
    trace.initial = initial_config(*tree, variant, seed);

    Configuration config = trace.initial;
    const std::uint64_t step_budget = weight(config, *tree, variant).total() + 1;

    std::mt19937_64 rng(options.policy.seed);
    std::map<Message, std::uint64_t> production_order;
    std::uint64_t next_seq = 1;

    for (std::uint64_t steps = 0;; ++steps) {
        std::vector<Event> events = enabled_events(config, *tree, variant);
        if (events.empty()) break;
        if (steps >= step_budget)
            throw std::logic_error("run exceeded the weight-derived step budget; the norm argument is broken");

        const Event& event = events[select_event(events, options.policy, rng, production_order, variant)];
        config = fire(config, event, *tree, variant);
        for (const Message& msg : produced_messages(event, variant)) production_order[msg] = next_seq++;

        TraceStep step;
        step.event = event;
        step.digest = config_digest(config, *tree);
        if (options.full_trace) step.config = config;
        trace.steps.push_back(std::move(step));
    }

    trace.final_config = std::move(config);
    return trace;
}

MessageStats message_stats(const Trace& trace) {
    if (!trace.tree) throw std::invalid_argument("trace has no tree");
    if (!enabled_events(trace.final_config, *trace.tree, trace.variant).empty())
        throw std::invalid_argument("incomplete trace: final configuration is not quiescent");

    MessageStats stats;
    for (const TraceStep& step : trace.steps) {
        for (const Message& msg : produced_messages(step.event, trace.variant)) {
            switch (msg.kind) {
                case MessageKind::FC: ++stats.fc; break;
                case MessageKind::Info: ++stats.info; break;
                case MessageKind::AC: ++stats.ac; break;
                case MessageKind::BC: ++stats.bc; break;
            }
        }
    }
    return stats;
}

}  // namespace treering
