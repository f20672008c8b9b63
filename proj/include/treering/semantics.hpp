#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treering/protocol.hpp"
#include "treering/tree.hpp"

namespace treering {

// Scheduling policies for single runs. random is fully determined by its
// seed. fifo fires initialisation events first (lexicographically by process
// label), then message events in message production order; lifo prefers the
// event consuming the newest message and falls back to the lexicographically
// first initialisation event. lexicographic always takes the first event in
// canonical order.
struct SchedulerPolicy {
    enum class Kind : std::uint8_t { lexicographic, fifo, lifo, random };
    Kind kind = Kind::lexicographic;
    std::uint64_t seed = 0;

    static std::optional<SchedulerPolicy> parse(std::string_view name, std::uint64_t seed = 0);
    std::string name() const;
};

struct TraceStep {
    Event event;
    std::uint64_t digest = 0;                // of the configuration after the event
    std::optional<Configuration> config;     // populated with RunOptions::full_trace
};

struct Trace {
    std::shared_ptr<const Tree> tree;
    Variant variant{};
    SchedulerPolicy policy{};
    Configuration initial;
    std::vector<TraceStep> steps;
    Configuration final_config;
};

struct RunOptions {
    SchedulerPolicy policy{};
    bool full_trace = false;
};

// Fires one enabled event at a time until quiescence. Termination is
// guaranteed by the strictly decreasing weight norm; a step budget of
// initial weight + 1 turns a violation of that argument into a hard error.
Trace run_to_quiescence(std::shared_ptr<const Tree> tree, Variant variant, const RunOptions& options = {},
                        const std::optional<SeedState>& seed = std::nullopt);

struct MessageStats {
    std::uint64_t fc = 0;
    std::uint64_t info = 0;
    std::uint64_t ac = 0;
    std::uint64_t bc = 0;
    std::uint64_t total() const { return fc + info + ac + bc; }
};

// Counts message sends over a complete trace; throws std::invalid_argument if
// the trace does not end in a quiescent configuration.
MessageStats message_stats(const Trace& trace);

}  // namespace treering
