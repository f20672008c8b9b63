#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "treering/explorer.hpp"
#include "treering/protocol.hpp"
#include "treering/semantics.hpp"
#include "treering/tree.hpp"
#include "treering/verify.hpp"

namespace treering {

using ordered_json = nlohmann::ordered_json;

// Every report embeds the manifest of the command that produced it. The
// timestamp is the only non-reproducible field.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::pair<std::string, std::string>> input_digests;  // path -> fnv64 hex
    std::string timestamp;                                           // ISO 8601 UTC
};

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& argv);
ordered_json manifest_to_json(const RunManifest& manifest);

ordered_json config_to_json(const Configuration& config, const Tree& tree);
ordered_json event_to_json(const Event& event, const Tree& tree);
ordered_json ring_report_to_json(const RingReport& report);
ordered_json weight_to_json(const WeightBreakdown& weight);
ordered_json message_stats_to_json(const MessageStats& stats);
ordered_json exploration_report_to_json(const ExplorationReport& report, const Tree& tree);

// One JSONL record per fired event: {"rule", "binding", "digest"} plus the
// full configuration when the trace recorded it.
ordered_json trace_step_to_json(const TraceStep& step, const Tree& tree);

}  // namespace treering
