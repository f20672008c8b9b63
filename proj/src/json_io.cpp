#include "treering/json_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "treering/digest.hpp"
#include "treering/version.hpp"

namespace treering {

namespace {

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string node_name(const Tree& tree, NodeId v) { return v == kFake ? "fake" : tree.label(v); }

}  // namespace

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& argv) {
    RunManifest manifest;
    manifest.command = command;
    manifest.argv = argv;
    manifest.timestamp = iso8601_now();
    return manifest;
}

ordered_json manifest_to_json(const RunManifest& manifest) {
    ordered_json j;
    j["command"] = manifest.command;
    j["argv"] = manifest.argv;
    j["version"] = kVersion;
    ordered_json inputs = ordered_json::object();
    for (const auto& [path, digest] : manifest.input_digests) inputs[path] = digest;
    j["inputs"] = inputs;
    j["timestamp"] = manifest.timestamp;
    return j;
}

ordered_json config_to_json(const Configuration& config, const Tree& tree) {
    ordered_json j;
    j["initp"] = ordered_json::array();
    for (NodeId v : config.initp) j["initp"].push_back(node_name(tree, v));
    for (const auto& [key, place] : {std::pair{"succ", &config.succ}, std::pair{"pred", &config.pred}}) {
        ordered_json entries = ordered_json::array();
        for (const auto& [a, b] : *place) entries.push_back({node_name(tree, a), node_name(tree, b)});
        j[key] = entries;
    }
    j["messages"] = ordered_json::array();
    for (const Message& msg : config.messages)
        j["messages"].push_back({message_kind_name(msg.kind), node_name(tree, msg.identity),
                                 node_name(tree, msg.source), node_name(tree, msg.destination)});
    return j;
}

ordered_json event_to_json(const Event& event, const Tree& tree) {
    ordered_json binding = ordered_json::object();
    auto put = [&](const char* key, NodeId v) { binding[key] = node_name(tree, v); };
    switch (event.rule) {
        case Rule::T1:
            put("p", event.p);
            put("c", event.c);
            break;
        case Rule::T2:
            put("p", event.p);
            put("f", event.f);
            binding["n"] = event.n;
            break;
        case Rule::T3:
        case Rule::T5:
        case Rule::T6:
            put("I", event.identity);
            put("p", event.p);
            put("r", event.r);
            break;
        case Rule::T4a:
            put("I", event.identity);
            put("p", event.p);
            put("r", event.r);
            put("q", event.q);
            binding["n"] = event.n;
            break;
        case Rule::T4b:
            put("I", event.identity);
            put("p", event.p);
            put("q", event.q);
            put("r", event.r);
            binding["m"] = event.m;
            binding["n"] = event.n;
            break;
        case Rule::T4c:
            put("I", event.identity);
            put("p", event.p);
            put("r", event.r);
            binding["n"] = event.n;
            break;
    }
    ordered_json j;
    j["rule"] = rule_name(event.rule);
    j["binding"] = binding;
    return j;
}

ordered_json ring_report_to_json(const RingReport& report) {
    ordered_json j;
    j["silent"] = report.silent;
    j["is_ring"] = report.is_ring;
    j["succ_matches_oracle"] = report.succ_matches_oracle;
    j["mirror_ok"] = report.mirror_ok;
    j["pred_cases_ok"] = report.pred_cases_ok;
    j["ok"] = report.all_ok();
    j["details"] = report.details;
    return j;
}

ordered_json weight_to_json(const WeightBreakdown& weight) {
    ordered_json j;
    j["node_term"] = weight.node_term;
    j["fc_term"] = weight.fc_term;
    j["bc_term"] = weight.bc_term;
    j["ac_term"] = weight.ac_term;
    j["info_term"] = weight.info_term;
    j["total"] = weight.total();
    return j;
}

ordered_json message_stats_to_json(const MessageStats& stats) {
    ordered_json j;
    j["FC"] = stats.fc;
    j["Info"] = stats.info;
    j["AC"] = stats.ac;
    j["BC"] = stats.bc;
    j["total"] = stats.total();
    return j;
}

ordered_json exploration_report_to_json(const ExplorationReport& report, const Tree& tree) {
    ordered_json j;
    j["schema_version"] = 1;
    j["tree_digest"] = hex64(report.tree_digest);
    j["variant"] = variant_name(report.variant);
    j["reduced"] = report.reduced;
    j["states"] = report.states;
    j["arcs"] = report.arcs;
    j["terminal_count"] = report.terminals.size();
    j["terminals"] = ordered_json::array();
    for (const Configuration& terminal : report.terminals) j["terminals"].push_back(config_to_json(terminal, tree));
    j["max_frontier"] = report.max_frontier;
    j["bound_exceeded"] = report.bound_exceeded;
    j["violations"] = ordered_json::array();
    for (const ViolationRecord& violation : report.violations) {
        ordered_json v;
        v["check"] = violation.check;
        v["state_digest"] = hex64(violation.state_digest);
        v["detail"] = violation.detail;
        v["trace"] = ordered_json::array();
        for (const Event& event : violation.trace) v["trace"].push_back(event_to_json(event, tree));
        j["violations"].push_back(v);
    }
    j["violations_truncated"] = report.violations_truncated;
    j["elapsed_seconds"] = report.elapsed_seconds;
    return j;
}

ordered_json trace_step_to_json(const TraceStep& step, const Tree& tree) {
    ordered_json j = event_to_json(step.event, tree);
    j["digest"] = hex64(step.digest);
    if (step.config) j["config"] = config_to_json(*step.config, tree);
    return j;
}

}  // namespace treering
