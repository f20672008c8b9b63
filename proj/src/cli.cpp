#include "treering/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "treering/digest.hpp"
#include "treering/explorer.hpp"
#include "treering/json_io.hpp"
#include "treering/semantics.hpp"
#include "treering/verify.hpp"

namespace treering::cli {

namespace {

std::ostream& out_stream(const CommandContext& context) { return context.out ? *context.out : std::cout; }
std::ostream& err_stream(const CommandContext& context) { return context.err ? *context.err : std::cerr; }

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TreeFormat parse_format(const std::string& name) {
    if (name == "auto") return TreeFormat::Auto;
    if (name == "triples") return TreeFormat::Triples;
    if (name == "json") return TreeFormat::AdjacencyJson;
    throw InputError("unknown tree format '" + name + "' (expected auto, triples or json)");
}

Variant parse_variant(const std::string& name) {
    auto variant = variant_from_name(name);
    if (!variant)
        throw InputError("unknown variant '" + name + "' (expected original, simplified, succ or pred)");
    return *variant;
}

struct LoadedTree {
    Tree tree;
    std::string path;
    std::string file_digest;
};

LoadedTree load_tree(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read tree file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    try {
        return {parse_tree(text, parse_format(format)), path, hex64(fnv1a64(text))};
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        std::string message = path + ": invalid tree";
        for (const std::string& v : e.violations) message += "\n  " + v;
        throw InputError(message);
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("failed while writing '" + path + "'");
}

void emit_report(const ordered_json& report, const std::optional<std::string>& path, const CommandContext& context) {
    if (path)
        write_text_file(*path, report.dump(2) + "\n");
    else
        out_stream(context) << report.dump(2) << "\n";
}

std::vector<CheckKind> resolve_checks(const std::vector<std::string>& names, Variant variant) {
    std::vector<CheckKind> checks;
    auto add = [&checks](CheckKind c) {
        for (CheckKind seen : checks)
            if (seen == c) return;
        checks.push_back(c);
    };
    for (const std::string& name : names) {
        if (name == "all") {
            for (CheckKind c : all_checks_for(variant)) add(c);
        } else if (name == "A") {
            add(CheckKind::InvariantA);
        } else if (name == "B") {
            add(CheckKind::InvariantB);
        } else if (name == "weight") {
            add(CheckKind::WeightDecrease);
        } else {
            throw InputError("unknown check '" + name + "' (expected all, A, B or weight)");
        }
    }
    for (CheckKind c : checks)
        if (!check_applies(c, variant))
            throw InputError(std::string("check ") + check_kind_name(c) + " does not apply to variant " +
                             variant_name(variant));
    return checks;
}

}  // namespace

int cmd_enumerate(const EnumerateArgs& args, const CommandContext& context) {
    try {
        if (args.nodes < 1) throw InputError("node count must be at least 1");

        std::ofstream file;
        std::ostream* trees_out = &out_stream(context);
        if (args.output) {
            file.open(*args.output, std::ios::binary);
            if (!file) throw InputError("cannot write '" + *args.output + "'");
            trees_out = &file;
        }

        std::uint64_t count = 0;
        enumerate_topologies(args.nodes, [&](const Tree& tree) {
            *trees_out << tree.to_triples_text() << "\n";
            ++count;
        });
        if (args.output && !file) throw InputError("failed while writing '" + *args.output + "'");

        const std::uint64_t expected = catalan(static_cast<unsigned>(args.nodes - 1));
        ordered_json summary;
        summary["manifest"] = manifest_to_json(make_manifest("enumerate", context.argv));
        summary["n"] = args.nodes;
        summary["count"] = count;
        out_stream(context) << summary.dump() << "\n";
        if (count != expected) {
            err_stream(context) << "error: enumerated " << count << " topologies, expected " << expected << "\n";
            return kExitPropertyViolation;
        }
        return kExitOk;
    } catch (const InputError& e) {
        err_stream(context) << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

namespace {

struct ExploreOutcome {
    ExplorationReport raw;
    ordered_json report;
    bool violations = false;
    bool terminal_ok = true;
    bool bound_exceeded = false;
};

ExploreOutcome explore_one(const Tree& tree, Variant variant, const ExploreOptions& options) {
    ExploreOutcome outcome;
    outcome.raw = explore(tree, variant, options);
    const ExplorationReport& report = outcome.raw;

    outcome.report = exploration_report_to_json(report, tree);
    outcome.violations = !report.violations.empty();
    outcome.bound_exceeded = report.bound_exceeded;

    ordered_json terminal_reports = ordered_json::array();
    if (!report.bound_exceeded) {
        if (report.terminals.size() != 1) outcome.terminal_ok = false;
        for (const Configuration& terminal : report.terminals) {
            RingReport ring = check_terminal(terminal, tree, variant);
            if (!ring.all_ok()) outcome.terminal_ok = false;
            terminal_reports.push_back(ring_report_to_json(ring));
        }
    }
    outcome.report["terminal_reports"] = terminal_reports;
    return outcome;
}

}  // namespace

int cmd_explore(const ExploreArgs& args, const CommandContext& context) {
    try {
        if (args.tree_file.has_value() == args.all_nodes.has_value())
            throw InputError("give either a tree file or --all-nodes, not both");

        const Variant variant = parse_variant(args.variant);
        ExploreOptions options;
        options.checks = resolve_checks(args.checks, variant);
        options.state_bound = args.bound;
        options.reduced = args.por;
        options.record_graph = args.dot_path.has_value();

        RunManifest manifest = make_manifest("explore", context.argv);

        bool any_violation = false, all_terminals_ok = true, any_bound = false;
        ordered_json body;

        if (args.all_nodes) {
            if (*args.all_nodes < 1) throw InputError("--all-nodes must be at least 1");
            if (args.dot_path) throw InputError("--dot needs a single tree, not --all-nodes");
            ordered_json reports = ordered_json::array();
            std::uint64_t total_states = 0, total_arcs = 0, count = 0;
            enumerate_topologies(*args.all_nodes, [&](const Tree& tree) {
                ExploreOutcome outcome = explore_one(tree, variant, options);
                any_violation |= outcome.violations;
                all_terminals_ok &= outcome.terminal_ok;
                any_bound |= outcome.bound_exceeded;
                total_states += outcome.report["states"].get<std::uint64_t>();
                total_arcs += outcome.report["arcs"].get<std::uint64_t>();
                reports.push_back(std::move(outcome.report));
                ++count;
            });
            body["manifest"] = manifest_to_json(manifest);
            body["n"] = *args.all_nodes;
            body["topologies"] = count;
            body["summary"] = {{"total_states", total_states},
                               {"total_arcs", total_arcs},
                               {"note",
                                "totals are per-topology sums; not comparable to explorations of a combined net "
                                "that also encodes topology construction"}};
            body["reports"] = std::move(reports);
        } else {
            LoadedTree loaded = load_tree(*args.tree_file, args.format);
            manifest.input_digests.emplace_back(loaded.path, loaded.file_digest);
            ExploreOutcome outcome = explore_one(loaded.tree, variant, options);
            any_violation = outcome.violations;
            all_terminals_ok = outcome.terminal_ok;
            any_bound = outcome.bound_exceeded;
            body = std::move(outcome.report);
            body["manifest"] = manifest_to_json(manifest);

            if (args.dot_path) {
                if (outcome.raw.graph_recorded) {
                    write_text_file(*args.dot_path, statespace_dot(outcome.raw, loaded.tree));
                } else {
                    err_stream(context) << "warning: reachability graph exceeds " << kDotStateLimit
                                        << " states, skipping DOT export\n";
                }
            }
        }

        emit_report(body, args.report_path, context);
        if (any_bound) return kExitResourceBound;
        if (any_violation || !all_terminals_ok) return kExitPropertyViolation;
        return kExitOk;
    } catch (const InputError& e) {
        err_stream(context) << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::bad_alloc&) {
        err_stream(context) << "error: out of memory during exploration\n";
        return kExitResourceBound;
    }
}

int cmd_run(const RunArgs& args, const CommandContext& context) {
    try {
        const Variant variant = parse_variant(args.variant);
        LoadedTree loaded = load_tree(args.tree_file, args.format);
        auto tree = std::make_shared<const Tree>(std::move(loaded.tree));

        auto policy = SchedulerPolicy::parse(args.policy, args.seed);
        if (!policy) throw InputError("unknown policy '" + args.policy + "' (expected lexicographic, fifo, lifo or random)");

        std::optional<SeedState> seed_state;
        if (args.init_random_seed) {
            if (variant != Variant::original)
                throw InputError("--init-random-seed is only admitted for variant original");
            seed_state = random_seed_state(*tree, *args.init_random_seed);
        }

        RunOptions options;
        options.policy = *policy;
        options.full_trace = args.full_trace;
        Trace trace = run_to_quiescence(tree, variant, options, seed_state);

        if (args.trace_path) {
            std::ostringstream lines;
            for (const TraceStep& step : trace.steps) lines << trace_step_to_json(step, *tree).dump() << "\n";
            write_text_file(*args.trace_path, lines.str());
        }

        RingReport ring = check_terminal(trace.final_config, *tree, variant);
        MessageStats stats = message_stats(trace);

        RunManifest manifest = make_manifest("run", context.argv);
        manifest.input_digests.emplace_back(loaded.path, loaded.file_digest);

        ordered_json body;
        body["manifest"] = manifest_to_json(manifest);
        body["tree"] = {{"digest", hex64(tree->digest())}, {"nodes", tree->node_count()}};
        body["variant"] = variant_name(variant);
        body["policy"] = {{"kind", policy->name()}, {"seed", policy->seed}};
        if (args.init_random_seed) body["init_random_seed"] = *args.init_random_seed;
        body["steps"] = trace.steps.size();
        body["initial_weight"] = weight_to_json(weight(trace.initial, *tree, variant));
        body["final"] = config_to_json(trace.final_config, *tree);
        body["ring_report"] = ring_report_to_json(ring);
        body["message_stats"] = message_stats_to_json(stats);
        emit_report(body, args.report_path, context);

        if (args.dot_path) write_text_file(*args.dot_path, ring_dot(trace.final_config, *tree, variant));

        return ring.all_ok() ? kExitOk : kExitPropertyViolation;
    } catch (const InputError& e) {
        err_stream(context) << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_stats(const StatsArgs& args, const CommandContext& context) {
    try {
        LoadedTree loaded = load_tree(args.tree_file, args.format);
        auto tree = std::make_shared<const Tree>(std::move(loaded.tree));

        auto run_stats = [&tree](Variant variant) {
            Trace trace = run_to_quiescence(tree, variant, {});
            return message_stats(trace);
        };
        const MessageStats m1 = run_stats(Variant::original);
        const MessageStats m2 = run_stats(Variant::succ);
        const MessageStats m3 = run_stats(Variant::pred);

        const std::uint64_t n = tree->node_count();
        const std::uint64_t leaves = tree->leaf_count();
        const std::uint64_t inner = n - leaves;

        std::string recommendation = leaves > inner ? "pred" : (inner > leaves ? "succ" : "tie");

        RunManifest manifest = make_manifest("stats", context.argv);
        manifest.input_digests.emplace_back(loaded.path, loaded.file_digest);

        ordered_json body;
        body["manifest"] = manifest_to_json(manifest);
        body["tree"] = {{"digest", hex64(tree->digest())}, {"nodes", n}, {"leaves", leaves}};
        body["variants"] = {{"original", message_stats_to_json(m1)},
                            {"succ", message_stats_to_json(m2)},
                            {"pred", message_stats_to_json(m3)}};
        body["m1"] = m1.total();
        body["m2"] = m2.total();
        body["m3"] = m3.total();
        // Savings under both counting interpretations: one unit per send, and
        // one unit per send plus one per receive.
        body["deltas"] = {{"succ_vs_original", {{"sends", m1.total() - m2.total()},
                                                {"send_receive_events", 2 * (m1.total() - m2.total())}}},
                          {"pred_vs_original", {{"sends", m1.total() - m3.total()},
                                                {"send_receive_events", 2 * (m1.total() - m3.total())}}}};
        body["recommendation"] = recommendation;
        emit_report(body, args.report_path, context);
        return kExitOk;
    } catch (const InputError& e) {
        err_stream(context) << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace treering::cli
