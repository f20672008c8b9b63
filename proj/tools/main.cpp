#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treering/cli.hpp"
#include "treering/version.hpp"

namespace cli = treering::cli;

int main(int argc, char** argv) {
    CLI::App app{"Simulator, exhaustive explorer and verification harness for a self-stabilising "
                 "tree-to-ring construction protocol"};
    app.set_version_flag("--version", treering::kVersion);
    app.require_subcommand(1);

    cli::CommandContext context;
    for (int i = 0; i < argc; ++i) context.argv.emplace_back(argv[i]);

    cli::EnumerateArgs enumerate_args;
    CLI::App* enumerate = app.add_subcommand("enumerate", "Enumerate every ordered rooted tree of a given size");
    enumerate->add_option("n", enumerate_args.nodes, "Number of nodes")->required();
    std::string enumerate_output;
    CLI::Option* enumerate_output_opt =
        enumerate->add_option("-o,--output", enumerate_output, "Write one tree per line to this file");

    cli::ExploreArgs explore_args;
    CLI::App* explore = app.add_subcommand("explore", "Exhaustively explore every interleaving");
    std::string explore_tree;
    CLI::Option* explore_tree_opt = explore->add_option("tree", explore_tree, "Tree file (triples or adjacency JSON)");
    int explore_all_nodes = 0;
    CLI::Option* explore_all_opt =
        explore->add_option("--all-nodes", explore_all_nodes, "Sweep every topology of this size instead");
    explore->add_option("--variant", explore_args.variant, "original|simplified|succ|pred")->capture_default_str();
    explore->add_option("--format", explore_args.format, "auto|triples|json")->capture_default_str();
    explore->add_flag("--por", explore_args.por, "Partial-order reduction preserving terminal states");
    explore->add_option("--check", explore_args.checks, "Invariant checks: all, A, B, weight (repeatable)");
    std::uint64_t explore_bound = 0;
    CLI::Option* explore_bound_opt = explore->add_option("--bound", explore_bound, "Abort after this many states");
    std::string explore_report, explore_dot;
    CLI::Option* explore_report_opt = explore->add_option("--report", explore_report, "Write the JSON report here");
    CLI::Option* explore_dot_opt =
        explore->add_option("--dot", explore_dot, "Write the reachability graph as DOT (small graphs only)");

    cli::RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run one schedule to quiescence and judge the terminal state");
    run->add_option("tree", run_args.tree_file, "Tree file (triples or adjacency JSON)")->required();
    run->add_option("--variant", run_args.variant, "original|simplified|succ|pred")->capture_default_str();
    run->add_option("--format", run_args.format, "auto|triples|json")->capture_default_str();
    run->add_option("--policy", run_args.policy, "lexicographic|fifo|lifo|random")->capture_default_str();
    run->add_option("--seed", run_args.seed, "Scheduler seed (policy random)")->capture_default_str();
    std::uint64_t run_init_seed = 0;
    CLI::Option* run_init_seed_opt = run->add_option(
        "--init-random-seed", run_init_seed, "Randomise the initial Succ/Pred values (variant original)");
    std::string run_trace, run_dot, run_report;
    CLI::Option* run_trace_opt = run->add_option("--trace", run_trace, "Write the event trace as JSONL");
    run->add_flag("--full-trace", run_args.full_trace, "Store full configurations in the trace");
    CLI::Option* run_dot_opt = run->add_option("--dot", run_dot, "Write the resulting ring as DOT");
    CLI::Option* run_report_opt = run->add_option("--report", run_report, "Write the JSON report here");

    cli::StatsArgs stats_args;
    CLI::App* stats = app.add_subcommand("stats", "Compare message counts across protocol variants");
    stats->add_option("tree", stats_args.tree_file, "Tree file (triples or adjacency JSON)")->required();
    stats->add_option("--format", stats_args.format, "auto|triples|json")->capture_default_str();
    std::string stats_report;
    CLI::Option* stats_report_opt = stats->add_option("--report", stats_report, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? cli::kExitOk : cli::kExitInputError;
    }

    if (enumerate->parsed()) {
        if (*enumerate_output_opt) enumerate_args.output = enumerate_output;
        return cli::cmd_enumerate(enumerate_args, context);
    }
    if (explore->parsed()) {
        if (*explore_tree_opt) explore_args.tree_file = explore_tree;
        if (*explore_all_opt) explore_args.all_nodes = explore_all_nodes;
        if (*explore_bound_opt) explore_args.bound = explore_bound;
        if (*explore_report_opt) explore_args.report_path = explore_report;
        if (*explore_dot_opt) explore_args.dot_path = explore_dot;
        return cli::cmd_explore(explore_args, context);
    }
    if (run->parsed()) {
        if (*run_init_seed_opt) run_args.init_random_seed = run_init_seed;
        if (*run_trace_opt) run_args.trace_path = run_trace;
        if (*run_dot_opt) run_args.dot_path = run_dot;
        if (*run_report_opt) run_args.report_path = run_report;
        return cli::cmd_run(run_args, context);
    }
    if (stats->parsed()) {
        if (*stats_report_opt) stats_args.report_path = stats_report;
        return cli::cmd_stats(stats_args, context);
    }
    std::cerr << app.help() << "\n";
    return cli::kExitInputError;
}
