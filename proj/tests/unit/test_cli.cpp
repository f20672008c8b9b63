#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "treering/cli.hpp"

using namespace treering;
using namespace treering::test;
namespace cli = treering::cli;

TEST_SUITE_BEGIN("cli");

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("treering_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
    std::string read() const {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
};

struct Capture {
    std::ostringstream out, err;
    cli::CommandContext context{{"treering", "test"}, &out, &err};
    nlohmann::json report() const { return nlohmann::json::parse(out.str()); }
};

}  // namespace

TEST_CASE("cmd_enumerate writes one tree per line plus a summary") {
    TempFile trees("enum.txt");
    Capture capture;
    cli::EnumerateArgs args;
    args.nodes = 4;
    args.output = trees.path;
    CHECK(cli::cmd_enumerate(args, capture.context) == cli::kExitOk);

    std::istringstream lines(trees.read());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        Tree tree = parse_tree(line);
        CHECK(tree.node_count() == 4);
        ++count;
    }
    CHECK(count == 5);

    auto summary = capture.report();
    CHECK(summary["n"] == 4);
    CHECK(summary["count"] == 5);
    CHECK(summary["manifest"]["command"] == "enumerate");

    cli::EnumerateArgs bad;
    bad.nodes = 0;
    Capture failure;
    CHECK(cli::cmd_enumerate(bad, failure.context) == cli::kExitInputError);
}

TEST_CASE("cmd_explore on the two-node chain") {
    TempFile tree("chain.tree");
    tree.write(kTwoNodeTreeText);

    Capture capture;
    cli::ExploreArgs args;
    args.tree_file = tree.path;
    args.checks = {"all"};
    CHECK(cli::cmd_explore(args, capture.context) == cli::kExitOk);

    auto report = capture.report();
    CHECK(report["states"] == 12);
    CHECK(report["arcs"] == 17);
    CHECK(report["terminal_count"] == 1);
    CHECK(report["violations"].empty());
    CHECK(report["terminal_reports"][0]["ok"] == true);
    CHECK(report["manifest"]["inputs"].size() == 1);
}

TEST_CASE("cmd_explore sweeps every topology of a size") {
    Capture capture;
    cli::ExploreArgs args;
    args.all_nodes = 4;
    CHECK(cli::cmd_explore(args, capture.context) == cli::kExitOk);
    auto report = capture.report();
    CHECK(report["topologies"] == 5);
    CHECK(report["reports"].size() == 5);
    for (const auto& entry : report["reports"]) CHECK(entry["terminal_count"] == 1);
}

TEST_CASE("cmd_explore exit codes") {
    TempFile tree("bad.tree");
    tree.write("(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,fake,2)");  // P1 has no child list
    Capture malformed;
    cli::ExploreArgs args;
    args.tree_file = tree.path;
    CHECK(cli::cmd_explore(args, malformed.context) == cli::kExitInputError);
    CHECK(malformed.err.str().find("P1") != std::string::npos);

    TempFile good("good.tree");
    good.write(kTenNodeTreeText);
    Capture bounded;
    cli::ExploreArgs bounded_args;
    bounded_args.tree_file = good.path;
    bounded_args.bound = 500;
    CHECK(cli::cmd_explore(bounded_args, bounded.context) == cli::kExitResourceBound);

    Capture conflict;
    cli::ExploreArgs conflict_args;
    CHECK(cli::cmd_explore(conflict_args, conflict.context) == cli::kExitInputError);

    Capture wrong_check;
    cli::ExploreArgs wrong_check_args;
    wrong_check_args.tree_file = good.path;
    wrong_check_args.variant = "pred";
    wrong_check_args.checks = {"A"};
    CHECK(cli::cmd_explore(wrong_check_args, wrong_check.context) == cli::kExitInputError);
}

TEST_CASE("cmd_run reports the ring and the message counts") {
    TempFile tree("ten.tree");
    tree.write(kTenNodeTreeText);
    TempFile trace("trace.jsonl");

    Capture capture;
    cli::RunArgs args;
    args.tree_file = tree.path;
    args.policy = "random";
    args.seed = 7;
    args.trace_path = trace.path;
    CHECK(cli::cmd_run(args, capture.context) == cli::kExitOk);

    auto report = capture.report();
    CHECK(report["ring_report"]["ok"] == true);
    CHECK(report["message_stats"]["total"] == 23);
    CHECK(report["steps"] == 33);

    // JSONL trace: one record per event, each with rule, binding and digest.
    std::istringstream lines(trace.read());
    std::string line;
    int records = 0;
    while (std::getline(lines, line)) {
        auto record = nlohmann::json::parse(line);
        CHECK(record.contains("rule"));
        CHECK(record.contains("binding"));
        CHECK(record.contains("digest"));
        ++records;
    }
    CHECK(records == 33);
}

TEST_CASE("cmd_run accepts adjacency JSON input") {
    TempFile tree("chain.json");
    tree.write(R"({"root":"P0","children":{"P0":["P1"],"P1":[]}})");
    Capture capture;
    cli::RunArgs args;
    args.tree_file = tree.path;
    CHECK(cli::cmd_run(args, capture.context) == cli::kExitOk);
    CHECK(capture.report()["ring_report"]["ok"] == true);
}

TEST_CASE("cmd_run with a seeded original start converges") {
    TempFile tree("ten.tree");
    tree.write(kTenNodeTreeText);
    Capture capture;
    cli::RunArgs args;
    args.tree_file = tree.path;
    args.variant = "original";
    args.policy = "random";
    args.seed = 11;
    args.init_random_seed = 11;
    CHECK(cli::cmd_run(args, capture.context) == cli::kExitOk);

    // ... and is rejected outside variant original.
    Capture rejected;
    cli::RunArgs bad = args;
    bad.variant = "simplified";
    CHECK(cli::cmd_run(bad, rejected.context) == cli::kExitInputError);
}

TEST_CASE("cmd_stats compares the variants and recommends one") {
    TempFile ten("ten.tree");
    ten.write(kTenNodeTreeText);
    Capture tie;
    cli::StatsArgs args;
    args.tree_file = ten.path;
    CHECK(cli::cmd_stats(args, tie.context) == cli::kExitOk);
    auto report = tie.report();
    CHECK(report["m1"] == 23);
    CHECK(report["m2"] == 18);
    CHECK(report["m3"] == 18);
    CHECK(report["deltas"]["succ_vs_original"]["sends"] == 5);
    CHECK(report["deltas"]["pred_vs_original"]["sends"] == 5);
    CHECK(report["recommendation"] == "tie");

    TempFile star("star.tree");
    star.write(star_tree(5).to_triples_text());
    Capture star_capture;
    cli::StatsArgs star_args;
    star_args.tree_file = star.path;
    CHECK(cli::cmd_stats(star_args, star_capture.context) == cli::kExitOk);
    auto star_report = star_capture.report();
    CHECK(star_report["m3"] < star_report["m2"]);
    CHECK(star_report["recommendation"] == "pred");

    TempFile path("path.tree");
    path.write(path_tree(5).to_triples_text());
    Capture path_capture;
    cli::StatsArgs path_args;
    path_args.tree_file = path.path;
    CHECK(cli::cmd_stats(path_args, path_capture.context) == cli::kExitOk);
    auto path_report = path_capture.report();
    CHECK(path_report["m2"] < path_report["m3"]);
    CHECK(path_report["recommendation"] == "succ");
}

TEST_CASE("reports embed the manifest with input digests") {
    TempFile tree("ten.tree");
    tree.write(kTenNodeTreeText);
    Capture capture;
    cli::StatsArgs args;
    args.tree_file = tree.path;
    CHECK(cli::cmd_stats(args, capture.context) == cli::kExitOk);
    auto manifest = capture.report()["manifest"];
    CHECK(manifest["command"] == "stats");
    CHECK(manifest["argv"].size() == 2);
    CHECK(manifest["inputs"].size() == 1);
    CHECK(manifest.contains("timestamp"));
}

TEST_SUITE_END();
