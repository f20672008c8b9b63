#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treering/tree.hpp"

namespace treering::cli {

// Exit code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitPropertyViolation = 2;
inline constexpr int kExitResourceBound = 3;

struct CommandContext {
    std::vector<std::string> argv;  // embedded in the report manifest
    std::ostream* out = nullptr;    // defaults to std::cout
    std::ostream* err = nullptr;    // defaults to std::cerr
};

struct EnumerateArgs {
    int nodes = 1;
    std::optional<std::string> output;  // tree-per-line file; stdout if absent
};

struct ExploreArgs {
    std::optional<std::string> tree_file;
    std::optional<int> all_nodes;  // sweep every topology of this size instead
    std::string variant = "simplified";
    std::string format = "auto";
    bool por = false;
    std::vector<std::string> checks;  // "all", "A", "B", "weight"
    std::optional<std::uint64_t> bound;
    std::optional<std::string> report_path;
    std::optional<std::string> dot_path;
};

struct RunArgs {
    std::string tree_file;
    std::string variant = "simplified";
    std::string format = "auto";
    std::string policy = "lexicographic";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> init_random_seed;  // variant original only
    std::optional<std::string> trace_path;
    bool full_trace = false;
    std::optional<std::string> dot_path;
    std::optional<std::string> report_path;
};

struct StatsArgs {
    std::string tree_file;
    std::string format = "auto";
    std::optional<std::string> report_path;
};

int cmd_enumerate(const EnumerateArgs& args, const CommandContext& context);
int cmd_explore(const ExploreArgs& args, const CommandContext& context);
int cmd_run(const RunArgs& args, const CommandContext& context);
int cmd_stats(const StatsArgs& args, const CommandContext& context);

}  // namespace treering::cli
