#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treering/tree.hpp"

namespace treering {

// Protocol variants:
//   original   -- Succ and Pred start with bogus values (or a caller-supplied
//                 arbitrary seed) that rule firings replace.
//   simplified -- Succ and Pred start empty and are written once per node.
//   succ       -- Pred removed; FC messages and T3 removed with it.
//   pred       -- Succ removed; BC messages and T6 removed with it.
enum class Variant : std::uint8_t { original, simplified, succ, pred };

constexpr bool variant_has_succ(Variant v) { return v != Variant::pred; }
constexpr bool variant_has_pred(Variant v) { return v != Variant::succ; }
constexpr bool variant_replaces_entries(Variant v) { return v == Variant::original; }
// FC messages exist to set Pred (via T3); BC messages exist to set Succ (via T6).
constexpr bool variant_emits_fc(Variant v) { return variant_has_pred(v); }
constexpr bool variant_emits_bc(Variant v) { return variant_has_succ(v); }

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

enum class MessageKind : std::uint8_t { FC = 0, AC = 1, BC = 2, Info = 3 };
const char* message_kind_name(MessageKind k);

struct Message {
    MessageKind kind{};
    NodeId identity = kFake;  // the carried identity I
    NodeId source = kFake;
    NodeId destination = kFake;
    auto operator<=>(const Message&) const = default;
};

// One protocol state: the InitP set, the Succ/Pred pair multisets, and the
// in-flight message multiset. All four components are kept sorted, so equal
// configurations compare equal componentwise.
struct Configuration {
    std::vector<NodeId> initp;
    std::vector<std::pair<NodeId, NodeId>> succ;
    std::vector<std::pair<NodeId, NodeId>> pred;
    std::vector<Message> messages;
    bool operator==(const Configuration&) const = default;
};

enum class Rule : std::uint8_t { T1, T2, T3, T4a, T4b, T4c, T5, T6 };
const char* rule_name(Rule r);

// A rule plus a binding of its variables. Fields not used by the rule stay at
// their defaults. In variant original, q additionally names the Succ/Pred
// value consumed by the replacing rules (T1, T3, T4c, T5, T6).
struct Event {
    Rule rule{};
    NodeId p = kFake;
    NodeId c = kFake;
    NodeId f = kFake;
    NodeId q = kFake;
    NodeId r = kFake;
    NodeId identity = kFake;
    std::uint16_t m = 0;
    std::uint16_t n = 0;

    // T1/T2 fire for p; every message-consuming rule fires for the receiver r.
    NodeId firing_process() const { return (rule == Rule::T1 || rule == Rule::T2) ? p : r; }
    bool operator==(const Event&) const = default;
};

std::string event_to_string(const Event& event, const Tree& tree);

// Arbitrary initial Succ/Pred values for variant original, one entry per real
// node (values may be real nodes or kFake).
struct SeedState {
    std::vector<NodeId> succ0;
    std::vector<NodeId> pred0;
};

// Seed-determined arbitrary initial Succ/Pred values, drawing every entry
// uniformly from the real nodes plus kFake.
SeedState random_seed_state(const Tree& tree, std::uint64_t seed);

Configuration initial_config(const Tree& tree, Variant variant, const std::optional<SeedState>& seed = std::nullopt);

// All enabled rule bindings, in deterministic order: rules T1,T2,T3,T4a,T4b,
// T4c,T5,T6; within a rule, bindings follow the sorted token order (process
// label for T1/T2, message tuple for the rest).
std::vector<Event> enabled_events(const Configuration& config, const Tree& tree, Variant variant);

bool is_enabled(const Configuration& config, const Event& event, const Tree& tree, Variant variant);

// Pure successor function; throws std::invalid_argument if the event is not
// enabled in config.
Configuration fire(const Configuration& config, const Event& event, const Tree& tree, Variant variant);

std::optional<Message> consumed_message(const Event& event, Variant variant);
std::vector<Message> produced_messages(const Event& event, Variant variant);

// Canonical byte encoding of a configuration; injective for a fixed tree.
std::string encode_config(const Configuration& config, const Tree& tree);
Configuration decode_config(std::string_view bytes, const Tree& tree);
std::uint64_t config_digest(const Configuration& config, const Tree& tree);

}  // namespace treering
