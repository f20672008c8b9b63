#include "treering/protocol.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "treering/digest.hpp"

namespace treering {

namespace {

template <class T>
void ms_insert(std::vector<T>& v, const T& x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

template <class T>
bool ms_contains(const std::vector<T>& v, const T& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

template <class T>
bool ms_erase_one(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) return false;
    v.erase(it);
    return true;
}

// Current value q of the unique (key, q) entry, if any.
std::optional<NodeId> map_value(const std::vector<std::pair<NodeId, NodeId>>& entries, NodeId key) {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair<NodeId, NodeId>{key, 0});
    if (it == entries.end() || it->first != key) return std::nullopt;
    return it->second;
}

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::original: return "original";
        case Variant::simplified: return "simplified";
        case Variant::succ: return "succ";
        case Variant::pred: return "pred";
    }
    return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    for (Variant v : {Variant::original, Variant::simplified, Variant::succ, Variant::pred})
        if (name == variant_name(v)) return v;
    return std::nullopt;
}

const char* message_kind_name(MessageKind k) {
    switch (k) {
        case MessageKind::FC: return "FC";
        case MessageKind::AC: return "AC";
        case MessageKind::BC: return "BC";
        case MessageKind::Info: return "Info";
    }
    return "?";
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::T1: return "T1";
        case Rule::T2: return "T2";
        case Rule::T3: return "T3";
        case Rule::T4a: return "T4a";
        case Rule::T4b: return "T4b";
        case Rule::T4c: return "T4c";
        case Rule::T5: return "T5";
        case Rule::T6: return "T6";
    }
    return "?";
}

std::string event_to_string(const Event& event, const Tree& tree) {
    auto name = [&tree](NodeId v) -> std::string { return v == kFake ? "fake" : tree.label(v); };
    std::ostringstream os;
    os << rule_name(event.rule) << '[';
    switch (event.rule) {
        case Rule::T1:
            os << "p=" << name(event.p) << ",c=" << name(event.c);
            break;
        case Rule::T2:
            os << "p=" << name(event.p) << ",f=" << name(event.f) << ",n=" << event.n;
            break;
        case Rule::T3:
        case Rule::T5:
        case Rule::T6:
            os << "I=" << name(event.identity) << ",p=" << name(event.p) << ",r=" << name(event.r);
            break;
        case Rule::T4a:
            os << "I=" << name(event.identity) << ",p=" << name(event.p) << ",r=" << name(event.r)
               << ",q=" << name(event.q) << ",n=" << event.n;
            break;
        case Rule::T4b:
            os << "I=" << name(event.identity) << ",p=" << name(event.p) << ",q=" << name(event.q)
               << ",r=" << name(event.r) << ",m=" << event.m << ",n=" << event.n;
            break;
        case Rule::T4c:
            os << "I=" << name(event.identity) << ",p=" << name(event.p) << ",r=" << name(event.r)
               << ",n=" << event.n;
            break;
    }
    os << ']';
    return os.str();
}

SeedState random_seed_state(const Tree& tree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SeedState state;
    const NodeId n = tree.node_count();
    for (NodeId v = 0; v < n; ++v) {
        NodeId s = static_cast<NodeId>(rng() % (n + 1u));
        NodeId p = static_cast<NodeId>(rng() % (n + 1u));
        state.succ0.push_back(s == n ? kFake : s);
        state.pred0.push_back(p == n ? kFake : p);
    }
    return state;
}

Configuration initial_config(const Tree& tree, Variant variant, const std::optional<SeedState>& seed) {
    if (seed && variant != Variant::original)
        throw std::invalid_argument("seed state is only admitted for variant original");
    const NodeId n = tree.node_count();
    if (seed) {
        if (seed->succ0.size() != n || seed->pred0.size() != n)
            throw std::invalid_argument("seed state must assign exactly one value per node");
        for (const auto& values : {seed->succ0, seed->pred0})
            for (NodeId v : values)
                if (v != kFake && v >= n) throw std::invalid_argument("seed state value out of range");
    }
    Configuration config;
    config.initp.resize(n);
    for (NodeId v = 0; v < n; ++v) config.initp[v] = v;
    if (variant == Variant::original) {
        for (NodeId v = 0; v < n; ++v) {
            config.succ.emplace_back(v, seed ? seed->succ0[v] : kFake);
            config.pred.emplace_back(v, seed ? seed->pred0[v] : kFake);
        }
    }
    return config;
}

std::vector<Event> enabled_events(const Configuration& config, const Tree& tree, Variant variant) {
    std::vector<Event> out;
    const bool replaces = variant_replaces_entries(variant);

    for (NodeId p : config.initp) {
        if (tree.is_leaf(p)) continue;
        Event e{.rule = Rule::T1, .p = p, .c = tree.children(p).front()};
        if (replaces) {
            auto q = map_value(config.succ, p);
            if (!q) continue;  // no Succ token to consume
            e.q = *q;
        }
        out.push_back(e);
    }
    for (NodeId p : config.initp) {
        if (!tree.is_leaf(p)) continue;
        NodeId f = tree.parent(p);
        if (f == kFake) continue;
        out.push_back({.rule = Rule::T2, .p = p, .f = f, .n = tree.child_position(p)});
    }

    auto bind_replaced = [&](Event& e, const std::vector<std::pair<NodeId, NodeId>>& place) {
        if (!replaces) return true;
        auto q = map_value(place, e.r);
        if (!q) return false;
        e.q = *q;
        return true;
    };

    for (const Message& msg : config.messages) {
        switch (msg.kind) {
            case MessageKind::FC: {
                if (!variant_has_pred(variant)) break;  // T3 removed with the Pred place
                if (variant == Variant::original) {
                    if (msg.source != tree.parent(msg.destination))
                        throw std::logic_error("FC message from a non-parent cannot be generated: " +
                                               std::string(tree.label(msg.source)) + " -> " +
                                               tree.label(msg.destination));
                } else if (msg.identity != msg.source) {
                    break;  // T3 binds (FC,p,p,r)
                }
                Event e{.rule = Rule::T3, .p = msg.source, .r = msg.destination, .identity = msg.identity};
                if (bind_replaced(e, config.pred)) out.push_back(e);
                break;
            }
            case MessageKind::Info: {
                NodeId p = msg.source, r = msg.destination;
                if (p >= tree.node_count() || tree.parent(p) != r) break;  // no (r,p,n) arc
                Event e{.rule = Rule::T4a, .p = p, .r = r, .identity = msg.identity,
                        .n = tree.child_position(p)};
                NodeId sibling = tree.next_sibling(p);
                if (sibling != kFake) {
                    e.q = sibling;
                    out.push_back(e);
                } else if (tree.parent(r) != kFake) {
                    e.rule = Rule::T4b;
                    e.q = tree.parent(r);
                    e.m = tree.child_position(r);
                    out.push_back(e);
                } else {
                    e.rule = Rule::T4c;
                    if (bind_replaced(e, config.pred)) out.push_back(e);
                }
                break;
            }
            case MessageKind::AC: {
                Event e{.rule = Rule::T5, .p = msg.source, .r = msg.destination, .identity = msg.identity};
                if (!variant_has_pred(variant) || bind_replaced(e, config.pred)) out.push_back(e);
                break;
            }
            case MessageKind::BC: {
                if (!variant_has_succ(variant)) break;  // T6 removed with the Succ place
                Event e{.rule = Rule::T6, .p = msg.source, .r = msg.destination, .identity = msg.identity};
                if (bind_replaced(e, config.succ)) out.push_back(e);
                break;
            }
        }
    }

    // Messages are sorted by kind FC,AC,BC,Info; regroup into rule order
    // T3 (FC), T4a/T4b/T4c (Info), T5 (AC), T6 (BC).
    std::stable_sort(out.begin(), out.end(),
                     [](const Event& a, const Event& b) { return a.rule < b.rule; });
    return out;
}

bool is_enabled(const Configuration& config, const Event& event, const Tree& tree, Variant variant) {
    const NodeId n = tree.node_count();
    auto valid_node = [n](NodeId v) { return v < n; };
    const bool replaces = variant_replaces_entries(variant);

    switch (event.rule) {
        case Rule::T1: {
            if (!valid_node(event.p) || !ms_contains(config.initp, event.p)) return false;
            if (tree.is_leaf(event.p) || tree.children(event.p).front() != event.c) return false;
            if (replaces && !ms_contains(config.succ, {event.p, event.q})) return false;
            return true;
        }
        case Rule::T2: {
            if (!valid_node(event.p) || !ms_contains(config.initp, event.p)) return false;
            if (!tree.is_leaf(event.p)) return false;
            NodeId f = tree.parent(event.p);
            return f != kFake && event.f == f && event.n == tree.child_position(event.p);
        }
        case Rule::T3: {
            if (!variant_has_pred(variant)) return false;
            if (variant != Variant::original && event.identity != event.p) return false;
            Message msg{MessageKind::FC, event.identity, event.p, event.r};
            if (!ms_contains(config.messages, msg)) return false;
            if (variant == Variant::original && event.p != tree.parent(event.r))
                throw std::logic_error("FC message from a non-parent cannot be generated");
            if (replaces && !ms_contains(config.pred, {event.r, event.q})) return false;
            return true;
        }
        case Rule::T4a:
        case Rule::T4b:
        case Rule::T4c: {
            Message msg{MessageKind::Info, event.identity, event.p, event.r};
            if (!ms_contains(config.messages, msg)) return false;
            if (!valid_node(event.p) || tree.parent(event.p) != event.r) return false;
            if (event.n != tree.child_position(event.p)) return false;
            NodeId sibling = tree.next_sibling(event.p);
            if (event.rule == Rule::T4a) return sibling != kFake && event.q == sibling;
            if (sibling != kFake) return false;  // p must be the last child
            if (event.rule == Rule::T4b) {
                NodeId parent_of_r = tree.parent(event.r);
                return parent_of_r != kFake && event.q == parent_of_r && event.m == tree.child_position(event.r);
            }
            if (event.r != tree.root()) return false;
            if (replaces && !ms_contains(config.pred, {event.r, event.q})) return false;
            return true;
        }
        case Rule::T5: {
            Message msg{MessageKind::AC, event.identity, event.p, event.r};
            if (!ms_contains(config.messages, msg)) return false;
            if (replaces && !ms_contains(config.pred, {event.r, event.q})) return false;
            return true;
        }
        case Rule::T6: {
            if (!variant_has_succ(variant)) return false;
            Message msg{MessageKind::BC, event.identity, event.p, event.r};
            if (!ms_contains(config.messages, msg)) return false;
            if (replaces && !ms_contains(config.succ, {event.r, event.q})) return false;
            return true;
        }
    }
    return false;
}

std::optional<Message> consumed_message(const Event& event, Variant) {
    switch (event.rule) {
        case Rule::T1:
        case Rule::T2: return std::nullopt;
        case Rule::T3: return Message{MessageKind::FC, event.identity, event.p, event.r};
        case Rule::T4a:
        case Rule::T4b:
        case Rule::T4c: return Message{MessageKind::Info, event.identity, event.p, event.r};
        case Rule::T5: return Message{MessageKind::AC, event.identity, event.p, event.r};
        case Rule::T6: return Message{MessageKind::BC, event.identity, event.p, event.r};
    }
    return std::nullopt;
}

std::vector<Message> produced_messages(const Event& event, Variant variant) {
    switch (event.rule) {
        case Rule::T1:
            if (variant_emits_fc(variant)) return {Message{MessageKind::FC, event.p, event.p, event.c}};
            return {};
        case Rule::T2: return {Message{MessageKind::Info, event.p, event.p, event.f}};
        case Rule::T4a: return {Message{MessageKind::AC, event.identity, event.r, event.q}};
        case Rule::T4b: return {Message{MessageKind::Info, event.identity, event.r, event.q}};
        case Rule::T4c:
        case Rule::T5:
            if (variant_emits_bc(variant)) return {Message{MessageKind::BC, event.r, event.r, event.identity}};
            return {};
        case Rule::T3:
        case Rule::T6: return {};
    }
    return {};
}

Configuration fire(const Configuration& config, const Event& event, const Tree& tree, Variant variant) {
    if (!is_enabled(config, event, tree, variant))
        throw std::invalid_argument("event not enabled: " + event_to_string(event, tree));

    Configuration out = config;
    const bool replaces = variant_replaces_entries(variant);

    auto write_entry = [&](std::vector<std::pair<NodeId, NodeId>>& place, NodeId key, NodeId value) {
        if (replaces) ms_erase_one(place, {key, event.q});
        ms_insert(place, {key, value});
    };

    if (auto msg = consumed_message(event, variant)) ms_erase_one(out.messages, *msg);
    for (const Message& msg : produced_messages(event, variant)) ms_insert(out.messages, msg);

    switch (event.rule) {
        case Rule::T1:
            ms_erase_one(out.initp, event.p);
            if (variant_has_succ(variant)) write_entry(out.succ, event.p, event.c);
            break;
        case Rule::T2:
            ms_erase_one(out.initp, event.p);
            break;
        case Rule::T3:
            write_entry(out.pred, event.r, event.identity);
            break;
        case Rule::T4a:
        case Rule::T4b:
            break;
        case Rule::T4c:
        case Rule::T5:
            if (variant_has_pred(variant)) write_entry(out.pred, event.r, event.identity);
            break;
        case Rule::T6:
            write_entry(out.succ, event.r, event.identity);
            break;
    }
    return out;
}

namespace {

void append_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>(v >> 8));
}

std::uint16_t read_u16(std::string_view bytes, std::size_t& pos) {
    if (pos + 2 > bytes.size()) throw std::invalid_argument("truncated configuration encoding");
    auto lo = static_cast<std::uint8_t>(bytes[pos]);
    auto hi = static_cast<std::uint8_t>(bytes[pos + 1]);
    pos += 2;
    return static_cast<std::uint16_t>(lo | (hi << 8));
}

}  // namespace

std::string encode_config(const Configuration& config, const Tree& tree) {
    const bool narrow = tree.node_count() < 0xFF;
    auto append_node = [narrow](std::string& out, NodeId v) {
        std::uint16_t coded = v == kFake ? 0 : static_cast<std::uint16_t>(v + 1);
        if (narrow)
            out.push_back(static_cast<char>(coded));
        else
            append_u16(out, coded);
    };

    std::string out;
    out.reserve(8 + config.initp.size() + 2 * (config.succ.size() + config.pred.size()) + 4 * config.messages.size());
    append_u16(out, static_cast<std::uint16_t>(config.initp.size()));
    for (NodeId v : config.initp) append_node(out, v);
    for (const auto* place : {&config.succ, &config.pred}) {
        append_u16(out, static_cast<std::uint16_t>(place->size()));
        for (const auto& [a, b] : *place) {
            append_node(out, a);
            append_node(out, b);
        }
    }
    append_u16(out, static_cast<std::uint16_t>(config.messages.size()));
    for (const Message& msg : config.messages) {
        out.push_back(static_cast<char>(msg.kind));
        append_node(out, msg.identity);
        append_node(out, msg.source);
        append_node(out, msg.destination);
    }
    return out;
}

Configuration decode_config(std::string_view bytes, const Tree& tree) {
    const bool narrow = tree.node_count() < 0xFF;
    std::size_t pos = 0;
    auto read_node = [&]() -> NodeId {
        std::uint16_t coded;
        if (narrow) {
            if (pos >= bytes.size()) throw std::invalid_argument("truncated configuration encoding");
            coded = static_cast<std::uint8_t>(bytes[pos++]);
        } else {
            coded = read_u16(bytes, pos);
        }
        return coded == 0 ? kFake : static_cast<NodeId>(coded - 1);
    };

    Configuration config;
    std::uint16_t count = read_u16(bytes, pos);
    config.initp.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) config.initp.push_back(read_node());
    for (auto* place : {&config.succ, &config.pred}) {
        count = read_u16(bytes, pos);
        place->reserve(count);
        for (std::uint16_t i = 0; i < count; ++i) {
            NodeId a = read_node();
            NodeId b = read_node();
            place->emplace_back(a, b);
        }
    }
    count = read_u16(bytes, pos);
    config.messages.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        if (pos >= bytes.size()) throw std::invalid_argument("truncated configuration encoding");
        auto kind = static_cast<MessageKind>(bytes[pos++]);
        Message msg;
        msg.kind = kind;
        msg.identity = read_node();
        msg.source = read_node();
        msg.destination = read_node();
        config.messages.push_back(msg);
    }
    if (pos != bytes.size()) throw std::invalid_argument("trailing bytes in configuration encoding");
    return config;
}

std::uint64_t config_digest(const Configuration& config, const Tree& tree) {
    return fnv1a64(encode_config(config, tree));
}

}  // namespace treering
