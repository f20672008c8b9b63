#include "treering/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "treering/digest.hpp"

namespace treering {

namespace {

constexpr std::string_view kFakeLabel = "fake";

// Real node labels are "P" followed by a decimal number without leading
// zeros. "fake" is reserved for the sentinel.
std::optional<std::uint32_t> parse_label_number(std::string_view label) {
    if (label.size() < 2 || label[0] != 'P') return std::nullopt;
    std::string_view digits = label.substr(1);
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    std::uint64_t value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (value > 0xFFFFFFFFull) return std::nullopt;
    }
    return static_cast<std::uint32_t>(value);
}

bool is_fake_label(std::string_view label) { return label == kFakeLabel; }

}  // namespace

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::string Triple::to_string() const {
    std::ostringstream os;
    os << '(' << parent << ',' << child << ',' << index << ')';
    return os.str();
}

ParseError::ParseError(int line_, int column_, const std::string& what_)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + what_),
      line(line_),
      column(column_) {}

ValidationError::ValidationError(std::vector<std::string> violations_)
    : std::runtime_error(violations_.empty() ? std::string("invalid tree")
                                             : "invalid tree: " + violations_.front() +
                                                   (violations_.size() > 1
                                                        ? " (+" + std::to_string(violations_.size() - 1) + " more)"
                                                        : "")),
      violations(std::move(violations_)) {}

ValidationResult validate_triples(const std::vector<Triple>& triples) {
    ValidationResult result;
    auto violation = [&result](const std::string& text) { result.violations.push_back(text); };

    bool names_ok = true;
    for (const Triple& t : triples) {
        for (const std::string* name : {&t.parent, &t.child}) {
            if (!is_fake_label(*name) && !parse_label_number(*name)) {
                violation("malformed node label '" + *name + "' in triple " + t.to_string());
                names_ok = false;
            }
        }
        if (t.index < 1) violation("non-positive child index in triple " + t.to_string());
    }
    if (!names_ok) return result;  // later checks assume well-formed labels

    {
        std::set<std::pair<std::string, std::string>> seen_pairs;
        std::set<std::pair<std::string, long>> seen_slots;
        for (const Triple& t : triples) {
            if (!seen_pairs.insert({t.parent, t.child}).second && !is_fake_label(t.child))
                violation("duplicate child " + t.child + " under " + t.parent);
            if (!seen_slots.insert({t.parent, t.index}).second)
                violation("duplicate child index " + std::to_string(t.index) + " for " + t.parent);
        }
    }

    // Root declaration: exactly (fake,root,1),(fake,fake,2).
    std::string root;
    {
        std::vector<const Triple*> fake_parent;
        for (const Triple& t : triples)
            if (is_fake_label(t.parent)) fake_parent.push_back(&t);
        std::sort(fake_parent.begin(), fake_parent.end(),
                  [](const Triple* a, const Triple* b) { return a->index < b->index; });
        bool shape_ok = fake_parent.size() == 2 && fake_parent[0]->index == 1 && fake_parent[1]->index == 2 &&
                        !is_fake_label(fake_parent[0]->child) && is_fake_label(fake_parent[1]->child);
        if (shape_ok) {
            root = fake_parent[0]->child;
        } else {
            violation("root must be declared by exactly (fake,<root>,1),(fake,fake,2)");
        }
    }

    // The node universe is every real label mentioned anywhere.
    std::set<std::string> nodes;
    for (const Triple& t : triples) {
        if (!is_fake_label(t.parent)) nodes.insert(t.parent);
        if (!is_fake_label(t.child)) nodes.insert(t.child);
    }
    if (nodes.empty()) violation("tree has no real nodes");

    // Per-node child list: contiguous indices 1..k+1 with the fake terminator last.
    for (const std::string& p : nodes) {
        std::map<long, const Triple*> slots;
        bool has_terminator = false;
        for (const Triple& t : triples) {
            if (t.parent != p) continue;
            slots[t.index] = &t;
            if (is_fake_label(t.child)) has_terminator = true;
        }
        if (!has_terminator) {
            violation("missing fake terminator for " + p);
            continue;
        }
        long expected = 1;
        bool contiguous = true;
        for (const auto& [index, triple] : slots) {
            if (index != expected) {
                contiguous = false;
                break;
            }
            ++expected;
        }
        if (!contiguous) {
            violation("non-contiguous child indices for " + p);
            continue;
        }
        long last = static_cast<long>(slots.size());
        for (const auto& [index, triple] : slots) {
            bool fake_child = is_fake_label(triple->child);
            if (fake_child && index != last)
                violation("fake terminator of " + p + " is not the last child, in triple " + triple->to_string());
            if (!fake_child && index == last)
                violation("missing fake terminator for " + p);
        }
    }

    // Parent uniqueness.
    for (const std::string& u : nodes) {
        int parents = 0;
        for (const Triple& t : triples)
            if (t.child == u && !is_fake_label(t.parent)) ++parents;
        bool is_root = (u == root);
        if (is_root && parents != 0)
            violation("root " + u + " must not appear as a child of a real node");
        if (!is_root && parents == 0) violation("no parent for " + u);
        if (parents > 1) violation("multiple parents for " + u);
        for (const Triple& t : triples)
            if (t.parent == u && t.child == u) violation("node " + u + " is its own child");
    }

    // Reachability from the root (also rejects cycles).
    if (!root.empty()) {
        std::set<std::string> reached{root};
        std::vector<std::string> frontier{root};
        while (!frontier.empty()) {
            std::string p = frontier.back();
            frontier.pop_back();
            for (const Triple& t : triples)
                if (t.parent == p && !is_fake_label(t.child) && reached.insert(t.child).second)
                    frontier.push_back(t.child);
        }
        for (const std::string& u : nodes)
            if (!reached.count(u)) violation("unreachable node " + u);
    }

    return result;
}

Tree Tree::from_triples(const std::vector<Triple>& triples) {
    ValidationResult verdict = validate_triples(triples);
    if (!verdict.ok()) throw ValidationError(std::move(verdict.violations));

    Tree tree;

    std::set<std::string> names;
    for (const Triple& t : triples) {
        if (!is_fake_label(t.parent)) names.insert(t.parent);
        if (!is_fake_label(t.child)) names.insert(t.child);
    }
    std::vector<std::pair<std::uint32_t, std::string>> ordered;
    ordered.reserve(names.size());
    for (const std::string& name : names) ordered.emplace_back(*parse_label_number(name), name);
    std::sort(ordered.begin(), ordered.end());

    std::map<std::string, NodeId> id_of;
    for (const auto& [number, name] : ordered) {
        id_of[name] = static_cast<NodeId>(tree.labels_.size());
        tree.labels_.push_back(name);
        tree.label_numbers_.push_back(number);
    }

    const NodeId n = tree.node_count();
    tree.parent_.assign(n, kFake);
    tree.children_.assign(n, {});
    tree.child_pos_.assign(n, 0);
    tree.depth_.assign(n, 0);

    std::map<NodeId, std::map<long, NodeId>> slots;
    for (const Triple& t : triples) {
        if (is_fake_label(t.parent)) {
            if (!is_fake_label(t.child)) tree.root_ = id_of.at(t.child);
            continue;
        }
        if (is_fake_label(t.child)) continue;
        slots[id_of.at(t.parent)][t.index] = id_of.at(t.child);
    }
    for (const auto& [p, by_index] : slots) {
        for (const auto& [index, c] : by_index) {
            tree.children_[p].push_back(c);
            tree.parent_[c] = p;
            tree.child_pos_[c] = static_cast<std::uint16_t>(index);
        }
    }

    tree.preorder_.reserve(n);
    std::vector<NodeId> stack{tree.root_};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        tree.preorder_.push_back(v);
        if (v != tree.root_) tree.depth_[v] = static_cast<std::uint16_t>(tree.depth_[tree.parent_[v]] + 1);
        const auto& kids = tree.children_[v];
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }

    for (NodeId v = 0; v < n; ++v)
        if (tree.is_leaf(v)) ++tree.leaf_count_;

    tree.digest_ = fnv1a64(tree.to_triples_text());
    return tree;
}

std::optional<NodeId> Tree::find(std::string_view label) const {
    for (NodeId v = 0; v < node_count(); ++v)
        if (labels_[v] == label) return v;
    return std::nullopt;
}

std::span<const NodeId> Tree::children(NodeId v) const {
    const auto& kids = children_.at(v);
    return {kids.data(), kids.size()};
}

NodeId Tree::next_sibling(NodeId v) const {
    NodeId p = parent_.at(v);
    if (p == kFake) return kFake;
    const auto& kids = children_[p];
    std::size_t pos = child_pos_[v];  // 1-based
    return pos < kids.size() ? kids[pos] : kFake;
}

std::uint16_t Tree::depth(NodeId v) const {
    if (v >= node_count()) throw std::out_of_range("unknown node id " + std::to_string(v));
    return depth_[v];
}

NodeId Tree::rightmost_leaf(NodeId v) const {
    while (!is_leaf(v)) v = children_.at(v).back();
    return v;
}

std::vector<Triple> Tree::triples() const {
    std::vector<Triple> out;
    out.push_back({std::string(kFakeLabel), labels_.at(root_), 1});
    out.push_back({std::string(kFakeLabel), std::string(kFakeLabel), 2});
    for (NodeId v = 0; v < node_count(); ++v) {
        long index = 1;
        for (NodeId c : children_[v]) out.push_back({labels_[v], labels_[c], index++});
        out.push_back({labels_[v], std::string(kFakeLabel), index});
    }
    return out;
}

std::string Tree::to_triples_text() const {
    std::string out;
    bool first = true;
    for (const Triple& t : triples()) {
        if (!first) out += ',';
        first = false;
        out += t.to_string();
    }
    return out;
}

namespace {

class TripleLexer {
public:
    explicit TripleLexer(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(line_, col_, std::string("expected '") + c + "'" +
                                              (pos_ < text_.size() ? std::string(", found '") + text_[pos_] + "'"
                                                                   : std::string(", found end of input")));
        advance();
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        int line = line_, col = col_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            advance();
        if (pos_ == start) throw ParseError(line, col, "expected a node label");
        return std::string(text_.substr(start, pos_ - start));
    }

    long integer() {
        skip_ws();
        int line = line_, col = col_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        if (pos_ == start) throw ParseError(line, col, "expected a child index");
        long value = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            value = value * 10 + (text_[i] - '0');
            if (value > 1'000'000) throw ParseError(line, col, "child index out of range");
        }
        return value;
    }

    int line() const { return line_; }
    int col() const { return col_; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Triple> parse_triples_text(std::string_view text) {
    TripleLexer lex(text);
    std::vector<Triple> triples;
    bool braced = lex.accept('{');
    while (true) {
        if (lex.at_end()) {
            if (triples.empty()) throw ParseError(lex.line(), lex.col(), "expected '('");
            break;
        }
        lex.expect('(');
        Triple t;
        t.parent = lex.identifier();
        lex.expect(',');
        t.child = lex.identifier();
        lex.expect(',');
        t.index = lex.integer();
        lex.expect(')');
        triples.push_back(std::move(t));
        if (lex.accept(',')) continue;
        break;
    }
    if (braced) lex.expect('}');
    if (!lex.at_end()) throw ParseError(lex.line(), lex.col(), "unexpected trailing input");
    return triples;
}

std::vector<Triple> parse_adjacency_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, static_cast<int>(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("root") || !doc.contains("children") || !doc["root"].is_string() ||
        !doc["children"].is_object())
        throw ParseError(1, 1, "adjacency document must be {\"root\": <label>, \"children\": {<label>: [<label>...]}}");
    for (const auto& [key, value] : doc.items())
        if (key != "root" && key != "children") throw ParseError(1, 1, "unexpected key '" + key + "'");

    const std::string root = doc["root"].get<std::string>();
    std::map<std::string, std::vector<std::string>> children;
    std::set<std::string> nodes{root};
    for (const auto& [name, kids] : doc["children"].items()) {
        if (!kids.is_array()) throw ParseError(1, 1, "children of '" + name + "' must be an array");
        nodes.insert(name);
        auto& list = children[name];
        for (const auto& kid : kids) {
            if (!kid.is_string()) throw ParseError(1, 1, "children of '" + name + "' must be labels");
            list.push_back(kid.get<std::string>());
            nodes.insert(kid.get<std::string>());
        }
    }

    std::vector<Triple> triples;
    triples.push_back({"fake", root, 1});
    triples.push_back({"fake", "fake", 2});
    for (const std::string& name : nodes) {
        long index = 1;
        auto it = children.find(name);
        if (it != children.end())
            for (const std::string& kid : it->second) triples.push_back({name, kid, index++});
        triples.push_back({name, "fake", index});
    }
    return triples;
}

Tree parse_tree(std::string_view text, TreeFormat format) {
    if (format == TreeFormat::Auto) {
        std::size_t i = 0;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        format = (i < text.size() && text[i] == '{' &&
                  text.find('"') != std::string_view::npos)
                     ? TreeFormat::AdjacencyJson
                     : TreeFormat::Triples;
    }
    std::vector<Triple> triples =
        format == TreeFormat::AdjacencyJson ? parse_adjacency_json(text) : parse_triples_text(text);
    return Tree::from_triples(triples);
}

namespace {

void enumerate_rec(int n, int next, std::vector<NodeId>& rightmost_path, std::vector<NodeId>& parent,
                   const std::function<void(const Tree&)>& yield) {
    if (next == n) {
        std::vector<Triple> triples;
        triples.push_back({"fake", "P0", 1});
        triples.push_back({"fake", "fake", 2});
        std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
        for (int v = 1; v < n; ++v) children[parent[static_cast<std::size_t>(v)]].push_back(v);
        for (int v = 0; v < n; ++v) {
            long index = 1;
            for (int c : children[static_cast<std::size_t>(v)])
                triples.push_back({"P" + std::to_string(v), "P" + std::to_string(c), index++});
            triples.push_back({"P" + std::to_string(v), "fake", index});
        }
        yield(Tree::from_triples(triples));
        return;
    }
    std::vector<NodeId> saved = rightmost_path;
    for (std::size_t keep = saved.size(); keep >= 1; --keep) {
        rightmost_path.assign(saved.begin(), saved.begin() + static_cast<std::ptrdiff_t>(keep));
        parent[static_cast<std::size_t>(next)] = rightmost_path.back();
        rightmost_path.push_back(static_cast<NodeId>(next));
        enumerate_rec(n, next + 1, rightmost_path, parent, yield);
    }
    rightmost_path = saved;
}

}  // namespace

void enumerate_topologies(int n, const std::function<void(const Tree&)>& yield) {
    if (n < 1) throw std::invalid_argument("node count must be at least 1");
    std::vector<NodeId> parent(static_cast<std::size_t>(n), kFake);
    std::vector<NodeId> rightmost_path{0};
    enumerate_rec(n, 1, rightmost_path, parent, yield);
}

std::vector<Tree> enumerate_topologies(int n) {
    std::vector<Tree> out;
    enumerate_topologies(n, [&out](const Tree& t) { out.push_back(t); });
    return out;
}

std::uint64_t catalan(unsigned k) {
    // C(k) = binom(2k, k) / (k + 1), exact in 64 bits for k <= 33.
    if (k > 33) throw std::invalid_argument("catalan number out of 64-bit range");
    std::uint64_t c = 1;
    for (unsigned i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

std::vector<NodeId> dfs_ring_oracle(const Tree& tree) {
    std::span<const NodeId> order = tree.preorder();
    std::vector<NodeId> succ(tree.node_count(), kFake);
    for (std::size_t i = 0; i < order.size(); ++i) succ[order[i]] = order[(i + 1) % order.size()];
    return succ;
}

}  // namespace treering
