#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treering {

// Dense node index within one Tree. The sentinel node ("fake") marks absent
// parents/children and child-list terminators; it is never a real process.
using NodeId = std::uint16_t;
inline constexpr NodeId kFake = 0xFFFF;

// One (parent, child, index) entry of the tree encoding. A node with k real
// children carries (p,c_1,1)..(p,c_k,k) plus the terminator (p,fake,k+1);
// the root is declared by (fake,root,1),(fake,fake,2).
struct Triple {
    std::string parent;
    std::string child;
    long index = 0;

    std::string to_string() const;
    bool operator==(const Triple&) const = default;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_);
};

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct ValidationError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> violations_);
};

// Immutable rooted ordered tree. Construction validates the triple encoding;
// an instance always satisfies every structural invariant.
class Tree {
public:
    static Tree from_triples(const std::vector<Triple>& triples);  // throws ValidationError

    NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }
    NodeId root() const { return root_; }

    const std::string& label(NodeId v) const { return labels_.at(v); }
    std::uint32_t label_number(NodeId v) const { return label_numbers_.at(v); }
    std::optional<NodeId> find(std::string_view label) const;

    NodeId parent(NodeId v) const { return parent_.at(v); }          // kFake for root
    std::span<const NodeId> children(NodeId v) const;                 // real children, in order
    std::uint16_t child_position(NodeId v) const { return child_pos_.at(v); }  // 1-based, 0 for root
    NodeId next_sibling(NodeId v) const;                              // kFake if none
    bool is_leaf(NodeId v) const { return children_.at(v).empty(); }
    std::uint16_t depth(NodeId v) const;                              // depth(root) = 0
    std::uint16_t leaf_count() const { return leaf_count_; }

    std::span<const NodeId> preorder() const { return preorder_; }
    NodeId rightmost_leaf(NodeId v) const;
    NodeId last_leaf() const { return rightmost_leaf(root_); }

    std::vector<Triple> triples() const;     // canonical order
    std::string to_triples_text() const;     // "(fake,P0,1),(fake,fake,2),..."
    std::uint64_t digest() const { return digest_; }

    bool operator==(const Tree& other) const { return digest_ == other.digest_ && labels_ == other.labels_ && parent_ == other.parent_; }

private:
    Tree() = default;

    std::vector<std::string> labels_;
    std::vector<std::uint32_t> label_numbers_;
    NodeId root_ = 0;
    std::vector<NodeId> parent_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::uint16_t> child_pos_;
    std::vector<std::uint16_t> depth_;
    std::vector<NodeId> preorder_;
    std::uint16_t leaf_count_ = 0;
    std::uint64_t digest_ = 0;
};

// Checks the triple-encoding invariants without constructing a Tree. Returns
// every violation found, each naming the offending triple or node.
ValidationResult validate_triples(const std::vector<Triple>& triples);

enum class TreeFormat { Auto, Triples, AdjacencyJson };

std::vector<Triple> parse_triples_text(std::string_view text);    // throws ParseError
std::vector<Triple> parse_adjacency_json(std::string_view text);  // throws ParseError
Tree parse_tree(std::string_view text, TreeFormat format = TreeFormat::Auto);

// Yields every ordered rooted tree on n nodes exactly once, labelled P0..P(n-1)
// in depth-first preorder. Enumeration order: node i is attached to the nodes
// of the current rightmost path, deepest candidate first, recursing before
// shallower choices. The count is the (n-1)-th Catalan number.
void enumerate_topologies(int n, const std::function<void(const Tree&)>& yield);
std::vector<Tree> enumerate_topologies(int n);

std::uint64_t catalan(unsigned k);

// succ map of the ring the protocol is expected to build: succ[v] is the node
// after v in depth-first preorder, wrapping from the last preorder node to the
// root. Indexed by NodeId.
std::vector<NodeId> dfs_ring_oracle(const Tree& tree);

}  // namespace treering
