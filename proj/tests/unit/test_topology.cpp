#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "treering/tree.hpp"

using namespace treering;
using namespace treering::test;

TEST_SUITE_BEGIN("topology");

TEST_CASE("ten-node example parses into the expected structure") {
    Tree tree = parse_tree("{(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,P2,2),(P0,fake,3),\n"
                           "(P1,P3,1),(P1,P4,2),(P1,fake,3),(P2,P5,1),(P2,fake,2),(P3,P6,1),\n"
                           "(P3,P7,2),(P3,P8,3),(P3,fake,4),(P4,P9,1),(P4,fake,2),(P5,fake,1),\n"
                           "(P6,fake,1),(P7,fake,1),(P8,fake,1),(P9,fake,1)}");
    CHECK(tree.node_count() == 10);
    CHECK(tree.label(tree.root()) == "P0");
    CHECK(tree.leaf_count() == 5);

    CHECK(tree.depth(*tree.find("P0")) == 0);
    CHECK(tree.depth(*tree.find("P6")) == 3);
    CHECK(tree.depth(*tree.find("P5")) == 2);

    // Braces and whitespace are cosmetic; the canonical text round-trips.
    CHECK(tree == ten_node_tree());
    CHECK(parse_tree(tree.to_triples_text()) == tree);
}

TEST_CASE("single-node tree") {
    Tree tree = single_node_tree();
    CHECK(tree.node_count() == 1);
    CHECK(tree.root() == *tree.find("P0"));
    CHECK(tree.is_leaf(tree.root()));
    CHECK(tree.leaf_count() == 1);
}

TEST_CASE("adjacency JSON and triple text give the same tree") {
    Tree from_json = parse_tree(R"({"root":"P0","children":{"P0":["P1"],"P1":[]}})");
    Tree from_triples = two_node_tree();
    CHECK(from_json == from_triples);
    CHECK(from_json.leaf_count() == 1);

    // Omitted children entries mean leaves.
    CHECK(parse_tree(R"({"root":"P0","children":{"P0":["P1"]}})") == from_triples);
}

TEST_CASE("parse errors carry line and column") {
    CHECK_THROWS_AS(parse_tree("(fake,P0,1),(fake,fake,2),(P0,fake"), ParseError);
    try {
        parse_tree("(fake,P0,1),\n(oops!");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 1);
    }
    CHECK_THROWS_AS(parse_tree("(fake,P0,1),(fake,fake,2),(P0,fake,1) trailing"), ParseError);
    CHECK_THROWS_AS(parse_tree("{\"root\": 3, \"children\": {}}"), ParseError);
}

TEST_CASE("validation names the offending construct") {
    auto violations_of = [](const char* text) {
        return validate_triples(parse_triples_text(text)).violations;
    };

    auto has = [](const std::vector<std::string>& violations, const std::string& needle) {
        return std::any_of(violations.begin(), violations.end(),
                           [&needle](const std::string& v) { return v.find(needle) != std::string::npos; });
    };

    CHECK(validate_triples(parse_triples_text(kTenNodeTreeText)).ok());

    // Gap at index 2.
    auto gap = violations_of("(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,P2,3),(P0,fake,4),(P1,fake,1),(P2,fake,1)");
    CHECK(has(gap, "non-contiguous child indices for P0"));

    // P1 has no child list at all.
    auto missing = violations_of("(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,fake,2)");
    CHECK(has(missing, "missing fake terminator for P1"));

    auto two_parents = violations_of(
        "(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,P2,2),(P0,fake,3),(P1,P2,1),(P1,fake,2),(P2,fake,1)");
    CHECK(has(two_parents, "multiple parents for P2"));

    auto reserved = violations_of("(fake,Q0,1),(fake,fake,2),(Q0,fake,1)");
    CHECK(has(reserved, "malformed node label"));

    // The terminator must close the list.
    auto not_last = violations_of("(fake,P0,1),(fake,fake,2),(P0,fake,1),(P0,P1,2),(P1,fake,1)");
    CHECK_FALSE(not_last.empty());
}

TEST_CASE("construction rejects invalid triples") {
    CHECK_THROWS_AS(parse_tree("(fake,P0,1),(fake,fake,2)"), ValidationError);
    try {
        parse_tree("(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,fake,2)");
    } catch (const ValidationError& e) {
        REQUIRE_FALSE(e.violations.empty());
        CHECK(e.violations.front().find("P1") != std::string::npos);
    }
}

TEST_CASE("enumeration counts follow the Catalan numbers") {
    const std::uint64_t expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 1; n <= 10; ++n) {
        std::uint64_t count = 0;
        enumerate_topologies(n, [&count](const Tree&) { ++count; });
        CHECK(count == expected[n - 1]);
        CHECK(catalan(static_cast<unsigned>(n - 1)) == expected[n - 1]);
    }
}

TEST_CASE("enumerated trees are canonical, distinct and preorder-labelled") {
    for (int n = 1; n <= 6; ++n) {
        std::set<std::string> seen;
        enumerate_topologies(n, [&](const Tree& tree) {
            CHECK(tree.node_count() == n);
            CHECK(validate_triples(tree.triples()).ok());
            CHECK(seen.insert(tree.to_triples_text()).second);

            // Preorder relabelling is the identity: label(i-th preorder node) = Pi.
            auto order = tree.preorder();
            for (std::size_t i = 0; i < order.size(); ++i)
                CHECK(tree.label(order[i]) == "P" + std::to_string(i));

            // Canonical labelling forces the ring P0 -> P1 -> ... -> P0.
            auto succ = dfs_ring_oracle(tree);
            for (NodeId v = 0; v < tree.node_count(); ++v)
                CHECK(tree.label_number(succ[v]) == (tree.label_number(v) + 1u) % tree.node_count());
        });
    }
}

TEST_CASE("dfs ring oracle on the ten-node example") {
    Tree tree = ten_node_tree();
    auto succ = dfs_ring_oracle(tree);
    auto expect = [&](const char* from, const char* to) { CHECK(tree.label(succ[*tree.find(from)]) == to); };
    expect("P0", "P1");
    expect("P1", "P3");
    expect("P3", "P6");
    expect("P6", "P7");
    expect("P7", "P8");
    expect("P8", "P4");
    expect("P4", "P9");
    expect("P9", "P2");
    expect("P2", "P5");
    expect("P5", "P0");
}

TEST_CASE("oracle is a single cycle and depth is parent-consistent") {
    for (int n = 1; n <= 6; ++n) {
        enumerate_topologies(n, [&](const Tree& tree) {
            auto succ = dfs_ring_oracle(tree);
            std::vector<bool> seen(tree.node_count(), false);
            NodeId v = tree.root();
            for (NodeId i = 0; i < tree.node_count(); ++i) {
                CHECK_FALSE(seen[v]);
                seen[v] = true;
                v = succ[v];
            }
            CHECK(v == tree.root());

            for (NodeId u = 0; u < tree.node_count(); ++u)
                if (u != tree.root()) CHECK(tree.depth(u) == tree.depth(tree.parent(u)) + 1);
        });
    }
}

TEST_CASE("single node ring maps the node to itself") {
    Tree tree = single_node_tree();
    auto succ = dfs_ring_oracle(tree);
    CHECK(succ[tree.root()] == tree.root());
}

TEST_CASE("leaf count on fixtures") {
    CHECK(ten_node_tree().leaf_count() == 5);
    CHECK(single_node_tree().leaf_count() == 1);
    CHECK(two_node_tree().leaf_count() == 1);
    CHECK(star_tree(5).leaf_count() == 4);
    CHECK(path_tree(5).leaf_count() == 1);
}

TEST_CASE("labels need not be dense") {
    Tree tree = parse_tree("(fake,P5,1),(fake,fake,2),(P5,P7,1),(P5,fake,2),(P7,fake,1)");
    CHECK(tree.node_count() == 2);
    CHECK(tree.label(tree.root()) == "P5");
    auto succ = dfs_ring_oracle(tree);
    CHECK(tree.label(succ[*tree.find("P7")]) == "P5");
}

TEST_SUITE_END();
