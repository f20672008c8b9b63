#pragma once

#include <string>

#include "treering/tree.hpp"

namespace treering::test {

// The worked 10-node example: P0 root with children P1,P2; P1 has P3,P4;
// P2 has P5; P3 has P6,P7,P8; P4 has P9; P5..P9 are leaves.
inline const char* kTenNodeTreeText =
    "(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,P2,2),(P0,fake,3),"
    "(P1,P3,1),(P1,P4,2),(P1,fake,3),(P2,P5,1),(P2,fake,2),(P3,P6,1),"
    "(P3,P7,2),(P3,P8,3),(P3,fake,4),(P4,P9,1),(P4,fake,2),(P5,fake,1),"
    "(P6,fake,1),(P7,fake,1),(P8,fake,1),(P9,fake,1)";

inline const char* kTwoNodeTreeText = "(fake,P0,1),(fake,fake,2),(P0,P1,1),(P0,fake,2),(P1,fake,1)";

inline const char* kSingleNodeTreeText = "(fake,P0,1),(fake,fake,2),(P0,fake,1)";

inline Tree ten_node_tree() { return parse_tree(kTenNodeTreeText); }
inline Tree two_node_tree() { return parse_tree(kTwoNodeTreeText); }
inline Tree single_node_tree() { return parse_tree(kSingleNodeTreeText); }

// Path P0 - P1 - ... - P(n-1).
inline Tree path_tree(int n) {
    std::string text = "(fake,P0,1),(fake,fake,2)";
    for (int i = 0; i < n; ++i) {
        std::string p = "P" + std::to_string(i);
        if (i + 1 < n) text += ",(" + p + ",P" + std::to_string(i + 1) + ",1),(" + p + ",fake,2)";
        else text += ",(" + p + ",fake,1)";
    }
    return parse_tree(text);
}

// Root P0 with leaves P1..P(n-1).
inline Tree star_tree(int n) {
    std::string text = "(fake,P0,1),(fake,fake,2)";
    for (int i = 1; i < n; ++i) text += ",(P0,P" + std::to_string(i) + "," + std::to_string(i) + ")";
    text += ",(P0,fake," + std::to_string(n) + ")";
    for (int i = 1; i < n; ++i) text += ",(P" + std::to_string(i) + ",fake,1)";
    return parse_tree(text);
}

}  // namespace treering::test
