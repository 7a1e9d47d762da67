#pragma once

#include <initializer_list>

#include "magset/admg.hpp"

namespace fixtures {

using magset::Admg;
using magset::VertexSet;

/// Vertex set from 1-based labels, so tests read like the figures.
inline VertexSet V(std::initializer_list<int> labels) {
    VertexSet s;
    for (int x : labels) s |= VertexSet::single(x - 1);
    return s;
}

inline magset::CITriple T(std::initializer_list<int> a, std::initializer_list<int> b,
                          std::initializer_list<int> c = {}) {
    return magset::CITriple(V(a), V(b), V(c));
}

using Edges = std::vector<std::pair<int, int>>;

/// Graph from 1-based edge lists.
inline Admg mag(int n, Edges directed, Edges bidirected) {
    for (auto& e : directed) {
        --e.first;
        --e.second;
    }
    for (auto& e : bidirected) {
        --e.first;
        --e.second;
    }
    return Admg(n, directed, bidirected);
}

// ancestral but not maximal
inline Admg fig1_i() { return mag(4, {{2, 3}, {1, 4}}, {{1, 3}, {2, 4}, {1, 2}}); }
// maximal but not ancestral
inline Admg fig1_ii() { return mag(3, {{1, 2}, {2, 3}}, {{1, 3}}); }
// the running MAG example with the single independence 1 _||_ 3 | 4
inline Admg fig1_iii() { return mag(4, {{2, 3}, {1, 4}}, {{1, 2}, {2, 4}, {3, 4}}); }

inline Admg fig2_dag() { return mag(4, {{1, 3}, {2, 3}, {3, 4}}, {}); }

// heads {1,2} (tail {3}) and {3,4} (tail {1}); u has the +2 entry at {1,3}
inline Admg fig4() { return mag(4, {{1, 4}, {3, 2}}, {{1, 2}, {3, 4}}); }

inline Admg fig7_simple() {
    return mag(8, {{1, 8}, {2, 7}, {5, 8}, {4, 5}, {3, 4}, {6, 7}},
               {{7, 8}, {6, 8}, {6, 4}});
}

inline Admg bidirected_cycle(int n) {
    Edges bid;
    for (int i = 1; i <= n; ++i) bid.push_back({i, i % n + 1});
    return mag(n, {}, bid);
}

inline Admg bidirected_chain(int n) {
    Edges bid;
    for (int i = 1; i < n; ++i) bid.push_back({i, i + 1});
    return mag(n, {}, bid);
}

// 6-cycle plus the chord 1 <-> 4: structural (k=2) but not combinatorial
inline Admg fig6() {
    return mag(6, {}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}, {1, 4}});
}

// the complete power DAG example (component of vertex 6 has 10 edges)
inline Admg fig13() {
    return mag(6, {{1, 5}, {2, 6}, {3, 4}},
               {{1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 6}, {1, 4}});
}

// the redundancy example: refined list of 6 keeps a third statement
inline Admg fig12_i() {
    return mag(6, {{3, 5}, {2, 4}, {1, 6}}, {{6, 4}, {5, 4}, {6, 5}});
}
inline Admg fig12_ii() {
    return mag(6, {{3, 5}, {2, 4}, {1, 6}}, {{6, 4}, {5, 4}, {6, 5}, {2, 3}});
}

// bidirected 6-cycle with the extra edge 1 -> 3 (ordered downward stability)
inline Admg example_a() {
    return mag(6, {{1, 3}}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}});
}

inline Admg complete_dag(int n) {
    Edges dir;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) dir.push_back({i, j});
    return mag(n, dir, {});
}

inline Admg empty_graph(int n) { return mag(n, {}, {}); }

} // namespace fixtures
