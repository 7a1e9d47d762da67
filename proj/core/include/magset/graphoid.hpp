#pragma once

#include <unordered_set>
#include <vector>

#include "magset/vertex_set.hpp"

namespace magset {

/// Strict partial order on vertices, e.g. the ancestor relation of a graph.
/// Needed by the ordered stability rules.
struct PartialOrder {
    int n = 0;
    std::vector<VertexSet> strictly_below;  // strictly_below[v] = { w : w < v }

    bool less(int a, int b) const { return strictly_below[b].contains(a); }

    static PartialOrder from_total(const std::vector<int>& order);
};

struct GraphoidRules {
    bool semi_graphoids = true;  // symmetry, decomposition, weak union, contraction
    bool intersection = false;
    bool composition = false;
    // Singleton transitivity has a disjunctive conclusion, so it cannot add
    // anything to a least fixed point; accepted for completeness, a no-op.
    bool singleton_transitivity = false;
    bool ordered_upward = false;
    bool ordered_downward = false;

    bool needs_order() const { return ordered_upward || ordered_downward; }
};

using TripleSet = std::unordered_set<CITriple, CITripleHash>;

/// Least fixed point of `start` under the chosen rules.  Triples are kept in
/// canonical (A <= B) form.  The lattice of triples over a fixed ground set
/// is finite, so saturation terminates.
TripleSet graphoid_closure(const std::vector<CITriple>& start,
                           const GraphoidRules& rules,
                           const PartialOrder* order = nullptr);

} // namespace magset
