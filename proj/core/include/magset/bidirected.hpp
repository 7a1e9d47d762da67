#pragma once

#include <memory>

#include "magset/markov.hpp"

namespace magset {

/// Partition of a vertex's dual-graph neighbourhood into blocks of equal
/// outside-neighbour sets, ascending along the N-chain.  `valid` records
/// whether the chain and the all-or-nothing cross-block conditions hold;
/// the grouping itself is always populated.
struct RootedPartition {
    int vertex = -1;
    VertexSet context;                    // the processed vertex set
    std::vector<VertexSet> blocks;        // ascending by outside-neighbour set
    std::vector<VertexSet> outside_nb;    // N^j per block
    std::vector<std::vector<bool>> connected;  // all-or-nothing block adjacency
    bool valid = false;
    std::string violated;  // "chain" or "cross-block" when invalid
};

/// Recursive root decomposition of a consecutive block range [lo, hi]:
/// the root's upper blocks (and the root itself) are fully connected to every
/// lower block, and the upper blocks are disconnected from the root.
struct RootTree {
    int lo = 0, hi = -1;  // empty when hi < lo
    int root = -1;        // block index
    std::unique_ptr<RootTree> high;  // range [root+1, hi]
    std::unique_ptr<RootTree> low;   // range [lo, root-1]
};

/// Groups nb(v) within the dual graph restricted to `processed` and checks
/// the chain and cross-block conditions.
RootedPartition block_partition(const UndirectedGraph& dual, int v, VertexSet processed);

/// Recursive root decomposition of a valid partition, or nullopt when some
/// range has no admissible root.  The root of each decomposable range is
/// unique; a second valid root is a logic error.
std::optional<RootTree> is_rooted(const RootedPartition& p);

struct RootedWitness {
    std::vector<int> order;
    std::vector<RootedPartition> partitions;  // per order position
};

/// Searches vertex orders such that every prefix admits a valid rooted
/// partition for its last vertex.  Validity of a prefix step depends only on
/// the prefix set, so the search runs over subsets with memoised failures;
/// `exhaustive` disables the memo and walks plain order backtracking.
std::optional<RootedWitness> rooted_condition(const Admg& g, bool exhaustive = false);

/// Checks one specific order and returns its witness if every prefix passes.
std::optional<RootedWitness> rooted_witness_for_order(const Admg& g,
                                                      const std::vector<int>& order);

/// The non-overlapping independence list of a rooted witness: per vertex and
/// per block, <v, A^j | H^j u L^j u N^j u T^j>.  Asserts that the
/// semi-elementary sum equals the standard imset and that the constrained
/// sets partition the non-parametrizing sets.
IndependenceList rooted_decomposition(const Admg& g, const RootedWitness& witness);

struct ForbiddenHit {
    std::string pattern;        // "a".."j", with "b5"/"b6"/... for the cycles
    std::vector<int> embedding; // pattern vertex -> dual vertex
};

/// Induced-subgraph scan of the dual graph for the forbidden patterns; the
/// first embedding per pattern is reported.  Any hit implies the standard
/// imset is not perfectly Markovian.
std::vector<ForbiddenHit> forbidden_scan(const Admg& g);

/// The pattern library, as edge lists over 0..k-1 (test access).
std::vector<std::pair<std::string, std::vector<std::pair<int, int>>>> forbidden_patterns(int max_cycle);

} // namespace magset
