#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "magset/power_dag.hpp"

namespace magset {

/// Graphs are enumerated as base-3 codes over the vertex pairs (i < j):
/// 0 = no edge, 1 = i -> j, 2 = i <-> j.  Directed edges ascend, so every
/// code is automatically acyclic, and every ADMG is isomorphic to at least
/// one code.
Admg decode_graph(int n, std::uint64_t code);
std::uint64_t encode_graph(const Admg& g);  // requires ascending directed edges

/// The minimum code over all vertex permutations that keep the directed part
/// ascending; the canonical representative of the isomorphism class.
std::uint64_t canonical_graph_code(int n, std::uint64_t code);

/// Streams canonical representatives of unlabelled MAGs on n vertices.
void enumerate_mags(int n, bool connected_only, const std::function<void(const Admg&)>& fn);

struct CensusOptions {
    int n = 4;
    bool connected_only = false;
    int jobs = 1;
    std::string resume_dir;    // checkpoint directory; empty disables
    bool classify = true;
    // Classes containing a simple member are settled by the simple-MAG
    // theorem instead of the imset machinery.  Disable to cross-check.
    bool trust_simple = true;
    // n=7 slice: keep graphs with edge count <= first or >= second.
    std::optional<std::pair<int, int>> edge_filter;
    std::ostream* log = nullptr;
};

struct CensusClassInfo {
    long id = -1;
    std::uint64_t rep_code = 0;  // canonical code of the representative
    long members = 0;            // unlabelled graphs in the equivalence class
    bool any_simple = false;
    Verdict verdict;
};

struct CensusResult {
    int n = 0;
    long classes = 0;
    long imperfect = 0;
    long non_combinatorial = 0;
    long non_structural = 0;
    std::vector<CensusClassInfo> rows;
};

CensusResult run_census(const CensusOptions& opt);

/// CSV rows: class_id, representative_file, combinatorial, structural_k,
/// perfectly_markovian.  Representatives of failing classes are written as
/// graph files under out_dir when it is nonempty.
std::string census_csv(const CensusResult& r, const std::string& out_dir);

} // namespace magset
