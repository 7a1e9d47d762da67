#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magset/vertex_set.hpp"

namespace magset {

enum class Relation { Parents, Siblings, Ancestors, Descendants, District };

struct InducedSubgraph;  // Admg plus the new-id -> old-id map; defined below

/// An undirected graph, used for duals of bidirected graphs.
struct UndirectedGraph {
    int n = 0;
    std::vector<VertexSet> adj;
    std::vector<std::string> labels;

    VertexSet neighbours(int v) const { return adj[v]; }
    bool has_edge(int a, int b) const { return adj[a].contains(b); }
    int edge_count() const;
    UndirectedGraph induced(VertexSet w) const;
};

/// Acyclic directed mixed graph over dense vertex ids 0..n-1.  External
/// labels are kept in a side map for parsing and reporting.  Immutable after
/// construction; construction validates simplicity and acyclicity.
class Admg {
public:
    Admg(int n,
         std::vector<std::pair<int, int>> directed,
         std::vector<std::pair<int, int>> bidirected,
         std::vector<std::string> labels = {});

    int n() const { return n_; }
    VertexSet vertices() const { return VertexSet::full(n_); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[v]; }
    std::optional<int> id_of(const std::string& label) const;

    const std::vector<std::pair<int, int>>& directed_edges() const { return directed_; }
    const std::vector<std::pair<int, int>>& bidirected_edges() const { return bidirected_; }

    VertexSet parents(int v) const { return pa_[v]; }
    VertexSet children(int v) const { return ch_[v]; }
    VertexSet siblings(int v) const { return sib_[v]; }
    VertexSet ancestors(int v) const { return an_[v]; }    // reflexive
    VertexSet descendants(int v) const { return de_[v]; }  // reflexive

    VertexSet parents(VertexSet w) const;
    VertexSet children(VertexSet w) const;
    VertexSet siblings(VertexSet w) const;
    VertexSet ancestors(VertexSet w) const;
    VertexSet descendants(VertexSet w) const;
    /// District of w in the whole graph (use induced()/masked helpers for
    /// districts of subgraphs).  Requires w nonempty.
    VertexSet district(VertexSet w) const;

    VertexSet relatives(VertexSet w, Relation kind) const;

    bool adjacent(int a, int b) const {
        return pa_[a].contains(b) || ch_[a].contains(b) || sib_[a].contains(b);
    }

    /// Masked primitives: the graph restricted to `mask`, without
    /// materialising the induced subgraph.  Used heavily by the head and
    /// power-DAG machinery, which works inside ancestral subsets.
    VertexSet ancestors_in(VertexSet mask, VertexSet w) const;
    VertexSet descendants_in(VertexSet mask, VertexSet w) const;
    VertexSet district_in(VertexSet mask, int v) const;
    VertexSet district_in(VertexSet mask, VertexSet w) const;
    VertexSet barren_in(VertexSet mask, VertexSet w) const;
    std::vector<VertexSet> districts_in(VertexSet mask) const;
    std::vector<VertexSet> districts() const { return districts_in(vertices()); }
    bool connected_skeleton() const;

    InducedSubgraph induced(VertexSet w) const;

    bool is_ancestral() const;
    /// Maximality via the ancestral-separator candidate an({a,b}) \ {a,b}.
    /// Requires an ancestral graph.
    bool is_maximal() const;
    /// Test oracle: for every nonadjacent pair, search all C for a separator.
    bool is_maximal_brute() const;
    bool is_mag() const { return is_ancestral() && is_maximal(); }

    /// m-separation of t.A from t.B given t.C, decided by reachability over
    /// (vertex, arrived-by-arrowhead) states.
    bool m_separated(const CITriple& t) const;
    bool m_separated(VertexSet a, VertexSet b, VertexSet c) const {
        return m_separated(CITriple(a, b, c));
    }

    /// Lexicographically smallest topological order of the directed part.
    std::vector<int> canonical_topological_order() const;
    /// Enumerates every topological order; fn may return false to stop early.
    void all_topological_orders(const std::function<bool(const std::vector<int>&)>& fn) const;
    bool is_topological(const std::vector<int>& order) const;

    /// Complement adjacency of a purely bidirected graph; rejects graphs
    /// with directed edges.
    UndirectedGraph dual_graph() const;

    std::string to_dot() const;
    std::string to_text() const;

private:
    int n_;
    std::vector<std::pair<int, int>> directed_;
    std::vector<std::pair<int, int>> bidirected_;
    std::vector<std::string> labels_;
    std::vector<VertexSet> pa_, ch_, sib_, an_, de_;
};

struct InducedSubgraph {
    Admg graph;
    std::vector<int> orig_ids;  // new id -> old id
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
    int line_no;
};

/// Parses the line-oriented graph format: optional `vertices:` header, then
/// `a -> b` / `a <-> b` edge lines; `#` starts a comment.
Admg parse_graph(const std::string& text);
Admg parse_graph_file(const std::string& path);

/// Brute-force m-connection oracle: enumerates all simple paths. Test use.
bool m_separated_by_paths(const Admg& g, const CITriple& t);

} // namespace magset
