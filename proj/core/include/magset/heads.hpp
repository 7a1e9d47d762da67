#pragma once

#include <map>
#include <optional>
#include <vector>

#include "magset/admg.hpp"

namespace magset {

/// A head H with its tail, in some ADMG.  max_vertex is the position-maximal
/// element of the head under the order the record was built with (numeric by
/// default); the power-DAG machinery regroups heads when given another order.
struct HeadRecord {
    VertexSet head;
    VertexSet tail;
    int max_vertex = -1;

    bool operator==(const HeadRecord& o) const { return head == o.head; }
    bool operator<(const HeadRecord& o) const { return head < o.head; }
};

/// The family S(G) = { H u A : H a head, A subseteq tail(H) }, with the
/// unique generating head kept per member set.
struct ParametrizingSets {
    std::vector<VertexSet> sets;                  // sorted by mask value
    std::map<VertexSet, VertexSet> generating_head;

    bool contains(VertexSet s) const { return generating_head.count(s) > 0; }
    bool operator==(const ParametrizingSets& o) const { return sets == o.sets; }
};

/// Vertices of W with no strict descendant inside W.
VertexSet barren(const Admg& g, VertexSet w);

/// Whether H is a head: barren(H) = H and H lies in a single district of
/// the subgraph induced by an(H).
bool is_head(const Admg& g, VertexSet h);

/// tail(H) = (dis_{an(H)}(H) \ H) u pa(dis_{an(H)}(H)).  Requires a head.
VertexSet tail_of_head(const Admg& g, VertexSet h);

HeadRecord head_record(const Admg& g, VertexSet h);

/// All heads, by exhaustive scan of nonempty vertex subsets (desk scale,
/// n <= 16 by design).  Sorted by head mask.
std::vector<HeadRecord> enumerate_heads(const Admg& g);

ParametrizingSets parametrizing_sets(const Admg& g);

/// Markov blanket of v within the ancestral set A:
/// pa_{G_A}(dis_{G_A}(v)) u dis_{G_A}(v) \ {v}.
/// Rejects non-ancestral A and v with children inside A.
VertexSet markov_blanket(const Admg& g, int v, VertexSet a);

/// The constrained sets of <A,B|C>: every A' u B' u C' with nonempty
/// A' subseteq A, B' subseteq B and C' subseteq C.
std::vector<VertexSet> constrained_sets(const CITriple& t);

/// For S not in S(G), a witnessing independence <a,b|C> with a,b in S,
/// S subseteq C u {a,b}; smallest separator first.  nullopt iff S in S(G).
std::optional<CITriple> missing_set_witness(const Admg& g, VertexSet s);

/// True iff no head has more than two vertices.
bool is_simple(const Admg& g);

} // namespace magset
