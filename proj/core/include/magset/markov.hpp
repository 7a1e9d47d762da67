#pragma once

#include <string>

#include "magset/cone.hpp"
#include "magset/graphoid.hpp"
#include "magset/heads.hpp"

namespace magset {

struct IndependenceStatement {
    CITriple triple;
    std::string provenance;  // which head / ancestral set produced it
};

/// An ordered list of independence statements, each verified against the
/// source graph by m-separation on construction.
class IndependenceList {
public:
    IndependenceList(const Admg& g, std::vector<IndependenceStatement> items);

    const std::vector<IndependenceStatement>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool contains(const CITriple& t) const;
    Imset semi_elementary_sum(int n) const;

private:
    std::vector<IndependenceStatement> items_;
};

/// All disjoint canonical triples over 0..n-1, ordered by |A u B u C| then
/// lexicographically; small statements first so searches fail fast.
std::vector<CITriple> all_canonical_triples(int n);

/// One statement per (ancestral set A, childless v in A), deduplicated.
IndependenceList ordered_local_markov(const Admg& g, const std::vector<int>& order);

/// The m-separation model of the graph in the requested scope.
std::vector<CITriple> graph_model(const Admg& g, ModelScope scope);

/// Markov equivalence via equality of parametrizing-set families.
bool markov_equivalent(const Admg& g1, const Admg& g2);

/// The telescoping decomposition available for simple MAGs: per vertex i with
/// earlier size-two heads {i,j_1} < ... < {i,j_k}, a chain of k+1 statements
/// whose semi-elementary sum is exactly the standard imset (asserted).
/// Rejects non-simple graphs.
IndependenceList simple_decomposition(const Admg& g, const std::vector<int>& order);
IndependenceList simple_decomposition(const Admg& g);

struct Verdict {
    bool combinatorial = false;
    std::optional<mpz_class> structural_k;  // empty: model undefined
    bool markovian = false;
    bool faithful = false;
    bool perfectly_markovian = false;

    std::string to_json() const;
};

struct VerdictOptions {
    // Faithfulness normally holds by construction for structural u_G (every
    // term of the signed decomposition is an m-separation); this re-verifies
    // it triple by triple.
    bool paranoid_faithful = false;
    int jobs = 1;
};

/// Full classification of the standard imset of g against the graph's model.
/// markovian is decided over all disjoint triples, not elementary ones only,
/// since imset models need not satisfy composition.
Verdict verdict(const Admg& g, const VerdictOptions& opt = {});

} // namespace magset
