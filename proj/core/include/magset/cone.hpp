#pragma once

#include <memory>
#include <optional>

#include "magset/graphoid.hpp"
#include "magset/imset.hpp"

namespace magset {

/// All elementary triples <a,b|C> with a < b, C inside V \ {a,b}; ordered by
/// (a, b, C mask).  Size n(n-1)/2 * 2^(n-2).
std::vector<CITriple> elementary_basis(int n);

/// Witness that k * u equals a nonnegative integer combination of elementary
/// imsets.  Terms are (triple, multiplicity), sorted by basis order.
struct ConeCertificate {
    mpz_class k = 1;
    std::vector<std::pair<CITriple, long>> terms;

    long term_count() const {
        long c = 0;
        for (const auto& [t, m] : terms) c += m;
        return c;
    }
    Imset sum(int n) const;
};

/// Necessary conditions for membership in the elementary cone: every
/// elementary imset has entry sum 0 and degree-weighted sum 0, so any
/// nonnegative combination does too.
bool moment_filters_pass(const Imset& u);

/// Exact decision: is u a nonnegative integer combination of elementary
/// imsets?  Complete depth-first search over forced top sets with memoised
/// infeasible residuals; the returned certificate is the first decomposition
/// in canonical search order, so it is stable across runs.
/// node_budget < 0 means unlimited.  Throws std::runtime_error if a finite
/// budget is exhausted before the search closes.
std::optional<ConeCertificate> is_combinatorial(const Imset& u, long node_budget = -1);

/// Exact rational feasibility of u in cone(elementary); on success the
/// multiplier k is minimised by trying k = 1, 2, ... with the integer
/// search (bounded above by the cleared-denominator witness).
std::optional<ConeCertificate> is_structural(const Imset& u);

enum class Represents { Yes, No, ModelUndefined };

/// Is <A,B|C> represented in u, i.e. does some positive multiple k*u - u_t
/// stay combinatorial?  Decided by exact rational feasibility of
///   lambda * u - sum q_e e = u_t,  lambda, q >= 0,
/// which suffices: scaling a rational solution by the common denominator d
/// gives p*u - d*u_t in the integer cone, and adding (d-1)*u_t (itself
/// combinatorial, as every semi-elementary imset is) shows k = p works.
/// Returns ModelUndefined when u is not structural.
Represents represents(const Imset& u, const CITriple& t);

enum class ModelScope { Elementary, AllTriples };

/// Every represented triple in the scope, canonical and sorted.
/// AllTriples enumerates all disjoint <A,B|C> (roughly 4^n checks).
std::vector<CITriple> induced_model(const Imset& u, ModelScope scope);

struct DegreeResult {
    bool exact = false;
    long value = -1;  // when exact
    long lower = 0, upper = -1;
    mpz_class k = 1;
};

/// Minimum number of elementary terms (counted with multiplicity) writing
/// k*u for the minimal feasible k; branch-and-bound, with bracketed bounds
/// if the node budget runs out first.
DegreeResult degree(const Imset& u, long node_budget = 2000000);

/// Exact rational feasibility of { x >= 0 : sum_j cols[j] * x_j = rhs }.
struct LpFeasibility {
    bool feasible = false;
    std::vector<mpq_class> x;
};
LpFeasibility cone_feasible(const std::vector<Imset>& cols, const Imset& rhs);

/// Membership oracle for the model of one imset, reused across many queries.
/// Positive queries are answered by a semi-graphoid closure of the imset's
/// own decomposition whenever possible (any semi-graphoid consequence of
/// represented triples is represented); everything else falls back to the
/// exact LP.
class ImsetModelOracle {
public:
    explicit ImsetModelOracle(Imset u);

    bool structural() const { return structural_; }
    const std::optional<ConeCertificate>& certificate() const { return cert_; }
    Represents query(const CITriple& t);
    long lp_calls() const { return lp_calls_; }

private:
    Imset u_;
    bool structural_ = false;
    std::optional<ConeCertificate> cert_;
    TripleSet closure_;
    TripleSet yes_, no_;
    std::vector<Imset> lp_cols_;  // [u, -e_1, -e_2, ...], built on first LP
    long lp_calls_ = 0;
};

} // namespace magset
