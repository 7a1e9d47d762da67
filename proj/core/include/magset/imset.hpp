#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "magset/admg.hpp"
#include "magset/heads.hpp"

namespace magset {

/// An integer-valued function on the subset lattice of 0..n-1, kept sparse
/// and canonical (zero entries are absent).  Values are exact integers.
class Imset {
public:
    explicit Imset(int n = 0) : n_(n) {}

    int n() const { return n_; }
    const std::map<VertexSet, mpz_class>& entries() const { return map_; }

    mpz_class at(VertexSet s) const {
        auto it = map_.find(s);
        return it == map_.end() ? mpz_class(0) : it->second;
    }

    void add(VertexSet s, const mpz_class& v) {
        if (v == 0) return;
        auto [it, fresh] = map_.insert({s, v});
        if (!fresh) {
            it->second += v;
            if (it->second == 0) map_.erase(it);
        }
    }
    void set(VertexSet s, const mpz_class& v) {
        map_.erase(s);
        if (v != 0) map_[s] = v;
    }

    bool is_zero() const { return map_.empty(); }

    Imset& operator+=(const Imset& o);
    Imset& operator-=(const Imset& o);
    Imset& operator*=(const mpz_class& k);
    friend Imset operator+(Imset a, const Imset& b) { return a += b; }
    friend Imset operator-(Imset a, const Imset& b) { return a -= b; }
    friend Imset operator*(const mpz_class& k, Imset a) { return a *= k; }
    bool operator==(const Imset& o) const { return n_ == o.n_ && map_ == o.map_; }

    mpz_class sum() const;           // sum of all entries
    mpz_class weighted_sum() const;  // sum of |S| * u(S)

    /// Dense vector over all 2^n subsets, indexed by mask.
    std::vector<mpz_class> dense() const;
    static Imset from_dense(int n, const std::vector<mpz_class>& v);

private:
    int n_;
    std::map<VertexSet, mpz_class> map_;
};

Imset delta(int n, VertexSet s);

/// u_<A,B|C> = d_{ABC} - d_{AC} - d_{BC} + d_C.
Imset semi_elementary(int n, const CITriple& t);

/// c(S) = 1 iff S in S(G) for nonempty S; c(empty) = 1, the boundary value
/// the transform pair below forces (S(G) itself never contains the empty
/// set, and set-family comparisons exclude it).
Imset characteristic_imset(const Admg& g);

/// Moebius pair between standard and characteristic imsets, applied over all
/// subsets including the empty set:
///   u(B) = sum_{A >= B} (-1)^{|A\B|} (1 - c(A))
///   c(S) = 1 - sum_{T >= S} u(T)
Imset standard_from_characteristic(const Imset& c);
Imset characteristic_from_standard(const Imset& u);

/// Applies u -> c -> u and c -> u -> c, asserting both identities; returns u.
Imset mobius_roundtrip(const Imset& u);

/// The standard imset of a MAG.  Computed from the characteristic imset by
/// Moebius inversion and independently from the head/tail closed form
///   d_V - d_empty - sum_H sum_{W subseteq H} (-1)^{|H\W|} d_{W u tail(H)};
/// the two must agree (and for DAGs, also the per-vertex parent-set form).
Imset standard_imset(const Admg& g);

/// Entry lines "{i,j,...}: value", sorted by set mask.  Labels name vertices.
std::string imset_to_text(const Imset& u, const std::vector<std::string>& labels);
Imset imset_from_text(const std::string& text, const std::vector<std::string>& labels);

std::string set_to_text(VertexSet s, const std::vector<std::string>& labels);

} // namespace magset
