#pragma once

#include <functional>
#include <unordered_map>

#include "magset/imset.hpp"

namespace magset {

/// Categorical data table; values are arbitrary strings per column, encoded
/// to dense codes on load.  Subset entropies are cached, making a full sweep
/// of interaction informations O(3^n) lookups over the lattice.
///
/// Entropies follow the convention H(X_S) = sum p log p (natural log), so
/// they are <= 0 and <u_<A,B|C>, H> is the conditional mutual information.
class EmpiricalTable {
public:
    static EmpiricalTable from_csv(const std::string& text);
    static EmpiricalTable from_csv_file(const std::string& path);

    int columns() const { return static_cast<int>(names_.size()); }
    long rows() const { return n_rows_; }
    const std::vector<std::string>& names() const { return names_; }

    double entropy(VertexSet s) const;
    double interaction_information(VertexSet s) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> codes_;  // per row, per column
    long n_rows_ = 0;
    mutable std::unordered_map<std::uint32_t, double> entropy_cache_;
};

/// An exact joint distribution over categorical variables, for the identity
/// checks; same entropy sign convention as EmpiricalTable.  Cells are indexed
/// with variable 0 varying fastest (index = sum coord[v] * stride[v]).
struct Distribution {
    std::vector<int> arity;
    std::vector<double> probs;

    int n() const { return static_cast<int>(arity.size()); }
    long cells() const;
    void validate() const;

    double entropy(VertexSet s) const;
    double interaction_information(VertexSet s) const;
    std::vector<double> marginal(VertexSet s) const;
};

/// <u, f> = sum_A u(A) f(A).
double inner_product(const Imset& u, const std::function<double(VertexSet)>& f);
/// <c_G, f> over the 0/1 characteristic vector: sum over S(G).
double inner_product_characteristic(const Admg& g, const std::function<double(VertexSet)>& f);

struct ScoreReport {
    double score = 0;   // -2N <c_G, I-hat> + d log N
    double inner = 0;   // <c_G, I-hat>
    long dimension = 0; // |S(G)|
    long samples = 0;
};

/// Requires graph labels and table columns to name the same variables.
ScoreReport imset_score(const Admg& g, const EmpiricalTable& t);

/// |H(X_V) - <c_G, I>| for an exact distribution; zero (up to rounding) when
/// p is Markov to g.
double entropy_identity_residual(const Admg& g, const Distribution& p);

} // namespace magset
