#include "magset/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace magset {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

EmpiricalTable EmpiricalTable::from_csv(const std::string& text) {
    EmpiricalTable t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    t.names_ = split_csv_line(line);
    if (t.names_.size() > 20) throw std::runtime_error("csv: too many columns");
    std::vector<std::map<std::string, int>> coding(t.names_.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.names_.size())
            throw std::runtime_error("csv: row with " + std::to_string(cells.size()) +
                                     " cells, expected " + std::to_string(t.names_.size()));
        std::vector<int> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto [it, fresh] = coding[c].insert({cells[c], static_cast<int>(coding[c].size())});
            row[c] = it->second;
        }
        t.codes_.push_back(std::move(row));
    }
    t.n_rows_ = static_cast<long>(t.codes_.size());
    if (t.n_rows_ == 0) throw std::runtime_error("csv: no data rows");
    return t;
}

EmpiricalTable EmpiricalTable::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_csv(ss.str());
}

double EmpiricalTable::entropy(VertexSet s) const {
    if (auto it = entropy_cache_.find(s.bits()); it != entropy_cache_.end()) return it->second;
    double h = 0;
    if (!s.empty()) {
        std::map<std::vector<int>, long> counts;
        std::vector<int> key(s.size());
        for (const auto& row : codes_) {
            int k = 0;
            for (int c : s) key[k++] = row[c];
            counts[key] += 1;
        }
        for (const auto& [k, cnt] : counts) {
            double p = static_cast<double>(cnt) / static_cast<double>(n_rows_);
            h += p * std::log(p);
        }
    }
    entropy_cache_[s.bits()] = h;
    return h;
}

double EmpiricalTable::interaction_information(VertexSet s) const {
    double out = 0;
    int sz = s.size();
    for_each_subset(s, [&](VertexSet t) {
        double sign = ((sz - t.size()) % 2 == 0) ? 1.0 : -1.0;
        out += sign * entropy(t);
    });
    return out;
}

long Distribution::cells() const {
    long c = 1;
    for (int a : arity) c *= a;
    return c;
}

void Distribution::validate() const {
    if (static_cast<long>(probs.size()) != cells())
        throw std::invalid_argument("distribution: probability table size mismatch");
    double s = 0;
    for (double p : probs) {
        if (p < -1e-15) throw std::invalid_argument("distribution: negative probability");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("distribution: probabilities do not sum to one");
}

// Cell indexing: variable 0 varies fastest, i.e. index = sum coord[v] * stride[v]
// with stride[0] = 1 and stride[v] = stride[v-1] * arity[v-1].
std::vector<double> Distribution::marginal(VertexSet s) const {
    std::vector<long> stride(arity.size());
    long acc = 1;
    for (std::size_t v = 0; v < arity.size(); ++v) {
        stride[v] = acc;
        acc *= arity[v];
    }
    std::vector<int> dims;
    long msize = 1;
    std::vector<long> mstride;
    for (int v : s) {
        dims.push_back(v);
        mstride.push_back(msize);
        msize *= arity[v];
    }
    std::vector<double> out(static_cast<std::size_t>(msize), 0.0);
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        long mi = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
            mi += ((static_cast<long>(idx) / stride[dims[k]]) % arity[dims[k]]) * mstride[k];
        out[static_cast<std::size_t>(mi)] += probs[idx];
    }
    return out;
}

double Distribution::entropy(VertexSet s) const {
    if (s.empty()) return 0;
    double h = 0;
    for (double p : marginal(s))
        if (p > 0) h += p * std::log(p);
    return h;
}

double Distribution::interaction_information(VertexSet s) const {
    double out = 0;
    int sz = s.size();
    for_each_subset(s, [&](VertexSet t) {
        double sign = ((sz - t.size()) % 2 == 0) ? 1.0 : -1.0;
        out += sign * entropy(t);
    });
    return out;
}

double inner_product(const Imset& u, const std::function<double(VertexSet)>& f) {
    double out = 0;
    for (const auto& [s, v] : u.entries()) out += v.get_d() * f(s);
    return out;
}

double inner_product_characteristic(const Admg& g, const std::function<double(VertexSet)>& f) {
    double out = 0;
    for (VertexSet s : parametrizing_sets(g).sets) out += f(s);
    return out;
}

ScoreReport imset_score(const Admg& g, const EmpiricalTable& t) {
    if (g.n() != t.columns())
        throw std::invalid_argument("imset_score: graph and table have different variable counts");
    // map graph vertex -> column by label
    std::vector<int> col(g.n(), -1);
    for (int v = 0; v < g.n(); ++v) {
        auto it = std::find(t.names().begin(), t.names().end(), g.label(v));
        if (it == t.names().end())
            throw std::invalid_argument("imset_score: no column named '" + g.label(v) + "'");
        col[v] = static_cast<int>(it - t.names().begin());
    }
    auto remap = [&](VertexSet s) {
        VertexSet out;
        for (int v : s) out |= VertexSet::single(col[v]);
        return out;
    };

    ScoreReport rep;
    rep.samples = t.rows();
    auto pset = parametrizing_sets(g);
    rep.dimension = static_cast<long>(pset.sets.size());
    for (VertexSet s : pset.sets) rep.inner += t.interaction_information(remap(s));
    rep.score = -2.0 * static_cast<double>(rep.samples) * rep.inner +
                static_cast<double>(rep.dimension) * std::log(static_cast<double>(rep.samples));
    return rep;
}

double entropy_identity_residual(const Admg& g, const Distribution& p) {
    if (g.n() != p.n())
        throw std::invalid_argument("entropy_identity_residual: variable count mismatch");
    double lhs = p.entropy(g.vertices());
    double rhs = 0;
    for (VertexSet s : parametrizing_sets(g).sets) rhs += p.interaction_information(s);
    return std::abs(lhs - rhs);
}

} // namespace magset
