#include "magset/imset.hpp"

#include <sstream>
#include <stdexcept>

namespace magset {

Imset& Imset::operator+=(const Imset& o) {
    for (const auto& [s, v] : o.map_) add(s, v);
    return *this;
}
Imset& Imset::operator-=(const Imset& o) {
    for (const auto& [s, v] : o.map_) add(s, -v);
    return *this;
}
Imset& Imset::operator*=(const mpz_class& k) {
    if (k == 0) {
        map_.clear();
        return *this;
    }
    for (auto& [s, v] : map_) v *= k;
    return *this;
}

mpz_class Imset::sum() const {
    mpz_class out = 0;
    for (const auto& [s, v] : map_) out += v;
    return out;
}

mpz_class Imset::weighted_sum() const {
    mpz_class out = 0;
    for (const auto& [s, v] : map_) out += v * s.size();
    return out;
}

std::vector<mpz_class> Imset::dense() const {
    std::vector<mpz_class> out(std::size_t(1) << n_, mpz_class(0));
    for (const auto& [s, v] : map_) out[s.bits()] = v;
    return out;
}

Imset Imset::from_dense(int n, const std::vector<mpz_class>& v) {
    Imset out(n);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.map_[VertexSet(static_cast<std::uint32_t>(i))] = v[i];
    return out;
}

Imset delta(int n, VertexSet s) {
    Imset out(n);
    out.add(s, 1);
    return out;
}

Imset semi_elementary(int n, const CITriple& t) {
    Imset out(n);
    out.add(t.A | t.B | t.C, 1);
    out.add(t.A | t.C, -1);
    out.add(t.B | t.C, -1);
    out.add(t.C, 1);
    return out;
}

Imset characteristic_imset(const Admg& g) {
    Imset c(g.n());
    c.add(VertexSet(), 1);  // boundary value of the transform; empty set is
                            // never a parametrizing set
    for (VertexSet s : parametrizing_sets(g).sets) c.add(s, 1);
    return c;
}

// Superset zeta/Moebius transforms in place, O(2^n * n).
namespace {

void superset_zeta(std::vector<mpz_class>& f, int n) {
    for (int b = 0; b < n; ++b)
        for (std::size_t s = 0; s < f.size(); ++s)
            if (!(s >> b & 1)) f[s] += f[s | (std::size_t(1) << b)];
}

void superset_mobius(std::vector<mpz_class>& f, int n) {
    for (int b = 0; b < n; ++b)
        for (std::size_t s = 0; s < f.size(); ++s)
            if (!(s >> b & 1)) f[s] -= f[s | (std::size_t(1) << b)];
}

} // namespace

Imset standard_from_characteristic(const Imset& c) {
    int n = c.n();
    auto f = c.dense();
    for (auto& v : f) v = 1 - v;  // 1 - c(A)
    superset_mobius(f, n);
    return Imset::from_dense(n, f);
}

Imset characteristic_from_standard(const Imset& u) {
    int n = u.n();
    auto f = u.dense();
    superset_zeta(f, n);
    for (auto& v : f) v = 1 - v;
    return Imset::from_dense(n, f);
}

Imset mobius_roundtrip(const Imset& u) {
    Imset c = characteristic_from_standard(u);
    Imset back = standard_from_characteristic(c);
    if (!(back == u)) throw std::logic_error("mobius transform failed to invert u");
    Imset c2 = characteristic_from_standard(standard_from_characteristic(c));
    if (!(c2 == c)) throw std::logic_error("mobius transform failed to invert c");
    return back;
}

Imset standard_imset(const Admg& g) {
    Imset u = standard_from_characteristic(characteristic_imset(g));

    // Head/tail closed form, computed independently.
    Imset closed(g.n());
    closed.add(g.vertices(), 1);
    closed.add(VertexSet(), -1);
    for (const auto& hr : enumerate_heads(g)) {
        int h_size = hr.head.size();
        for_each_subset(hr.head, [&](VertexSet w) {
            int sign = ((h_size - w.size()) % 2 == 0) ? 1 : -1;
            closed.add(w | hr.tail, -sign);
        });
    }
    if (!(closed == u))
        throw std::logic_error("standard imset: closed form disagrees with the Moebius form");

    if (g.bidirected_edges().empty()) {
        Imset dag(g.n());
        dag.add(g.vertices(), 1);
        dag.add(VertexSet(), -1);
        for (int v = 0; v < g.n(); ++v) {
            dag.add(g.parents(v).with(v), -1);
            dag.add(g.parents(v), 1);
        }
        if (!(dag == u))
            throw std::logic_error("standard imset: DAG parent-set form disagrees");
    }
    return u;
}

std::string set_to_text(VertexSet s, const std::vector<std::string>& labels) {
    std::string out = "{";
    bool first = true;
    for (int v : s) {
        if (!first) out += ",";
        out += labels[v];
        first = false;
    }
    return out + "}";
}

std::string imset_to_text(const Imset& u, const std::vector<std::string>& labels) {
    std::ostringstream os;
    for (const auto& [s, v] : u.entries())
        os << set_to_text(s, labels) << ": " << v << "\n";
    return os.str();
}

Imset imset_from_text(const std::string& text, const std::vector<std::string>& labels) {
    auto find_label = [&](const std::string& lab) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == lab) return static_cast<int>(i);
        throw std::runtime_error("imset text: unknown vertex label '" + lab + "'");
    };
    Imset out(static_cast<int>(labels.size()));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        auto open = line.find('{');
        auto close = line.find('}');
        if (open == std::string::npos || close == std::string::npos || colon == std::string::npos ||
            colon < close)
            throw std::runtime_error("imset text: expected '{...}: value' in '" + line + "'");
        VertexSet s;
        std::string inner = line.substr(open + 1, close - open - 1);
        std::istringstream is(inner);
        std::string item;
        while (std::getline(is, item, ','))
            if (!item.empty()) s |= VertexSet::single(find_label(item));
        mpz_class v(line.substr(colon + 1));
        out.add(s, v);
    }
    return out;
}

} // namespace magset
