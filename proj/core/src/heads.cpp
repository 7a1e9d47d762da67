#include "magset/heads.hpp"

#include <algorithm>
#include <stdexcept>

namespace magset {

VertexSet barren(const Admg& g, VertexSet w) {
    VertexSet out;
    for (int v : w)
        if ((g.descendants(v) & w) == VertexSet::single(v)) out |= VertexSet::single(v);
    return out;
}

bool is_head(const Admg& g, VertexSet h) {
    if (h.empty()) return false;
    if (barren(g, h) != h) return false;
    VertexSet an = g.ancestors(h);
    return h.subset_of(g.district_in(an, h.min()));
}

VertexSet tail_of_head(const Admg& g, VertexSet h) {
    VertexSet an = g.ancestors(h);
    VertexSet dis = g.district_in(an, h.min());
    return (dis - h) | g.parents(dis);
}

HeadRecord head_record(const Admg& g, VertexSet h) {
    return HeadRecord{h, tail_of_head(g, h), h.empty() ? -1 : h.max()};
}

std::vector<HeadRecord> enumerate_heads(const Admg& g) {
    std::vector<HeadRecord> out;
    for_each_subset(g.vertices(), [&](VertexSet h) {
        if (!h.empty() && is_head(g, h)) out.push_back(head_record(g, h));
    });
    std::sort(out.begin(), out.end());
    return out;
}

ParametrizingSets parametrizing_sets(const Admg& g) {
    ParametrizingSets out;
    for (const auto& hr : enumerate_heads(g)) {
        for_each_subset(hr.tail, [&](VertexSet a) {
            VertexSet s = hr.head | a;
            auto [it, fresh] = out.generating_head.insert({s, hr.head});
            if (!fresh)
                throw std::logic_error("parametrizing set with two generating heads");
        });
    }
    out.sets.reserve(out.generating_head.size());
    for (const auto& [s, h] : out.generating_head) out.sets.push_back(s);
    return out;
}

VertexSet markov_blanket(const Admg& g, int v, VertexSet a) {
    if (g.ancestors(a) != a)
        throw std::invalid_argument("markov_blanket: A must be an ancestral set");
    if (!a.contains(v))
        throw std::invalid_argument("markov_blanket: v must lie in A");
    if (g.children(v).intersects(a))
        throw std::invalid_argument("markov_blanket: v must be childless in A");
    VertexSet dis = g.district_in(a, v);
    return ((g.parents(dis) & a) | dis) - VertexSet::single(v);
}

std::vector<VertexSet> constrained_sets(const CITriple& t) {
    std::vector<VertexSet> out;
    for_each_subset(t.A, [&](VertexSet a) {
        if (a.empty()) return;
        for_each_subset(t.B, [&](VertexSet b) {
            if (b.empty()) return;
            for_each_subset(t.C, [&](VertexSet c) { out.push_back(a | b | c); });
        });
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<CITriple> missing_set_witness(const Admg& g, VertexSet s) {
    if (parametrizing_sets(g).contains(s)) return std::nullopt;
    // Search separators of increasing size for a minimal witness.
    VertexSet rest_all = g.vertices() - s;
    std::vector<CITriple> found;
    for (int a : s)
        for (int b : s) {
            if (b <= a) continue;
            VertexSet base = s - VertexSet({a, b});
            for_each_subset(rest_all, [&](VertexSet extra) {
                found.push_back(CITriple(VertexSet::single(a), VertexSet::single(b), base | extra));
            });
        }
    std::sort(found.begin(), found.end(), [](const CITriple& x, const CITriple& y) {
        if (x.C.size() != y.C.size()) return x.C.size() < y.C.size();
        return x < y;
    });
    for (const auto& t : found)
        if (g.m_separated(t)) return t;
    // A MAG always yields a witness here; reachable only on non-maximal input.
    return std::nullopt;
}

bool is_simple(const Admg& g) {
    bool simple = true;
    for_each_subset(g.vertices(), [&](VertexSet h) {
        if (simple && h.size() > 2 && is_head(g, h)) simple = false;
    });
    return simple;
}

} // namespace magset
