#include "magset/markov.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace magset {

IndependenceList::IndependenceList(const Admg& g, std::vector<IndependenceStatement> items)
    : items_(std::move(items)) {
    for (const auto& it : items_)
        if (!g.m_separated(it.triple))
            throw std::logic_error("independence list statement fails m-separation (" +
                                   it.provenance + ")");
}

bool IndependenceList::contains(const CITriple& t) const {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const IndependenceStatement& s) { return s.triple == t; });
}

Imset IndependenceList::semi_elementary_sum(int n) const {
    Imset out(n);
    for (const auto& it : items_) out += semi_elementary(n, it.triple);
    return out;
}

std::vector<CITriple> all_canonical_triples(int n) {
    std::vector<CITriple> out;
    std::function<void(int, VertexSet, VertexSet, VertexSet)> rec = [&](int v, VertexSet a,
                                                                        VertexSet b, VertexSet c) {
        if (v == n) {
            if (!a.empty() && !b.empty() && a <= b) out.push_back(CITriple(a, b, c));
            return;
        }
        rec(v + 1, a, b, c);
        rec(v + 1, a.with(v), b, c);
        rec(v + 1, a, b.with(v), c);
        rec(v + 1, a, b, c.with(v));
    };
    rec(0, VertexSet(), VertexSet(), VertexSet());
    std::sort(out.begin(), out.end(), [](const CITriple& x, const CITriple& y) {
        if (x.all().size() != y.all().size()) return x.all().size() < y.all().size();
        return x < y;
    });
    return out;
}

IndependenceList ordered_local_markov(const Admg& g, const std::vector<int>& order) {
    if (!g.is_topological(order))
        throw std::invalid_argument("ordered_local_markov: order is not topological");
    std::vector<IndependenceStatement> items;
    std::vector<CITriple> seen;
    for_each_subset(g.vertices(), [&](VertexSet a) {
        if (a.empty() || g.ancestors(a) != a) return;
        for (int v : a) {
            if (g.children(v).intersects(a)) continue;
            VertexSet mb = markov_blanket(g, v, a);
            VertexSet rest = a - mb - VertexSet::single(v);
            if (rest.empty()) continue;
            CITriple t(VertexSet::single(v), rest, mb);
            if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
            seen.push_back(t);
            std::ostringstream prov;
            prov << "ancestral set " << set_to_text(a, g.labels()) << ", vertex " << g.label(v);
            items.push_back({t, prov.str()});
        }
    });
    return IndependenceList(g, std::move(items));
}

std::vector<CITriple> graph_model(const Admg& g, ModelScope scope) {
    std::vector<CITriple> out;
    if (scope == ModelScope::Elementary) {
        for (const auto& t : elementary_basis(g.n()))
            if (g.m_separated(t)) out.push_back(t);
        std::sort(out.begin(), out.end());
    } else {
        for (const auto& t : all_canonical_triples(g.n()))
            if (g.m_separated(t)) out.push_back(t);
    }
    return out;
}

bool markov_equivalent(const Admg& g1, const Admg& g2) {
    if (g1.n() != g2.n())
        throw std::invalid_argument("markov_equivalent: graphs must share a vertex set");
    return parametrizing_sets(g1).sets == parametrizing_sets(g2).sets;
}

IndependenceList simple_decomposition(const Admg& g, const std::vector<int>& order) {
    if (!is_simple(g)) throw std::invalid_argument("simple_decomposition requires a simple MAG");
    if (!g.is_topological(order))
        throw std::invalid_argument("simple_decomposition: order is not topological");

    std::vector<IndependenceStatement> items;
    VertexSet pred;  // vertices before i in the order
    for (int i : order) {
        VertexSet self = VertexSet::single(i);
        std::vector<int> sibs;
        for (int j : g.siblings(i) & pred) sibs.push_back(j);
        std::sort(sibs.begin(), sibs.end(), [&](int x, int y) {
            return std::find(order.begin(), order.end(), x) < std::find(order.begin(), order.end(), y);
        });

        auto emit = [&](VertexSet a, VertexSet c, const std::string& why) {
            if (a.empty()) return;
            items.push_back({CITriple(self, a, c), "vertex " + g.label(i) + ", " + why});
        };

        if (sibs.empty()) {
            emit(pred - g.parents(i), g.parents(i), "parents");
        } else {
            auto tail_of = [&](int j) { return tail_of_head(g, VertexSet({i, j})); };
            int k = static_cast<int>(sibs.size());
            VertexSet top = tail_of(sibs[k - 1]).with(sibs[k - 1]);
            emit(pred - top, top, "head {" + g.label(i) + "," + g.label(sibs[k - 1]) + "}");
            for (int l = k - 2; l >= 0; --l) {
                VertexSet upper = tail_of(sibs[l + 1]);
                VertexSet cond = tail_of(sibs[l]).with(sibs[l]);
                emit(upper - cond, cond, "head {" + g.label(i) + "," + g.label(sibs[l]) + "}");
            }
            emit(tail_of(sibs[0]) - g.parents(i), g.parents(i), "parents");
        }
        pred |= self;
    }

    IndependenceList list(g, std::move(items));
    if (!(list.semi_elementary_sum(g.n()) == standard_imset(g)))
        throw std::logic_error("simple decomposition does not sum to the standard imset");
    return list;
}

IndependenceList simple_decomposition(const Admg& g) {
    return simple_decomposition(g, g.canonical_topological_order());
}

std::string Verdict::to_json() const {
    std::ostringstream os;
    os << "{\"combinatorial\": " << (combinatorial ? "true" : "false");
    os << ", \"structural\": ";
    if (structural_k)
        os << *structural_k;
    else
        os << "false";
    os << ", \"markovian\": " << (markovian ? "true" : "false");
    os << ", \"faithful\": " << (faithful ? "true" : "false");
    os << ", \"perfectly_markovian\": " << (perfectly_markovian ? "true" : "false") << "}";
    return os.str();
}

Verdict verdict(const Admg& g, const VerdictOptions& opt) {
    Verdict v;
    Imset u = standard_imset(g);
    ImsetModelOracle oracle(u);
    if (!oracle.structural()) return v;  // model undefined: all flags false

    v.structural_k = oracle.certificate()->k;
    v.combinatorial = (oracle.certificate()->k == 1);

    auto triples = all_canonical_triples(g.n());
    std::vector<CITriple> in_model;
    for (const auto& t : triples)
        if (g.m_separated(t)) in_model.push_back(t);

    v.markovian = true;
    for (const auto& t : in_model) {
        if (oracle.query(t) != Represents::Yes) {
            v.markovian = false;
            break;
        }
    }

    // Faithfulness holds whenever u_G is structural: the signed decomposition
    // writes u_G from m-separations of the graph only, so the represented
    // triples form a submodel of the graph's model.
    v.faithful = true;
    if (opt.paranoid_faithful) {
        for (const auto& t : triples) {
            if (!g.m_separated(t) && oracle.query(t) == Represents::Yes) {
                v.faithful = false;
                break;
            }
        }
    }
    v.perfectly_markovian = v.markovian && v.faithful;
    return v;
}

} // namespace magset
