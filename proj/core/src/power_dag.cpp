#include "magset/power_dag.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace magset {

namespace {

std::vector<int> positions(const std::vector<int>& order) {
    std::vector<int> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<int>(p);
    return pos;
}

int order_max(VertexSet s, const std::vector<int>& pos) {
    int best = -1, best_pos = -1;
    for (int v : s)
        if (pos[v] > best_pos) {
            best_pos = pos[v];
            best = v;
        }
    return best;
}

VertexSet head_tail(const HeadRecord& h) { return h.head | h.tail; }

} // namespace

std::optional<CITriple> MarginalizationEdge::statement(int anchor) const {
    VertexSet hpt = head_tail(to);
    VertexSet a = head_tail(from) - (hpt | k_min);
    if (a.empty()) return std::nullopt;
    return CITriple(VertexSet::single(anchor), a, hpt.without(anchor));
}

std::vector<VertexSet> MarginalizationEdge::all_k() const {
    std::vector<VertexSet> out;
    for_each_k([&](VertexSet k) { out.push_back(k); });
    std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

const HeadRecord* PowerDagComponent::node(VertexSet head) const {
    for (const auto& h : nodes)
        if (h.head == head) return &h;
    return nullptr;
}

std::vector<const MarginalizationEdge*> PowerDagComponent::in_edges(VertexSet head) const {
    std::vector<const MarginalizationEdge*> out;
    for (const auto& e : edges)
        if (e.to.head == head) out.push_back(&e);
    return out;
}

HeadRecord marginalize_step(const Admg& g, const HeadRecord& h, VertexSet k, int anchor) {
    if (k.empty() || !k.subset_of(h.head.without(anchor)))
        throw std::invalid_argument("marginalize_step: K must be nonempty and inside H \\ {anchor}");
    VertexSet mask = g.ancestors(h.head) - k;
    VertexSet dis = g.district_in(mask, anchor);
    VertexSet barren = g.barren_in(mask, dis);
    return head_record(g, barren);
}

VertexSet ceiling(const Admg& g, VertexSet w) {
    VertexSet out;
    for (int v : w)
        if ((g.ancestors(v) & w) == VertexSet::single(v)) out |= VertexSet::single(v);
    return out;
}

VertexSet hamlet(const Admg& g, VertexSet head) {
    VertexSet an = g.ancestors(head);
    VertexSet dis = g.district_in(an, head);
    return g.siblings(dis) - dis;
}

std::optional<VertexSet> minimal_marginalization_set(const Admg& g, const HeadRecord& from,
                                                     const HeadRecord& to, int anchor) {
    if (from.head == to.head) return std::nullopt;
    VertexSet k = from.head & ceiling(g, hamlet(g, to.head));
    if (k.empty() || k.contains(anchor)) return std::nullopt;
    if (marginalize_step(g, from, k, anchor).head != to.head) return std::nullopt;
    return k;
}

HeadRecord maximal_parent_head(const Admg& g, const std::vector<HeadRecord>& parents, int anchor) {
    if (parents.empty())
        throw std::invalid_argument("maximal_parent_head: empty parent set");
    (void)anchor;
    // the maximum under an(H)-inclusion; barren of pairwise unions stays a
    // parent, so a maximum exists
    const HeadRecord* best = &parents[0];
    VertexSet best_an = g.ancestors(best->head);
    for (const auto& h : parents) {
        VertexSet an = g.ancestors(h.head);
        if (best_an.subset_of(an)) {
            best = &h;
            best_an = an;
        }
    }
    for (const auto& h : parents)
        if (!g.ancestors(h.head).subset_of(best_an))
            throw std::logic_error("maximal_parent_head: parent set has no maximum");
    return *best;
}

namespace {

PowerDagComponent component_shell(const Admg& g, int anchor, const std::vector<int>& order) {
    if (!g.is_topological(order))
        throw std::invalid_argument("power dag: order is not topological");
    auto pos = positions(order);
    PowerDagComponent pd;
    pd.anchor = anchor;
    pd.order = order;
    for (const auto& h : enumerate_heads(g))
        if (order_max(h.head, pos) == anchor) pd.nodes.push_back(h);

    VertexSet prefix;
    for (int v : order) {
        prefix |= VertexSet::single(v);
        if (v == anchor) break;
    }
    pd.maximal_head = g.barren_in(prefix, g.district_in(prefix, anchor));
    if (!pd.node(pd.maximal_head))
        throw std::logic_error("power dag: maximal head is not among the anchor's heads");
    return pd;
}

} // namespace

PowerDagComponent complete_power_dag(const Admg& g, int anchor, const std::vector<int>& order) {
    PowerDagComponent pd = component_shell(g, anchor, order);
    for (const auto& from : pd.nodes)
        for (const auto& to : pd.nodes) {
            if (from.head == to.head) continue;
            if (auto k = minimal_marginalization_set(g, from, to, anchor)) {
                MarginalizationEdge e{from, to, *k, from.head - (to.head | *k)};
                pd.edges.push_back(e);
            }
        }
    return pd;
}

namespace {

// Heads of one component sorted so that partial-order-larger heads (an(H)
// superset) come first; numeric tie-break.
std::vector<HeadRecord> reverse_partial_order(const Admg& g, const std::vector<HeadRecord>& nodes) {
    std::vector<HeadRecord> sorted = nodes;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const HeadRecord& a, const HeadRecord& b) {
        VertexSet an_a = g.ancestors(a.head), an_b = g.ancestors(b.head);
        if (an_a != an_b) {
            if (an_b.subset_of(an_a)) return true;
            if (an_a.subset_of(an_b)) return false;
            return an_a.size() > an_b.size() || (an_a.size() == an_b.size() && an_a > an_b);
        }
        return a.head > b.head;
    });
    return sorted;
}

} // namespace

PowerDagComponent refined_power_dag(const Admg& g, int anchor, const std::vector<int>& order) {
    PowerDagComponent pd = component_shell(g, anchor, order);
    pd.refined = true;
    auto pos = positions(order);

    const long INF = std::numeric_limits<long>::max() / 2;
    std::map<VertexSet, long> sd, mark;
    for (const auto& h : pd.nodes) {
        sd[h.head] = INF;
        mark[h.head] = INF;
    }
    sd[pd.maximal_head] = 0;
    mark[pd.maximal_head] = pos[anchor];

    for (const auto& from : reverse_partial_order(g, pd.nodes)) {
        long sd_h = sd[from.head];
        std::vector<int> ks = (from.head.without(anchor)).elements();
        std::sort(ks.begin(), ks.end(), [&](int a, int b) { return pos[a] < pos[b]; });
        for (int k : ks) {
            if (pos[k] >= mark[from.head]) continue;
            HeadRecord to = marginalize_step(g, from, VertexSet::single(k), anchor);
            // keep only the in-edge on a shortest path from the maximal head;
            // on ties the earlier proposal stays, and heads larger in the
            // partial order are processed first, so the maximal parent wins
            if (sd[to.head] <= sd_h + 1) continue;
            pd.edges.erase(std::remove_if(pd.edges.begin(), pd.edges.end(),
                                          [&](const MarginalizationEdge& e) {
                                              return e.to.head == to.head;
                                          }),
                           pd.edges.end());
            pd.edges.push_back(MarginalizationEdge{from, to, VertexSet::single(k),
                                                   from.head - (to.head | VertexSet::single(k))});
            sd[to.head] = sd_h + 1;
            mark[to.head] = pos[k];
        }
    }
    return pd;
}

PowerDagComponent refined_power_dag_declarative(const Admg& g, int anchor,
                                                const std::vector<int>& order) {
    PowerDagComponent pd = component_shell(g, anchor, order);
    pd.refined = true;
    auto pos = positions(order);

    for (const auto& to : pd.nodes) {
        if (to.head == pd.maximal_head) continue;
        VertexSet candidates = ceiling(g, hamlet(g, to.head));
        int k = -1;
        for (int c : candidates)
            if (k < 0 || pos[c] < pos[k]) k = c;
        if (k < 0) throw std::logic_error("refined power dag: head has no marginalization vertex");

        std::vector<HeadRecord> parents;
        for (const auto& from : pd.nodes) {
            if (from.head == to.head || !from.head.contains(k)) continue;
            if (marginalize_step(g, from, VertexSet::single(k), anchor).head == to.head)
                parents.push_back(from);
        }
        if (parents.empty())
            throw std::logic_error("refined power dag: head has no parent via its minimal vertex");
        HeadRecord best = parents[0];
        try {
            best = maximal_parent_head(g, parents, anchor);
        } catch (const std::logic_error&) {
            pd.warnings.push_back("no unique maximal parent; numeric tie-break used");
            for (const auto& h : parents)
                if (h.head > best.head) best = h;
        }
        pd.edges.push_back(MarginalizationEdge{best, to, VertexSet::single(k),
                                               best.head - (to.head | VertexSet::single(k))});
    }
    return pd;
}

IndependenceList markov_list(const Admg& g, PowerDagMode mode, const std::vector<int>& order) {
    if (!g.is_topological(order))
        throw std::invalid_argument("markov_list: order is not topological");
    std::vector<IndependenceStatement> items;
    VertexSet prefix;
    for (int i : order) {
        prefix |= VertexSet::single(i);
        VertexSet mb = markov_blanket(g, i, prefix);
        VertexSet rest = prefix - mb - VertexSet::single(i);
        if (!rest.empty())
            items.push_back({CITriple(VertexSet::single(i), rest, mb),
                             "blanket of " + g.label(i)});
        PowerDagComponent pd = mode == PowerDagMode::Complete
                                   ? complete_power_dag(g, i, order)
                                   : refined_power_dag(g, i, order);
        for (const auto& e : pd.edges)
            if (auto t = e.statement(i))
                items.push_back({*t, "edge " + set_to_text(e.from.head, g.labels()) + " -> " +
                                         set_to_text(e.to.head, g.labels())});
    }
    return IndependenceList(g, std::move(items));
}

Imset SignedDecomposition::sum(int n) const {
    Imset out(n);
    for (const auto& t : terms) out += mpz_class(t.coefficient) * semi_elementary(n, t.triple);
    return out;
}

SignedDecomposition decompose_standard_imset(const Admg& g, const std::vector<int>& order) {
    if (!g.is_topological(order))
        throw std::invalid_argument("decompose_standard_imset: order is not topological");
    SignedDecomposition out;
    Imset total(g.n());

    VertexSet prefix;
    for (int i : order) {
        prefix |= VertexSet::single(i);
        VertexSet mb = markov_blanket(g, i, prefix);
        VertexSet rest = prefix - mb - VertexSet::single(i);
        if (!rest.empty()) {
            CITriple t(VertexSet::single(i), rest, mb);
            out.terms.push_back({1, t, "blanket of " + g.label(i)});
            total += semi_elementary(g.n(), t);
        }

        PowerDagComponent pd = complete_power_dag(g, i, order);
        std::map<VertexSet, long> incoming;  // signed coefficient sum per target head
        for (const auto& h : pd.nodes)
            if (h.head != pd.maximal_head) incoming[h.head] = 0;

        for (const auto& from : pd.nodes) {
            for_each_subset(from.head.without(i), [&](VertexSet k) {
                if (k.empty()) return;
                HeadRecord to = marginalize_step(g, from, k, i);
                int coeff = (k.size() % 2 == 1) ? 1 : -1;  // (-1)^{|K|+1}
                incoming[to.head] += coeff;

                VertexSet hpt = head_tail(to);
                VertexSet a = head_tail(from) - (hpt | k);
                if (!a.empty()) {
                    CITriple t(VertexSet::single(i), a, hpt.without(i));
                    out.terms.push_back({coeff, t,
                                         set_to_text(from.head, g.labels()) + " ->" +
                                             set_to_text(k, g.labels()) + " " +
                                             set_to_text(to.head, g.labels())});
                    total += mpz_class(coeff) * semi_elementary(g.n(), t);
                } else {
                    // vacuous statement: the four identifier terms cancel
                    Imset zero = delta(g.n(), head_tail(from) - k) -
                                 delta(g.n(), (head_tail(from) - k).without(i)) -
                                 delta(g.n(), hpt) + delta(g.n(), hpt.without(i));
                    if (!zero.is_zero())
                        throw std::logic_error("decompose: vacuous edge term does not cancel");
                }
            });
        }
        for (const auto& [head, coeff] : incoming)
            if (coeff != 1)
                throw std::logic_error("decompose: incoming coefficients of head " +
                                       set_to_text(head, g.labels()) + " sum to " +
                                       std::to_string(coeff) + ", expected 1");
    }

    if (!(total == standard_imset(g)))
        throw std::logic_error("decompose: signed sum does not reproduce the standard imset");
    return out;
}

DistrictFactorReport district_factor_check(const Admg& g) {
    DistrictFactorReport rep;
    rep.whole = verdict(g).perfectly_markovian;
    rep.factored = true;

    auto canon = g.canonical_topological_order();
    std::vector<int> pos = positions(canon);

    for (VertexSet d : g.districts()) {
        VertexSet w = d | g.parents(d);
        auto ind = g.induced(w);
        // fill missing edges between parents, directed along the order
        std::vector<std::pair<int, int>> dir = ind.graph.directed_edges();
        auto bid = ind.graph.bidirected_edges();
        VertexSet par_new;
        for (std::size_t newid = 0; newid < ind.orig_ids.size(); ++newid)
            if (!d.contains(ind.orig_ids[newid])) par_new |= VertexSet::single(static_cast<int>(newid));
        for (int a : par_new)
            for (int b : par_new) {
                if (a >= b || ind.graph.adjacent(a, b)) continue;
                if (pos[ind.orig_ids[a]] < pos[ind.orig_ids[b]])
                    dir.push_back({a, b});
                else
                    dir.push_back({b, a});
            }
        Admg filled(ind.graph.n(), dir, bid, ind.graph.labels());
        if (!filled.is_mag())
            throw std::logic_error("district_factor_check: filled district graph is not a MAG");
        bool pm = verdict(filled).perfectly_markovian;
        rep.per_district.push_back({d, pm});
        rep.factored = rep.factored && pm;
    }
    rep.consistent = (rep.whole == rep.factored);
    return rep;
}

std::string power_dag_to_dot(const Admg& g, const PowerDagComponent& pd) {
    std::ostringstream os;
    os << "digraph powerdag {\n";
    for (const auto& h : pd.nodes)
        os << "  \"" << set_to_text(h.head, g.labels()) << "\";\n";
    for (const auto& e : pd.edges) {
        os << "  \"" << set_to_text(e.from.head, g.labels()) << "\" -> \""
           << set_to_text(e.to.head, g.labels()) << "\" [label=\"";
        bool first = true;
        for (VertexSet k : e.all_k()) {
            if (!first) os << ",";
            os << set_to_text(k, g.labels());
            first = false;
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace magset
