#include "magset/bidirected.hpp"

#include <algorithm>
#include <map>

namespace magset {

RootedPartition block_partition(const UndirectedGraph& dual, int v, VertexSet processed) {
    if (!processed.contains(v))
        throw std::invalid_argument("block_partition: v must lie in the processed set");
    RootedPartition p;
    p.vertex = v;
    p.context = processed;

    VertexSet nb = dual.neighbours(v) & processed;
    std::map<VertexSet, VertexSet> by_outside;  // N -> block
    for (int w : nb) {
        VertexSet outside = (dual.neighbours(w) & processed) - nb - VertexSet::single(v);
        by_outside[outside] |= VertexSet::single(w);
    }

    // ascending by N; the chain condition makes this the unique ordering
    std::vector<std::pair<VertexSet, VertexSet>> items(by_outside.begin(), by_outside.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    for (const auto& [n_set, block] : items) {
        p.blocks.push_back(block);
        p.outside_nb.push_back(n_set);
    }

    p.valid = true;
    for (std::size_t j = 1; j < p.outside_nb.size() && p.valid; ++j)
        if (!p.outside_nb[j - 1].subset_of(p.outside_nb[j])) {
            p.valid = false;
            p.violated = "chain";
        }

    std::size_t m = p.blocks.size();
    p.connected.assign(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m && p.valid; ++a)
        for (std::size_t b = a + 1; b < m && p.valid; ++b) {
            bool any = false, all = true;
            for (int x : p.blocks[a])
                for (int y : p.blocks[b]) {
                    bool e = dual.has_edge(x, y);
                    any = any || e;
                    all = all && e;
                }
            if (any && !all) {
                p.valid = false;
                p.violated = "cross-block";
            }
            p.connected[a][b] = p.connected[b][a] = any;
        }
    return p;
}

namespace {

bool build_root_tree(const RootedPartition& p, int lo, int hi, RootTree& out) {
    out.lo = lo;
    out.hi = hi;
    if (hi < lo) return true;  // empty range
    int found = -1;
    for (int j = lo; j <= hi; ++j) {
        bool ok = true;
        // root and every upper block fully connected to every lower block
        for (int t = lo; t < j && ok; ++t) {
            if (!p.connected[j][t]) ok = false;
            for (int h = j + 1; h <= hi && ok; ++h)
                if (!p.connected[h][t]) ok = false;
        }
        // upper blocks disconnected from the root
        for (int h = j + 1; h <= hi && ok; ++h)
            if (p.connected[h][j]) ok = false;
        if (!ok) continue;
        RootTree high, low;
        if (!build_root_tree(p, j + 1, hi, high) || !build_root_tree(p, lo, j - 1, low)) continue;
        if (found >= 0)
            throw std::logic_error("is_rooted: two admissible roots in one block range");
        found = j;
        out.root = j;
        out.high = std::make_unique<RootTree>(std::move(high));
        out.low = std::make_unique<RootTree>(std::move(low));
    }
    return found >= 0;
}

} // namespace

std::optional<RootTree> is_rooted(const RootedPartition& p) {
    if (!p.valid) throw std::invalid_argument("is_rooted: partition does not satisfy the conditions");
    RootTree t;
    if (!build_root_tree(p, 0, static_cast<int>(p.blocks.size()) - 1, t)) return std::nullopt;
    return t;
}

namespace {

bool vertex_ok(const UndirectedGraph& dual, int v, VertexSet processed) {
    RootedPartition p = block_partition(dual, v, processed);
    if (!p.valid) return false;
    return is_rooted(p).has_value();
}

} // namespace

std::optional<RootedWitness> rooted_condition(const Admg& g, bool exhaustive) {
    UndirectedGraph dual = g.dual_graph();
    int n = g.n();

    std::vector<int> order;
    if (exhaustive) {
        // plain backtracking over orders
        std::function<bool(VertexSet)> rec = [&](VertexSet placed) {
            if (placed == g.vertices()) return true;
            for (int v : g.vertices() - placed) {
                if (!vertex_ok(dual, v, placed.with(v))) continue;
                order.push_back(v);
                if (rec(placed.with(v))) return true;
                order.pop_back();
            }
            return false;
        };
        if (!rec(VertexSet())) return std::nullopt;
    } else {
        // a prefix's validity depends on its vertex set only, so search
        // subsets with memoised failures
        std::vector<char> dead(std::size_t(1) << n, 0);
        std::function<bool(VertexSet)> rec = [&](VertexSet placed) {
            if (placed == g.vertices()) return true;
            if (dead[placed.bits()]) return false;
            for (int v : g.vertices() - placed) {
                if (!vertex_ok(dual, v, placed.with(v))) continue;
                order.push_back(v);
                if (rec(placed.with(v))) return true;
                order.pop_back();
            }
            dead[placed.bits()] = 1;
            return false;
        };
        if (!rec(VertexSet())) return std::nullopt;
    }

    RootedWitness w;
    w.order = order;
    VertexSet placed;
    for (int v : order) {
        placed |= VertexSet::single(v);
        w.partitions.push_back(block_partition(dual, v, placed));
    }
    return w;
}

std::optional<RootedWitness> rooted_witness_for_order(const Admg& g,
                                                      const std::vector<int>& order) {
    UndirectedGraph dual = g.dual_graph();
    if (static_cast<int>(order.size()) != g.n())
        throw std::invalid_argument("rooted_witness_for_order: order length mismatch");
    RootedWitness w;
    w.order = order;
    VertexSet placed;
    for (int v : order) {
        placed |= VertexSet::single(v);
        if (!vertex_ok(dual, v, placed)) return std::nullopt;
        w.partitions.push_back(block_partition(dual, v, placed));
    }
    return w;
}

namespace {

// block ranges rooted by each block, from the recursive decomposition
void collect_ranges(const RootTree& t, std::vector<std::pair<int, int>>& range_of) {
    if (t.hi < t.lo) return;
    range_of[t.root] = {t.lo, t.hi};
    collect_ranges(*t.high, range_of);
    collect_ranges(*t.low, range_of);
}

} // namespace

IndependenceList rooted_decomposition(const Admg& g, const RootedWitness& witness) {
    std::vector<IndependenceStatement> items;
    for (std::size_t pos = 0; pos < witness.order.size(); ++pos) {
        const RootedPartition& p = witness.partitions[pos];
        int v = p.vertex;
        if (p.blocks.empty()) continue;
        auto tree = is_rooted(p);
        if (!tree) throw std::invalid_argument("rooted_decomposition: witness prefix is not rooted");
        std::vector<std::pair<int, int>> range_of(p.blocks.size(), {-1, -1});
        collect_ranges(*tree, range_of);

        for (std::size_t j = 0; j < p.blocks.size(); ++j) {
            auto [lo, hi] = range_of[j];
            VertexSet cond = p.outside_nb[j];
            for (int t = lo; t <= hi; ++t)
                if (t != static_cast<int>(j)) cond |= p.blocks[t];  // H^j and L^j
            for (int t = 0; t < lo; ++t)
                if (p.connected[j][t]) cond |= p.blocks[t];  // T^j
            items.push_back({CITriple(VertexSet::single(v), p.blocks[j], cond),
                             "vertex " + g.label(v) + ", block " +
                                 set_to_text(p.blocks[j], g.labels())});
        }
    }

    IndependenceList list(g, std::move(items));

    if (!(list.semi_elementary_sum(g.n()) == standard_imset(g)))
        throw std::logic_error("rooted decomposition does not sum to the standard imset");

    // constrained sets must partition the non-parametrizing nonempty sets
    auto pset = parametrizing_sets(g);
    std::map<VertexSet, int> covered;
    for (const auto& it : list.items())
        for (VertexSet s : constrained_sets(it.triple)) covered[s] += 1;
    for (const auto& [s, c] : covered)
        if (c != 1)
            throw std::logic_error("rooted decomposition: constrained set covered twice");
    for_each_subset(g.vertices(), [&](VertexSet s) {
        if (s.empty()) return;
        bool in_pset = pset.contains(s);
        bool is_covered = covered.count(s) > 0;
        if (in_pset == is_covered)
            throw std::logic_error("rooted decomposition: covering mismatch at " +
                                   set_to_text(s, g.labels()));
    });
    return list;
}

std::vector<std::pair<std::string, std::vector<std::pair<int, int>>>> forbidden_patterns(int max_cycle) {
    using E = std::vector<std::pair<int, int>>;
    std::vector<std::pair<std::string, E>> pats;
    // (a): triangle whose edges each carry a pendant common neighbour
    pats.push_back({"a", E{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {1, 5}, {2, 5}, {2, 4}, {0, 4}}});
    // (b): chordless k-cycles, k >= 5
    for (int k = 5; k <= max_cycle; ++k) {
        E cyc;
        for (int i = 0; i < k; ++i) cyc.push_back({i, (i + 1) % k});
        pats.push_back({"b" + std::to_string(k), cyc});
    }
    // (c): dual of the 6-chain (complement of the path 0-1-2-3-4-5)
    pats.push_back({"c", E{{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 5}}});
    // (d)-(j): a chordless 4-cycle 1-2-3-4 (0-indexed 1,2,3,4) with a fifth
    // vertex 0 on two cycle vertices and a sixth in varying positions
    pats.push_back({"d", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 1}, {1, 5}, {4, 5}}});
    pats.push_back({"e", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 1}, {3, 5}, {4, 5}}});
    pats.push_back({"f", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 5}, {2, 5}}});
    pats.push_back({"g", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 1}, {4, 5}}});
    pats.push_back({"h", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 1}, {0, 5}}});
    pats.push_back({"i", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {0, 2}, {0, 1}, {1, 5}, {2, 5}}});
    pats.push_back({"j", E{{1, 2}, {1, 4}, {3, 4}, {2, 3}, {1, 0}, {3, 0}, {2, 5}, {4, 5}}});
    return pats;
}

namespace {

// induced subgraph isomorphism: map pattern vertices injectively so that
// adjacency and non-adjacency are both preserved
std::optional<std::vector<int>> find_induced(const UndirectedGraph& host,
                                             const std::vector<VertexSet>& pat_adj) {
    int k = static_cast<int>(pat_adj.size());
    if (k > host.n) return std::nullopt;
    std::vector<int> map(k, -1);
    VertexSet used;
    std::function<bool(int)> rec = [&](int pv) {
        if (pv == k) return true;
        for (int hv = 0; hv < host.n; ++hv) {
            if (used.contains(hv)) continue;
            if (host.neighbours(hv).size() < pat_adj[pv].size()) continue;
            bool ok = true;
            for (int prev = 0; prev < pv && ok; ++prev) {
                bool pe = pat_adj[pv].contains(prev);
                bool he = host.has_edge(hv, map[prev]);
                if (pe != he) ok = false;
            }
            if (!ok) continue;
            map[pv] = hv;
            used |= VertexSet::single(hv);
            if (rec(pv + 1)) return true;
            used -= VertexSet::single(hv);
            map[pv] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return map;
}

} // namespace

std::vector<ForbiddenHit> forbidden_scan(const Admg& g) {
    UndirectedGraph dual = g.dual_graph();
    std::vector<ForbiddenHit> hits;
    for (const auto& [name, edges] : forbidden_patterns(dual.n)) {
        int k = 0;
        for (auto [a, b] : edges) k = std::max({k, a + 1, b + 1});
        std::vector<VertexSet> adj(k);
        for (auto [a, b] : edges) {
            adj[a] |= VertexSet::single(b);
            adj[b] |= VertexSet::single(a);
        }
        if (auto emb = find_induced(dual, adj)) hits.push_back({name, *emb});
    }
    return hits;
}

} // namespace magset
