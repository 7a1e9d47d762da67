#include "magset/graphoid.hpp"

#include <deque>
#include <stdexcept>

namespace magset {

PartialOrder PartialOrder::from_total(const std::vector<int>& order) {
    PartialOrder po;
    po.n = static_cast<int>(order.size());
    po.strictly_below.assign(po.n, VertexSet());
    VertexSet before;
    for (int v : order) {
        po.strictly_below[v] = before;
        before |= VertexSet::single(v);
    }
    return po;
}

namespace {

// Everything reachable from one triple by decomposition and weak union:
// <A',B'|C u D> for nonempty A' <= A, B' <= B and D inside the dropped part.
// Each element of A (resp. B) is either kept, moved to C, or dropped.
void unary_expansions(const CITriple& t, std::vector<CITriple>& out) {
    for_each_subset(t.A, [&](VertexSet keep_a) {
        if (keep_a.empty()) return;
        for_each_subset(t.B, [&](VertexSet keep_b) {
            if (keep_b.empty()) return;
            VertexSet rest = (t.A - keep_a) | (t.B - keep_b);
            for_each_subset(rest, [&](VertexSet to_c) {
                out.push_back(CITriple(keep_a, keep_b, t.C | to_c).canonical());
            });
        });
    });
}

} // namespace

TripleSet graphoid_closure(const std::vector<CITriple>& start,
                           const GraphoidRules& rules,
                           const PartialOrder* order) {
    if (rules.needs_order() && order == nullptr)
        throw std::invalid_argument("ordered stability rules require a partial order");

    TripleSet set;
    std::deque<CITriple> queue;
    auto push = [&](const CITriple& t) {
        CITriple c = t.canonical();
        if (set.insert(c).second) queue.push_back(c);
    };
    for (const auto& t : start) push(t);

    // Binary rules, t1 paired with t2 in all orientations. Each pattern has
    // the triple (X, Y | Z) as "X independent of Y given Z".
    auto binary = [&](const CITriple& t1, const CITriple& t2) {
        VertexSet xs1[2] = {t1.A, t1.B}, ys1[2] = {t1.B, t1.A};
        VertexSet xs2[2] = {t2.A, t2.B}, ys2[2] = {t2.B, t2.A};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                VertexSet x1 = xs1[i], y1 = ys1[i], z1 = t1.C;
                VertexSet x2 = xs2[j], y2 = ys2[j], z2 = t2.C;
                if (x1 != x2) continue;
                if (rules.semi_graphoids) {
                    // contraction: (X _||_ Y | Z) and (X _||_ W | Y u Z) => X _||_ Y u W | Z
                    if (z2 == (y1 | z1)) push(CITriple(x1, y1 | y2, z1));
                }
                if (rules.composition) {
                    // (X _||_ Y | Z) and (X _||_ W | Z) => X _||_ Y u W | Z
                    if (z1 == z2 && !y1.intersects(y2)) push(CITriple(x1, y1 | y2, z1));
                }
                if (rules.intersection) {
                    // (X _||_ Y | W u Z) and (X _||_ W | Y u Z) => X _||_ Y u W | Z
                    if (y2.subset_of(z1) && y1.subset_of(z2)) {
                        VertexSet z = z1 - y2;
                        if (z == (z2 - y1)) push(CITriple(x1, y1 | y2, z));
                    }
                }
            }
    };

    while (!queue.empty()) {
        CITriple t = queue.front();
        queue.pop_front();

        if (rules.semi_graphoids) {
            std::vector<CITriple> ex;
            unary_expansions(t, ex);
            for (const auto& e : ex) push(e);
        }
        if (rules.ordered_upward && t.A.size() == 1 && t.B.size() == 1) {
            int i = t.A.min(), j = t.B.min();
            for (int k : VertexSet::full(order->n) - t.all())
                if (order->less(k, i) || order->less(k, j))
                    push(CITriple(t.A, t.B, t.C.with(k)));
        }
        if (rules.ordered_downward && t.A.size() == 1 && t.B.size() == 1) {
            int i = t.A.min(), j = t.B.min();
            for (int k : t.C) {
                VertexSet others = t.C.without(k) | t.A | t.B;
                bool ok = true;
                for (int m : others)
                    if (order->less(k, m)) { ok = false; break; }
                if (ok) push(CITriple(t.A, t.B, t.C.without(k)));
            }
        }
        if (rules.semi_graphoids || rules.composition || rules.intersection) {
            // pair the popped triple against the whole set so far
            std::vector<CITriple> snapshot(set.begin(), set.end());
            for (const auto& other : snapshot) {
                binary(t, other);
                binary(other, t);
            }
        }
    }
    return set;
}

} // namespace magset
