// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any executed criterion fails.  Criterion 8 (the n=6
// census) is a long opt-in run, enabled with MAGSET_ACCEPT_N6=1; it resumes
// from MAGSET_ACCEPT_N6_DIR if set.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "magset/bidirected.hpp"
#include "magset/census.hpp"
#include "magset/power_dag.hpp"
#include "magset/scoring.hpp"
#include "support/distributions.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace magset;
using namespace fixtures;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

void skip(int id, const std::string& what, const std::string& why) {
    std::cout << "[SKIP] criterion " << id << ": " << what << " (" << why << ")" << std::endl;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<int> numeric_order(int n) {
    std::vector<int> o(n);
    for (int i = 0; i < n; ++i) o[i] = i;
    return o;
}

void criterion1() {
    Admg g = fig2_dag();
    standard_imset(g);  // warm-up
    auto start = Clock::now();
    Imset u = standard_imset(g);
    double ms = ms_since(start);
    Imset expect = semi_elementary(4, T({4}, {1, 2}, {3})) + semi_elementary(4, T({1}, {2}));
    std::ostringstream d;
    d << ms << " ms";
    report(1, u == expect && ms < 1.0, "fig 2 DAG imset equals u<4,12|3> + u<1,2> in under 1 ms",
           d.str());
}

void criterion2() {
    Imset u = standard_imset(fig4());
    bool ok = u.entries().size() == 7 && u.at(V({1, 2, 3, 4})) == 1 && u.at(V({1, 3, 4})) == -1 &&
              u.at(V({1, 2, 3})) == -1 && u.at(V({1, 3})) == 2 && u.at(V({3})) == -1 &&
              u.at(V({1})) == -1 && u.at(VertexSet()) == 1;
    report(2, ok, "fig 4 imset entries exact, including +2 at {1,3}");
}

void criterion3() {
    Admg g = bidirected_cycle(5);
    Imset u = standard_imset(g);
    bool comb = is_combinatorial(u).has_value();
    bool rep_cond = represents(u, T({1}, {3}, {4})) == Represents::Yes;
    bool rep_marg = represents(u, T({1}, {3})) == Represents::No;
    Verdict v = verdict(g);
    auto deg = degree(u);
    std::ostringstream d;
    d << "degree " << deg.value << ", k=" << deg.k;
    report(3,
           comb && rep_cond && rep_marg && !v.perfectly_markovian && deg.exact && deg.value == 5,
           "5-cycle: combinatorial, <1,3|4> in, <1,3> out, imperfect, degree 5", d.str());
}

void criterion4() {
    Imset u = standard_imset(bidirected_cycle(6));
    mpz_class level4 = 0, level3 = 0;
    for (const auto& [s, val] : u.entries()) {
        if (s.size() == 4) level4 += val;
        if (s.size() == 3) level3 += val;
    }
    bool structural = is_structural(u).has_value();
    std::ostringstream d;
    d << "sum|A|=4: " << level4 << ", sum|A|=3: " << level3;
    report(4, level4 == 9 && level3 == -22 && !structural,
           "6-cycle: level sums 9 and -22, imset not structural", d.str());
}

void criterion5() {
    Imset u = standard_imset(fig6());
    bool not_comb = !is_combinatorial(u).has_value();
    auto cert = is_structural(u);
    bool ok = not_comb && cert && cert->k == 2;
    // the sixteen-term display for 2u
    std::vector<CITriple> display = {
        T({1}, {3}), T({1}, {3}, {5, 6}), T({1}, {5}), T({1}, {5}, {2, 3}),
        T({2}, {4}), T({2}, {4}, {5, 6}), T({2}, {5}, {1, 3}), T({2}, {5}, {4, 6}),
        T({2}, {6}), T({2}, {6}, {3, 5}), T({3}, {5}), T({3}, {5}, {2, 6}),
        T({3}, {6}, {2, 4}), T({3}, {6}, {1, 5}), T({4}, {6}), T({4}, {6}, {2, 3})};
    if (ok) {
        ok = cert->terms.size() == display.size();
        for (const auto& t : display) {
            bool found = false;
            for (const auto& [ct, m] : cert->terms)
                if (ct == t && m == 1) found = true;
            if (!found) ok = false;
        }
        Imset sum = cert->sum(6);
        ok = ok && sum == mpz_class(2) * u;
    }
    report(5, ok, "fig 6: structural k=2, certificate support is the 16-term display");
}

void criterion6() {
    auto start = Clock::now();
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        CensusOptions opt;
        opt.n = n;
        CensusResult r = run_census(opt);
        if (r.imperfect != 0 || r.non_combinatorial != 0) ok = false;
    }
    double secs = ms_since(start) / 1000.0;
    std::ostringstream d;
    d << secs << " s";
    report(6, ok && secs < 60.0, "census n<=4: all classes combinatorial and perfect, under 1 min",
           d.str());
}

void criterion7() {
    auto start = Clock::now();
    CensusOptions opt;
    opt.n = 5;
    opt.connected_only = true;
    CensusResult r = run_census(opt);
    double secs = ms_since(start) / 1000.0;
    bool ok = r.imperfect == 1 && secs < 600.0;
    if (ok)
        for (const auto& row : r.rows)
            if (!row.verdict.perfectly_markovian)
                ok = markov_equivalent(decode_graph(5, row.rep_code), bidirected_cycle(5));
    std::ostringstream d;
    d << r.classes << " classes, " << secs << " s";
    report(7, ok, "census n=5 connected: one imperfect class, the 5-cycle, under 10 min",
           d.str());
}

void criterion8() {
    const char* opt_in = std::getenv("MAGSET_ACCEPT_N6");
    if (opt_in == nullptr || std::string(opt_in) != "1") {
        skip(8, "census n=6 connected (13,303 classes, 55 imperfect, 2 non-combinatorial)",
             "stretch run; set MAGSET_ACCEPT_N6=1 to enable");
        return;
    }
    CensusOptions opt;
    opt.n = 6;
    opt.connected_only = true;
    opt.jobs = 8;
    if (const char* dir = std::getenv("MAGSET_ACCEPT_N6_DIR")) opt.resume_dir = dir;
    opt.log = &std::cerr;
    CensusResult r = run_census(opt);
    bool ok = r.classes == 13303 && r.imperfect == 55 && r.non_combinatorial == 2;
    // the two non-combinatorial classes are the 6-cycle and fig 6
    int matched = 0;
    for (const auto& row : r.rows) {
        if (row.verdict.combinatorial || !row.verdict.structural_k.has_value()) {
            if (!row.verdict.structural_k &&
                markov_equivalent(decode_graph(6, row.rep_code), bidirected_cycle(6)))
                ++matched;
        } else if (markov_equivalent(decode_graph(6, row.rep_code), fig6())) {
            ++matched;
        }
    }
    std::ostringstream d;
    d << r.classes << " classes, " << r.imperfect << " imperfect, " << r.non_combinatorial
      << " non-combinatorial, non-structural " << r.non_structural;
    report(8, ok && matched == 2, "census n=6 connected matches the reported counts", d.str());
}

void criterion9() {
    std::mt19937 rng(2024);
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 1000 && ok; ++rep) {
        int n = 3 + rep % 4;  // 3..6
        Admg g = random_mag(n, rng);
        try {
            // equality with the standard imset and the per-head incoming
            // coefficient identity are both asserted inside
            decompose_standard_imset(g, g.canonical_topological_order());
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
    }
    report(9, ok, "signed decomposition: zero residual and unit head coefficients, 1000 MAGs",
           detail);
}

void criterion10() {
    Admg g = fig13();
    auto pd = complete_power_dag(g, 5, numeric_order(6));
    bool ok = pd.nodes.size() == 6 && pd.edges.size() == 10;
    auto edge = [&](VertexSet from, VertexSet to) -> const MarginalizationEdge* {
        for (const auto& e : pd.edges)
            if (e.from.head == from && e.to.head == to) return &e;
        return nullptr;
    };
    struct Expect {
        VertexSet from, to;
        std::vector<VertexSet> ks;
    };
    std::vector<Expect> expected = {
        {V({4, 5, 6}), V({3, 5, 6}), {V({4})}},
        {V({4, 5, 6}), V({1, 4, 6}), {V({5})}},
        {V({4, 5, 6}), V({1, 3, 6}), {V({4, 5})}},
        {V({3, 5, 6}), V({1, 3, 6}), {V({5})}},
        {V({3, 5, 6}), V({6}), {V({3}), V({3, 5})}},
        {V({1, 4, 6}), V({1, 3, 6}), {V({4})}},
        {V({1, 4, 6}), V({3, 6}), {V({1}), V({1, 4})}},
        {V({1, 3, 6}), V({3, 6}), {V({1})}},
        {V({1, 3, 6}), V({6}), {V({3}), V({1, 3})}},
        {V({3, 6}), V({6}), {V({3})}},
    };
    for (const auto& ex : expected) {
        auto* e = edge(ex.from, ex.to);
        if (!e || e->all_k() != ex.ks) ok = false;
    }
    if (ok) {
        ok = edge(V({4, 5, 6}), V({1, 3, 6}))->contribution() == -1 &&
             edge(V({3, 5, 6}), V({6}))->contribution() == 0;
    }
    report(10, ok, "fig 13 power DAG: 6 nodes, 10 edges, every K label, contributions -1 and 0");
}

void criterion11() {
    auto same_edges = [](const PowerDagComponent& a, const PowerDagComponent& b) {
        if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
        for (const auto& e : a.edges) {
            bool found = false;
            for (const auto& f : b.edges)
                if (e.from.head == f.from.head && e.to.head == f.to.head && e.k_min == f.k_min)
                    found = true;
            if (!found) return false;
        }
        return true;
    };
    bool ok = true;
    for (int n = 1; n <= 5 && ok; ++n)
        enumerate_mags(n, false, [&](const Admg& g) {
            auto order = g.canonical_topological_order();
            for (int i = 0; i < n; ++i)
                if (!same_edges(refined_power_dag(g, i, order),
                                refined_power_dag_declarative(g, i, order)))
                    ok = false;
        });
    std::mt19937 rng(2025);
    for (int rep = 0; rep < 500 && ok; ++rep) {
        Admg g = random_mag(6, rng);
        auto order = g.canonical_topological_order();
        for (int i = 0; i < 6; ++i)
            if (!same_edges(refined_power_dag(g, i, order),
                            refined_power_dag_declarative(g, i, order)))
                ok = false;
    }
    report(11, ok, "Algorithm-1 sweep equals the declarative refined power DAG, n<=5 + 500 at n=6");
}

void criterion12() {
    bool ok = true;
    std::string detail;
    try {
        simple_decomposition(fig7_simple());
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    ok = ok && verdict(fig7_simple()).perfectly_markovian;
    std::mt19937 rng(2026);
    for (int rep = 0; rep < 500 && ok; ++rep) {
        int n = 3 + rep % 4;
        Admg g = random_simple_mag(n, rng);
        try {
            simple_decomposition(g);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        if (ok && !verdict(g).perfectly_markovian) {
            ok = false;
            detail = "simple MAG not perfectly Markovian";
        }
    }
    report(12, ok, "simple MAGs: decomposition sums to the imset, verdicts perfect, 500 graphs",
           detail);
}

void criterion13() {
    // exhaustive over unlabelled bidirected graphs, n <= 6
    bool equiv = true;
    for (int n = 1; n <= 6 && equiv; ++n) {
        int pairs = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> plist;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) plist.push_back({i, j});
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));

        for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
            // canonical representatives only; both sides are iso-invariant
            std::uint32_t best = code;
            for (const auto& pp : perms) {
                std::uint32_t mapped = 0;
                for (int e = 0; e < pairs; ++e) {
                    if (!(code >> e & 1)) continue;
                    int a = pp[plist[e].first], b = pp[plist[e].second];
                    if (a > b) std::swap(a, b);
                    for (int f = 0; f < pairs; ++f)
                        if (plist[f] == std::pair{a, b}) mapped |= 1u << f;
                }
                best = std::min(best, mapped);
            }
            if (best != code) continue;
            std::vector<std::pair<int, int>> bid;
            for (int e = 0; e < pairs; ++e)
                if (code >> e & 1) bid.push_back(plist[e]);
            Admg g(n, {}, bid);
            Verdict v = verdict(g);
            bool rooted = rooted_condition(g).has_value();
            if (rooted != (v.perfectly_markovian && v.combinatorial)) equiv = false;
        }
    }

    // the 5-chain witness list for the worked order
    Admg chain = bidirected_chain(5);
    bool chain_ok = false;
    if (auto w = rooted_witness_for_order(chain, {2, 0, 4, 1, 3})) {
        auto list = rooted_decomposition(chain, *w);
        chain_ok = list.size() == 5 && list.contains(T({4}, {2}, {1, 5})) &&
                   list.contains(T({4}, {1}, {3, 5})) && list.contains(T({2}, {5}, {1, 3})) &&
                   list.contains(T({5}, {1, 3})) && list.contains(T({1}, {3}));
    }

    auto hits = forbidden_scan(bidirected_cycle(5));
    bool cycle_ok = !rooted_condition(bidirected_cycle(5)).has_value() && hits.size() == 1 &&
                    hits[0].pattern == "b5";
    report(13, equiv && chain_ok && cycle_ok,
           "rooted <=> perfect & combinatorial (exhaustive n<=6); 5-chain list; 5-cycle hit (b)");
}

void criterion14() {
    Admg g = example_a();
    std::vector<CITriple> eight = {T({6}, {2}),         T({6}, {4}, {1, 3}),
                                   T({2}, {4}, {1, 6}), T({2}, {5}, {4, 6}),
                                   T({1}, {4}),         T({1}, {5}, {2, 4}),
                                   T({6}, {3}, {1, 5}), T({3}, {5}, {1, 2})};
    PartialOrder po;
    po.n = 6;
    po.strictly_below.assign(6, VertexSet());
    for (int v = 0; v < 6; ++v) po.strictly_below[v] = g.ancestors(v).without(v);
    GraphoidRules rules;
    rules.intersection = true;
    rules.composition = true;
    CITriple target = T({2}, {4, 5, 6});
    bool without = graphoid_closure(eight, rules, &po).count(target.canonical()) > 0;
    rules.ordered_downward = true;
    bool with = graphoid_closure(eight, rules, &po).count(target.canonical()) > 0;
    report(14, !without && with,
           "example closure: <2,{4,5,6}> needs ordered downward stability");
}

void criterion15() {
    std::mt19937 rng(2027);
    bool ok = true;
    for (int rep = 0; rep < 40 && ok; ++rep) {
        Admg g = random_dag(5, rng);
        if (entropy_identity_residual(g, dag_distribution(g, rng)) >= 1e-10) ok = false;
    }
    for (int rep = 0; rep < 40 && ok; ++rep) {
        Admg g = random_bidirected(4, rng);
        if (entropy_identity_residual(g, latent_distribution(g, rng)) >= 1e-10) ok = false;
    }
    // zeta roundtrip: interaction informations sum back to subset entropies
    for (int rep = 0; rep < 10 && ok; ++rep) {
        Distribution p = random_distribution(5, rng);
        for_each_subset(VertexSet::full(5), [&](VertexSet s) {
            double total = 0;
            for_each_subset(s, [&](VertexSet t) { total += p.interaction_information(t); });
            if (std::abs(total - p.entropy(s)) >= 1e-10) ok = false;
        });
    }
    report(15, ok, "entropy = <c_G, I> on Markov distributions (1e-10); zeta roundtrip (1e-10)");
}

void criterion16() {
    std::mt19937 rng(2028);
    std::uniform_int_distribution<int> value(-4, 4);
    std::uniform_int_distribution<std::uint32_t> mask(0, 63);
    bool ok = true;
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        Imset u(6);
        for (int e = 0; e < 8; ++e) u.add(VertexSet(mask(rng)), value(rng));
        if (!(mobius_roundtrip(u) == u)) ok = false;
    }
    int done = 0;
    while (done < 2000 && ok) {
        VertexSet a(mask(rng)), b(mask(rng)), c(mask(rng));
        b -= a;
        c -= a | b;
        if (a.empty() || b.empty()) continue;
        ++done;
        Imset u = semi_elementary(6, CITriple(a, b, c));
        if (u.sum() != 0 || u.weighted_sum() != 0) ok = false;
    }
    report(16, ok, "Moebius roundtrip on 10,000 imsets; moment filters on semi-elementary imsets");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    criterion14();
    criterion15();
    criterion16();
    if (failures) std::cout << failures << " criteria failed" << std::endl;
    return failures == 0 ? 0 : 1;
}
