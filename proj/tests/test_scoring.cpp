#include <doctest.h>

#include <cmath>
#include <random>

#include "magset/scoring.hpp"
#include "support/distributions.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

using namespace magset;
using namespace fixtures;

namespace {

EmpiricalTable coin_table() {
    // two fair, exactly independent columns
    return EmpiricalTable::from_csv("a,b\n0,0\n0,1\n1,0\n1,1\n");
}

} // namespace

TEST_CASE("entropy of empirical tables") {
    EmpiricalTable t = EmpiricalTable::from_csv("a,b\nx,0\nx,1\nx,0\nx,1\n");
    CHECK(t.entropy(VertexSet()) == 0.0);
    // constant column
    CHECK(t.entropy(VertexSet::single(0)) == doctest::Approx(0.0));
    // balanced binary column: sum p log p = -log 2
    CHECK(t.entropy(VertexSet::single(1)) == doctest::Approx(-std::log(2.0)));

    // joint entropy against a brute-force joint tabulation
    EmpiricalTable u = EmpiricalTable::from_csv("a,b\n0,0\n0,1\n1,0\n0,0\n1,1\n");
    double expect = 0;
    for (double cnt : {2.0, 1.0, 1.0, 1.0}) expect += (cnt / 5.0) * std::log(cnt / 5.0);
    CHECK(u.entropy(VertexSet({0, 1})) == doctest::Approx(expect));
}

TEST_CASE("interaction information") {
    EmpiricalTable t = coin_table();
    // singleton: the entropy itself
    CHECK(t.interaction_information(VertexSet::single(0)) ==
          doctest::Approx(t.entropy(VertexSet::single(0))));
    // exactly independent columns: zero interaction
    CHECK(t.interaction_information(VertexSet({0, 1})) == doctest::Approx(0.0));
}

TEST_CASE("interaction informations zeta-sum to the joint entropy") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> val(0, 2);
    for (int rep = 0; rep < 5; ++rep) {
        std::string csv = "a,b,c,d\n";
        for (int r = 0; r < 40; ++r) {
            csv += std::to_string(val(rng));
            for (int c = 1; c < 4; ++c) csv += "," + std::to_string(val(rng));
            csv += "\n";
        }
        EmpiricalTable t = EmpiricalTable::from_csv(csv);
        double total = 0;
        for_each_subset(VertexSet::full(4),
                        [&](VertexSet s) { total += t.interaction_information(s); });
        CHECK(std::abs(total - t.entropy(VertexSet::full(4))) < 1e-10);
    }
}

TEST_CASE("inner products") {
    Admg g = fig2_dag();
    std::mt19937 rng(5);
    Distribution p = dag_distribution(g, rng);
    auto H = [&](VertexSet s) { return p.entropy(s); };

    CHECK(inner_product(delta(4, g.vertices()), H) ==
          doctest::Approx(p.entropy(g.vertices())));
    CHECK(inner_product(Imset(4), H) == 0.0);

    // <u_t, H> is a conditional mutual information, hence nonnegative
    std::uniform_int_distribution<std::uint32_t> mask(0, 15);
    int done = 0;
    while (done < 40) {
        VertexSet a(mask(rng)), b(mask(rng)), c(mask(rng));
        b -= a;
        c -= a | b;
        if (a.empty() || b.empty()) continue;
        ++done;
        Distribution q = random_distribution(4, rng);
        auto Hq = [&](VertexSet s) { return q.entropy(s); };
        CHECK(inner_product(semi_elementary(4, CITriple(a, b, c)), Hq) >= -1e-12);
    }
}

TEST_CASE("imset score of the empty graph on two coins") {
    Admg g(2, {}, {}, {"a", "b"});
    EmpiricalTable t = coin_table();
    ScoreReport rep = imset_score(g, t);
    CHECK(rep.dimension == 2);
    CHECK(rep.samples == 4);
    double h = -std::log(2.0);
    CHECK(rep.inner == doctest::Approx(h + h));
    CHECK(rep.score == doctest::Approx(-2.0 * 4 * (h + h) + 2 * std::log(4.0)));
}

TEST_CASE("complete DAG scores the full joint entropy") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(0, 1);
    std::string csv = "1,2,3\n";
    for (int r = 0; r < 60; ++r) {
        csv += std::to_string(val(rng));
        for (int c = 1; c < 3; ++c) csv += "," + std::to_string(val(rng));
        csv += "\n";
    }
    EmpiricalTable t = EmpiricalTable::from_csv(csv);
    ScoreReport rep = imset_score(complete_dag(3), t);
    CHECK(rep.inner == doctest::Approx(t.entropy(VertexSet::full(3))));
    CHECK(rep.dimension == 7);
}

TEST_CASE("adding an edge never shrinks the dimension") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        Admg g = random_mag(5, rng);
        long d = static_cast<long>(parametrizing_sets(g).sets.size());
        // add one random edge to nonadjacent a,b (bidirected where legal)
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                if (g.adjacent(a, b)) continue;
                auto dir = g.directed_edges();
                auto bid = g.bidirected_edges();
                if (g.ancestors(a).contains(b))
                    dir.push_back({b, a});
                else if (g.ancestors(b).contains(a))
                    dir.push_back({a, b});
                else
                    bid.push_back({a, b});
                Admg bigger(5, dir, bid);
                if (!bigger.is_ancestral() || !bigger.is_maximal()) continue;
                CHECK(static_cast<long>(parametrizing_sets(bigger).sets.size()) >= d);
            }
    }
}

TEST_CASE("scores agree bit for bit across Markov equivalent graphs") {
    Admg a = mag(2, {{1, 2}}, {});
    Admg b = mag(2, {{2, 1}}, {});
    EmpiricalTable t = coin_table();
    ScoreReport ra = imset_score(a, t), rb = imset_score(b, t);
    CHECK(ra.score == rb.score);
    CHECK(ra.inner == rb.inner);
    CHECK(ra.dimension == rb.dimension);
}

TEST_CASE("entropy identity for DAG distributions") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 15; ++rep) {
        Admg g = random_dag(5, rng);
        Distribution p = dag_distribution(g, rng);
        CHECK(entropy_identity_residual(g, p) < 1e-10);
    }
}

TEST_CASE("entropy identity via latent-DAG marginalization") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 12; ++rep) {
        Admg g = random_mag(4, rng);
        Distribution p = latent_distribution(g, rng);
        CHECK(entropy_identity_residual(g, p) < 1e-10);
    }
}

TEST_CASE("generic distributions break the identity") {
    std::mt19937 rng(19);
    Admg g = fig2_dag();
    int nonzero = 0;
    for (int rep = 0; rep < 5; ++rep)
        if (entropy_identity_residual(g, random_distribution(4, rng)) > 1e-6) ++nonzero;
    CHECK(nonzero == 5);
}

TEST_CASE("KL inner product is nonnegative, zero iff P satisfies the triple") {
    std::mt19937 rng(23);
    Admg chain = mag(3, {{1, 2}, {2, 3}}, {});  // 1 -> 2 -> 3, so 1 _||_ 3 | 2
    CITriple t = T({1}, {3}, {2});
    for (int rep = 0; rep < 10; ++rep) {
        Distribution q = dag_distribution(chain, rng);
        auto q_kl = [&](const Distribution& p) {
            return inner_product(semi_elementary(3, t),
                                 [&](VertexSet s) { return marginal_kl(p, q, s); });
        };
        // P satisfying the independence: zero
        Distribution p_good = dag_distribution(chain, rng);
        CHECK(std::abs(q_kl(p_good)) < 1e-10);
        // generic P: strictly positive
        Distribution p_bad = random_distribution(3, rng);
        CHECK(q_kl(p_bad) > 1e-8);
    }
}

TEST_CASE("column mismatches are rejected") {
    Admg g(2, {}, {}, {"a", "b"});
    CHECK_THROWS_AS(imset_score(g, EmpiricalTable::from_csv("a,c\n0,0\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(imset_score(g, EmpiricalTable::from_csv("a\n0\n")), std::invalid_argument);
}
