#include "magset/cone.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace magset {

std::vector<CITriple> elementary_basis(int n) {
    std::vector<CITriple> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            VertexSet rest = VertexSet::full(n) - VertexSet({a, b});
            for_each_subset(rest, [&](VertexSet c) {
                out.push_back(CITriple(VertexSet::single(a), VertexSet::single(b), c));
            });
        }
    return out;
}

Imset ConeCertificate::sum(int n) const {
    Imset out(n);
    for (const auto& [t, m] : terms) out += mpz_class(m) * semi_elementary(n, t);
    return out;
}

bool moment_filters_pass(const Imset& u) {
    return u.sum() == 0 && u.weighted_sum() == 0;
}

// ---------------------------------------------------------------------------
// Integer cone membership.
//
// Order subsets by (size, mask) descending; this is a linear extension of
// superset inclusion.  In any decomposition, the first nonzero residual set S
// under this order can only be hit by +1 entries of terms whose top set is S,
// so the number of terms topped at S is forced to be exactly residual(S);
// if residual(S) < 0 or |S| < 2 the branch is infeasible.  Branching picks
// the multiset of vertex pairs inside S used as tops.
// ---------------------------------------------------------------------------

namespace {

struct SizeLexDesc {
    bool operator()(VertexSet a, VertexSet b) const {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.bits() > b.bits();
    }
};

using Residual = std::map<VertexSet, mpz_class, SizeLexDesc>;

struct ComboSearch {
    int n;
    long budget;  // < 0: unlimited
    long nodes = 0;
    bool budget_hit = false;
    std::map<std::vector<std::pair<std::uint32_t, long>>, bool> failed;

    // minimise_terms: when true, run branch-and-bound on total multiplicity.
    bool minimise_terms = false;
    long best = -1;
    std::vector<std::pair<CITriple, long>> best_terms;
    std::vector<std::pair<CITriple, long>> current;
    long current_count = 0;

    static std::vector<std::pair<std::uint32_t, long>> key_of(const Residual& r) {
        std::vector<std::pair<std::uint32_t, long>> key;
        key.reserve(r.size());
        for (const auto& [s, v] : r) key.push_back({s.bits(), v.get_si()});
        return key;
    }

    static void apply_term(Residual& r, VertexSet s, int a, int b, long mult) {
        auto upd = [&](VertexSet t, long d) {
            auto it = r.find(t);
            if (it == r.end()) {
                if (d != 0) r[t] = d;
            } else {
                it->second += d;
                if (it->second == 0) r.erase(it);
            }
        };
        upd(s, -mult);
        upd(s.without(a), mult);
        upd(s.without(b), mult);
        upd(s.without(a).without(b), -mult);
    }

    long positive_mass(const Residual& r) const {
        long p = 0;
        for (const auto& [s, v] : r)
            if (v > 0) p += v.get_si();
        return p;
    }

    // returns true if a decomposition was found (in find-first mode)
    bool dfs(Residual& r) {
        if (budget >= 0 && ++nodes > budget) {
            budget_hit = true;
            return false;
        }
        if (r.empty()) {
            if (!minimise_terms) return true;
            if (best < 0 || current_count < best) {
                best = current_count;
                best_terms = current;
            }
            return false;  // keep searching for better
        }
        if (minimise_terms && best >= 0) {
            long bound = current_count + (positive_mass(r) + 1) / 2;
            if (bound >= best) return false;
        }
        auto first = r.begin();
        VertexSet s = first->first;
        const mpz_class& val = first->second;
        if (val < 0 || s.size() < 2) return false;
        if (!val.fits_slong_p())
            throw std::runtime_error("cone search: residual entry out of range");
        long need = val.get_si();
        if (minimise_terms && best >= 0 && current_count + need >= best) return false;

        bool memoizable = !minimise_terms;
        for (const auto& [ss, vv] : r)
            if (!vv.fits_slong_p()) memoizable = false;
        std::vector<std::pair<std::uint32_t, long>> key;
        if (memoizable) {
            key = key_of(r);
            if (failed.count(key)) return false;
        }

        // multiset of `need` pairs from the pairs inside s, nondecreasing
        std::vector<std::pair<int, int>> pairs;
        for (int a : s)
            for (int b : s)
                if (a < b) pairs.push_back({a, b});

        std::vector<int> choice(need, 0);
        bool found = false;
        std::function<void(int, int)> pick = [&](int pos, int from) {
            if (found || budget_hit) return;
            if (pos == need) {
                for (int c : choice) apply_term(r, s, pairs[c].first, pairs[c].second, 1);
                std::size_t mark = current.size();
                for (int c : choice) {
                    CITriple t(VertexSet::single(pairs[c].first), VertexSet::single(pairs[c].second),
                               s - VertexSet({pairs[c].first, pairs[c].second}));
                    if (current.size() > mark && current.back().first == t)
                        current.back().second += 1;
                    else
                        current.push_back({t, 1});
                }
                current_count += need;
                if (dfs(r)) {
                    found = true;
                    return;  // keep `current`: it is the certificate
                }
                current_count -= need;
                current.erase(current.begin() + static_cast<long>(mark), current.end());
                for (int c : choice) apply_term(r, s, pairs[c].first, pairs[c].second, -1);
                return;
            }
            for (int c = from; c < static_cast<int>(pairs.size()); ++c) {
                choice[pos] = c;
                pick(pos + 1, c);
                if (found || budget_hit) return;
            }
        };
        pick(0, 0);
        if (!found && memoizable && !budget_hit && failed.size() < (1u << 22)) failed[key] = true;
        return found;
    }
};

Residual to_residual(const Imset& u) {
    Residual r;
    for (const auto& [s, v] : u.entries()) r[s] = v;
    return r;
}

} // namespace

std::optional<ConeCertificate> is_combinatorial(const Imset& u, long node_budget) {
    if (!moment_filters_pass(u)) return std::nullopt;
    ComboSearch search{u.n(), node_budget};
    Residual r = to_residual(u);
    bool ok = search.dfs(r);
    if (search.budget_hit)
        throw std::runtime_error("is_combinatorial: node budget exhausted before the search closed");
    if (!ok) return std::nullopt;
    ConeCertificate cert;
    cert.k = 1;
    cert.terms = search.current;
    // canonical order for stable output
    std::sort(cert.terms.begin(), cert.terms.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return cert;
}

// ---------------------------------------------------------------------------
// Exact phase-1 simplex over the rationals.
// ---------------------------------------------------------------------------

LpFeasibility cone_feasible(const std::vector<Imset>& cols, const Imset& rhs) {
    const int n = rhs.n();
    const std::size_t m = std::size_t(1) << n;
    const std::size_t N = cols.size();

    // tableau rows: [cols | artificial identity | rhs], b normalised >= 0
    std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(N + m + 1, mpq_class(0)));
    for (std::size_t j = 0; j < N; ++j)
        for (const auto& [s, v] : cols[j].entries()) T[s.bits()][j] = v;
    auto dense_rhs = rhs.dense();
    for (std::size_t i = 0; i < m; ++i) T[i][N + m] = dense_rhs[i];
    for (std::size_t i = 0; i < m; ++i) {
        if (T[i][N + m] < 0)
            for (auto& v : T[i]) v = -v;
        T[i][N + i] = 1;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = N + i;

    // phase-1 objective: minimise the sum of artificials; reduced-cost row
    std::vector<mpq_class> obj(N + m + 1, mpq_class(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= N + m; ++j)
            if (j < N || j == N + m) obj[j] += T[i][j];

    long iters = 0;
    const long bland_after = 4 * static_cast<long>(m + N);
    while (true) {
        // entering column: never re-admit artificials
        std::size_t pc = N + m;
        if (++iters > bland_after) {
            for (std::size_t j = 0; j < N; ++j)
                if (obj[j] > 0) { pc = j; break; }
        } else {
            mpq_class bestv = 0;
            for (std::size_t j = 0; j < N; ++j)
                if (obj[j] > bestv) { bestv = obj[j]; pc = j; }
        }
        if (pc == N + m) break;  // optimal

        std::size_t pr = m;
        mpq_class best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][pc] <= 0) continue;
            mpq_class ratio = T[i][N + m] / T[i][pc];
            if (pr == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[pr])) {
                pr = i;
                best_ratio = ratio;
            }
        }
        if (pr == m)
            throw std::logic_error("phase-1 simplex unbounded");

        // pivot at (pr, pc)
        mpq_class piv = T[pr][pc];
        for (auto& v : T[pr])
            if (v != 0) v /= piv;
        T[pr][pc] = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr || T[i][pc] == 0) continue;
            mpq_class f = T[i][pc];
            for (std::size_t j = 0; j <= N + m; ++j)
                if (T[pr][j] != 0) T[i][j] -= f * T[pr][j];
            T[i][pc] = 0;
        }
        if (obj[pc] != 0) {
            mpq_class f = obj[pc];
            for (std::size_t j = 0; j <= N + m; ++j)
                if (T[pr][j] != 0) obj[j] -= f * T[pr][j];
            obj[pc] = 0;
        }
        basis[pr] = pc;
    }

    LpFeasibility out;
    out.feasible = (obj[N + m] == 0);
    if (out.feasible) {
        out.x.assign(N, mpq_class(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < N) out.x[basis[i]] = T[i][N + m];
    }
    return out;
}

std::optional<ConeCertificate> is_structural(const Imset& u) {
    if (u.is_zero()) return ConeCertificate{};  // empty combination, k = 1
    if (!moment_filters_pass(u)) return std::nullopt;

    auto basis = elementary_basis(u.n());
    std::vector<Imset> cols;
    cols.reserve(basis.size());
    for (const auto& t : basis) cols.push_back(semi_elementary(u.n(), t));
    auto lp = cone_feasible(cols, u);
    if (!lp.feasible) return std::nullopt;

    mpz_class k_bound = 1;
    for (const auto& q : lp.x)
        k_bound = lcm(k_bound, q.get_den());

    for (mpz_class k = 1; k <= k_bound; ++k) {
        Imset ku = k * u;
        if (auto cert = is_combinatorial(ku)) {
            cert->k = k;
            return cert;
        }
    }
    throw std::logic_error("is_structural: cleared-denominator multiple was not combinatorial");
}

Represents represents(const Imset& u, const CITriple& t) {
    if (!is_structural(u)) return Represents::ModelUndefined;

    auto basis = elementary_basis(u.n());
    std::vector<Imset> cols;
    cols.reserve(basis.size() + 1);
    cols.push_back(u);
    for (const auto& e : basis) {
        Imset neg = semi_elementary(u.n(), e);
        neg *= mpz_class(-1);
        cols.push_back(neg);
    }
    return cone_feasible(cols, semi_elementary(u.n(), t)).feasible ? Represents::Yes
                                                                   : Represents::No;
}

std::vector<CITriple> induced_model(const Imset& u, ModelScope scope) {
    ImsetModelOracle oracle(u);
    if (!oracle.structural())
        throw std::invalid_argument("induced_model: imset is not structural, model undefined");

    std::vector<CITriple> out;
    int n = u.n();
    if (scope == ModelScope::Elementary) {
        for (const auto& t : elementary_basis(n))
            if (oracle.query(t) == Represents::Yes) out.push_back(t);
    } else {
        // every disjoint <A,B|C>, canonical A <= B
        std::function<void(int, VertexSet, VertexSet, VertexSet)> rec = [&](int v, VertexSet a,
                                                                            VertexSet b, VertexSet c) {
            if (v == n) {
                if (a.empty() || b.empty() || b < a) return;
                CITriple t(a, b, c);
                if (oracle.query(t) == Represents::Yes) out.push_back(t);
                return;
            }
            rec(v + 1, a, b, c);
            rec(v + 1, a.with(v), b, c);
            rec(v + 1, a, b.with(v), c);
            rec(v + 1, a, b, c.with(v));
        };
        rec(0, VertexSet(), VertexSet(), VertexSet());
    }
    std::sort(out.begin(), out.end());
    return out;
}

DegreeResult degree(const Imset& u, long node_budget) {
    DegreeResult res;
    auto structural = is_structural(u);
    if (!structural)
        throw std::invalid_argument("degree: imset is not structural");
    res.k = structural->k;

    Imset ku = structural->k * u;
    ComboSearch search{u.n(), node_budget};
    search.minimise_terms = true;
    search.best = structural->term_count();
    search.best_terms = structural->terms;
    Residual r = to_residual(ku);
    search.dfs(r);

    res.upper = search.best;
    if (search.budget_hit) {
        res.exact = false;
        long p = 0;
        for (const auto& [s, v] : ku.entries())
            if (v > 0) p += static_cast<long>(v.get_si());
        res.lower = (p + 1) / 2;
    } else {
        res.exact = true;
        res.value = search.best;
        res.lower = search.best;
    }
    return res;
}

ImsetModelOracle::ImsetModelOracle(Imset u) : u_(std::move(u)) {
    cert_ = is_structural(u_);
    structural_ = cert_.has_value();
    if (structural_ && !cert_->terms.empty()) {
        std::vector<CITriple> start;
        for (const auto& [t, m] : cert_->terms) start.push_back(t);
        closure_ = graphoid_closure(start, GraphoidRules{});  // semi-graphoids only
    }
}

Represents ImsetModelOracle::query(const CITriple& t) {
    if (!structural_) return Represents::ModelUndefined;
    CITriple c = t.canonical();
    if (closure_.count(c)) return Represents::Yes;
    if (yes_.count(c)) return Represents::Yes;
    if (no_.count(c)) return Represents::No;

    ++lp_calls_;
    if (lp_cols_.empty()) {
        auto basis = elementary_basis(u_.n());
        lp_cols_.reserve(basis.size() + 1);
        lp_cols_.push_back(u_);
        for (const auto& e : basis) {
            Imset neg = semi_elementary(u_.n(), e);
            neg *= mpz_class(-1);
            lp_cols_.push_back(neg);
        }
    }
    bool ok = cone_feasible(lp_cols_, semi_elementary(u_.n(), c)).feasible;
    if (ok) {
        // fold the new fact into the closure so later queries benefit
        std::vector<CITriple> start(closure_.begin(), closure_.end());
        start.push_back(c);
        closure_ = graphoid_closure(start, GraphoidRules{});
        yes_.insert(c);
    } else {
        no_.insert(c);
    }
    return ok ? Represents::Yes : Represents::No;
}

} // namespace magset
