#include "magset/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace magset {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

// pair states in the fixed (i<j) lexicographic order
struct PairTable {
    int n;
    std::vector<std::pair<int, int>> pairs;
    explicit PairTable(int n_) : n(n_) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    }
};

std::uint64_t pow3(int e) {
    std::uint64_t p = 1;
    while (e-- > 0) p *= 3;
    return p;
}

// Lean graph over byte masks for the enumeration hot loop.
struct Mini {
    int n = 0;
    std::array<std::uint8_t, 8> pa{}, ch{}, sib{}, an{}, de{};

    void decode(const PairTable& pt, std::uint64_t code) {
        n = pt.n;
        pa.fill(0);
        ch.fill(0);
        sib.fill(0);
        for (auto [i, j] : pt.pairs) {
            int s = static_cast<int>(code % 3);
            code /= 3;
            if (s == 1) {  // i -> j (ascending)
                ch[i] |= std::uint8_t(1u << j);
                pa[j] |= std::uint8_t(1u << i);
            } else if (s == 2) {
                sib[i] |= std::uint8_t(1u << j);
                sib[j] |= std::uint8_t(1u << i);
            }
        }
        // numeric order is topological because directed edges ascend
        for (int v = 0; v < n; ++v) {
            an[v] = std::uint8_t(1u << v);
            for (int p = 0; p < v; ++p)
                if (pa[v] >> p & 1) an[v] |= an[p];
        }
        for (int v = n - 1; v >= 0; --v) {
            de[v] = std::uint8_t(1u << v);
            for (int c = v + 1; c < n; ++c)
                if (ch[v] >> c & 1) de[v] |= de[c];
        }
    }

    int edge_count() const {
        int d = 0, b = 0;
        for (int v = 0; v < n; ++v) {
            d += std::popcount(unsigned(pa[v]));
            b += std::popcount(unsigned(sib[v]));
        }
        return d + b / 2;
    }

    bool connected() const {
        if (n == 0) return true;
        std::uint8_t reach = 1, prev = 0;
        while (reach != prev) {
            prev = reach;
            for (int v = 0; v < n; ++v)
                if (reach >> v & 1) reach |= std::uint8_t(pa[v] | ch[v] | sib[v]);
        }
        return reach == std::uint8_t((1u << n) - 1);
    }

    bool ancestral() const {
        for (int v = 0; v < n; ++v)
            if (sib[v] & std::uint8_t(an[v] & ~(1u << v))) return false;
        return true;
    }

    std::uint8_t ancestors_of(std::uint8_t w) const {
        std::uint8_t out = 0;
        for (int v = 0; v < n; ++v)
            if (w >> v & 1) out |= an[v];
        return out;
    }

    bool msep(std::uint8_t A, std::uint8_t B, std::uint8_t C) const {
        std::uint8_t anc = ancestors_of(C);
        std::uint8_t seen[2] = {0, 0};
        std::pair<int, int> queue[16];
        int qn = 0;
        auto push = [&](int v, int head) {
            if (!(seen[head] >> v & 1)) {
                seen[head] |= std::uint8_t(1u << v);
                queue[qn++] = {v, head};
            }
        };
        for (int a = 0; a < n; ++a) {
            if (!(A >> a & 1)) continue;
            for (int w = 0; w < n; ++w) {
                if ((ch[a] | sib[a]) >> w & 1) push(w, 1);
                if (pa[a] >> w & 1) push(w, 0);
            }
        }
        for (int qi = 0; qi < qn; ++qi) {
            auto [v, head] = queue[qi];
            if (B >> v & 1) return false;
            if (A >> v & 1) continue;
            if (!(C >> v & 1))
                for (int w = 0; w < n; ++w)
                    if (ch[v] >> w & 1) push(w, 1);
            bool pass = head ? (anc >> v & 1) : !(C >> v & 1);
            if (pass)
                for (int w = 0; w < n; ++w) {
                    if (pa[v] >> w & 1) push(w, 0);
                    if (sib[v] >> w & 1) push(w, 1);
                }
        }
        return true;
    }

    bool adjacent(int a, int b) const {
        return ((pa[a] | ch[a] | sib[a]) >> b) & 1;
    }

    bool maximal() const {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (adjacent(a, b)) continue;
                std::uint8_t c = std::uint8_t((an[a] | an[b]) & ~((1u << a) | (1u << b)));
                if (!msep(std::uint8_t(1u << a), std::uint8_t(1u << b), c)) return false;
            }
        return true;
    }

    std::uint8_t district_in(std::uint8_t mask, std::uint8_t seed) const {
        std::uint8_t out = seed & mask, prev = 0;
        while (out != prev) {
            prev = out;
            for (int v = 0; v < n; ++v)
                if (out >> v & 1) out |= std::uint8_t(sib[v] & mask);
        }
        return out;
    }

    // S(G) as a bitset over subset masks, plus the simplicity flag.
    void parametrizing(std::array<std::uint64_t, 2>& fam, bool& simple) const {
        fam = {0, 0};
        simple = true;
        int full = 1 << n;
        for (int w = 1; w < full; ++w) {
            std::uint8_t W = std::uint8_t(w);
            bool barren = true;
            for (int v = 0; v < n && barren; ++v)
                if (W >> v & 1)
                    if ((de[v] & W) != (1u << v)) barren = false;
            if (!barren) continue;
            std::uint8_t anW = ancestors_of(W);
            int seed = std::countr_zero(unsigned(W));
            std::uint8_t dis = district_in(anW, std::uint8_t(1u << seed));
            if ((W & ~dis) != 0) continue;  // not in a single district
            if (std::popcount(unsigned(W)) > 2) simple = false;
            std::uint8_t pa_dis = 0;
            for (int v = 0; v < n; ++v)
                if (dis >> v & 1) pa_dis |= pa[v];
            std::uint8_t tail = std::uint8_t((dis & ~W) | pa_dis);
            // add W u A for A inside tail
            std::uint8_t sub = 0;
            while (true) {
                int s = W | sub;
                fam[s >> 6] |= std::uint64_t(1) << (s & 63);
                if (sub == tail) break;
                sub = std::uint8_t((sub - tail) & tail);
            }
        }
    }
};

struct Perms {
    int n;
    std::vector<std::array<int, 8>> all;
    explicit Perms(int n_) : n(n_) {
        std::array<int, 8> p{};
        for (int i = 0; i < n; ++i) p[i] = i;
        do {
            all.push_back(p);
        } while (std::next_permutation(p.begin(), p.begin() + n));
    }
};

// minimum 3-state code over permutations keeping the directed part ascending
std::uint64_t canonical_code_impl(const PairTable& pt, const Perms& perms, const Mini& g) {
    int np = static_cast<int>(pt.pairs.size());
    std::vector<int> best(np, 3);  // sentinel: larger than any digit
    bool have = false;
    std::vector<int> digits(np);
    for (const auto& p : perms.all) {
        // the permuted graph must still have an ascending directed part
        bool ok = true;
        for (int v = 0; v < pt.n && ok; ++v)
            for (int w = 0; w < pt.n; ++w)
                if ((g.ch[v] >> w & 1) && p[v] > p[w]) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        std::fill(digits.begin(), digits.end(), 0);
        for (int v = 0; v < pt.n; ++v)
            for (int w = v + 1; w < pt.n; ++w) {
                int a = std::min(p[v], p[w]), b = std::max(p[v], p[w]);
                int idx = a * (2 * pt.n - a - 1) / 2 + (b - a - 1);
                int state = 0;
                if ((g.ch[v] >> w & 1) || (g.ch[w] >> v & 1))
                    state = 1;
                else if (g.sib[v] >> w & 1)
                    state = 2;
                digits[idx] = state;
            }
        if (!have || digits < best) {
            best = digits;
            have = true;
        }
    }
    std::uint64_t code = 0;
    for (int idx = np - 1; idx >= 0; --idx) code = code * 3 + best[idx];
    return code;
}

} // namespace

Admg decode_graph(int n, std::uint64_t code) {
    PairTable pt(n);
    std::vector<std::pair<int, int>> dir, bid;
    for (auto [i, j] : pt.pairs) {
        int s = static_cast<int>(code % 3);
        code /= 3;
        if (s == 1) dir.push_back({i, j});
        if (s == 2) bid.push_back({i, j});
    }
    return Admg(n, dir, bid);
}

std::uint64_t encode_graph(const Admg& g) {
    PairTable pt(g.n());
    std::uint64_t code = 0;
    for (int idx = static_cast<int>(pt.pairs.size()) - 1; idx >= 0; --idx) {
        auto [i, j] = pt.pairs[idx];
        int s = 0;
        if (g.children(i).contains(j))
            s = 1;
        else if (g.children(j).contains(i))
            throw std::invalid_argument("encode_graph: directed part must ascend");
        else if (g.siblings(i).contains(j))
            s = 2;
        code = code * 3 + s;
    }
    return code;
}

std::uint64_t canonical_graph_code(int n, std::uint64_t code) {
    PairTable pt(n);
    Perms perms(n);
    Mini g;
    g.decode(pt, code);
    return canonical_code_impl(pt, perms, g);
}

void enumerate_mags(int n, bool connected_only, const std::function<void(const Admg&)>& fn) {
    PairTable pt(n);
    Perms perms(n);
    std::uint64_t total = pow3(pair_count(n));
    Mini g;
    for (std::uint64_t code = 0; code < total; ++code) {
        g.decode(pt, code);
        if (connected_only && !g.connected()) continue;
        if (!g.ancestral() || !g.maximal()) continue;
        if (canonical_code_impl(pt, perms, g) != code) continue;
        fn(decode_graph(n, code));
    }
}

namespace {

using Family = std::array<std::uint64_t, 2>;

struct ClassAgg {
    std::uint64_t rep_code = ~0ull;
    long members = 0;
    bool any_simple = false;
};

// permutation action on subset masks, for canonicalising S(G) families
struct SubsetPermTables {
    int n;
    std::vector<std::vector<int>> table;  // per perm: old mask -> new mask
    SubsetPermTables(int n_, const Perms& perms) : n(n_) {
        int full = 1 << n;
        table.resize(perms.all.size(), std::vector<int>(full, 0));
        for (std::size_t pi = 0; pi < perms.all.size(); ++pi)
            for (int m = 0; m < full; ++m) {
                int out = 0;
                for (int v = 0; v < n; ++v)
                    if (m >> v & 1) out |= 1 << perms.all[pi][v];
                table[pi][m] = out;
            }
    }
};

Family canonical_family(const Family& fam, int n, const SubsetPermTables& spt) {
    Family best{~0ull, ~0ull};
    int full = 1 << n;
    for (const auto& tab : spt.table) {
        Family cur{0, 0};
        for (int m = 0; m < full; ++m)
            if (fam[m >> 6] >> (m & 63) & 1) {
                int t = tab[m];
                cur[t >> 6] |= std::uint64_t(1) << (t & 63);
            }
        if (cur < best) best = cur;
    }
    return best;
}

std::string family_hex(const Family& f) {
    std::ostringstream os;
    os << std::hex << f[1] << ":" << f[0];
    return os.str();
}

Verdict classify_class(int n, std::uint64_t rep_code, bool any_simple, bool trust_simple) {
    if (any_simple && trust_simple) {
        Verdict v;
        v.combinatorial = true;
        v.structural_k = 1;
        v.markovian = true;
        v.faithful = true;
        v.perfectly_markovian = true;
        return v;
    }
    return verdict(decode_graph(n, rep_code));
}

} // namespace

CensusResult run_census(const CensusOptions& opt) {
    namespace fs = std::filesystem;
    int n = opt.n;
    if (n < 1 || n > 7) throw std::invalid_argument("census: n must be between 1 and 7");
    PairTable pt(n);
    Perms perms(n);
    SubsetPermTables spt(n, perms);

    std::map<Family, ClassAgg> classes;
    bool loaded = false;

    fs::path dir;
    if (!opt.resume_dir.empty()) {
        dir = opt.resume_dir;
        fs::create_directories(dir);
        fs::path cls = dir / "classes.tsv";
        if (fs::exists(cls)) {
            std::ifstream in(cls);
            std::string hex1, hex0;
            ClassAgg agg;
            char colon;
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                Family f{0, 0};
                ls >> std::hex >> f[1] >> colon >> f[0] >> std::dec >> agg.rep_code >>
                    agg.members >> agg.any_simple;
                if (ls) classes[f] = agg;
            }
            loaded = !classes.empty();
            if (opt.log && loaded)
                *opt.log << "census: resumed " << classes.size() << " classes from checkpoint\n";
        }
    }

    if (!loaded) {
        std::uint64_t total = pow3(pair_count(n));
        int jobs = std::max(1, opt.jobs);
        std::vector<std::map<Family, ClassAgg>> shards(jobs);
        std::vector<std::thread> threads;
        std::atomic<long> progress{0};

        auto work = [&](int t) {
            Mini g;
            std::uint64_t lo = total * t / jobs, hi = total * (t + 1) / jobs;
            long seen = 0;
            for (std::uint64_t code = lo; code < hi; ++code) {
                if (opt.log && (++seen % 1000000) == 0) progress += 1000000;
                g.decode(pt, code);
                if (opt.connected_only && !g.connected()) continue;
                if (opt.edge_filter) {
                    int e = g.edge_count();
                    if (!(e <= opt.edge_filter->first || e >= opt.edge_filter->second)) continue;
                }
                if (!g.ancestral() || !g.maximal()) continue;
                if (canonical_code_impl(pt, perms, g) != code) continue;
                Family fam;
                bool simple;
                g.parametrizing(fam, simple);
                Family key = canonical_family(fam, n, spt);
                ClassAgg& agg = shards[t][key];
                agg.members += 1;
                agg.any_simple = agg.any_simple || simple;
                agg.rep_code = std::min(agg.rep_code, code);
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            for (int t = 0; t < jobs; ++t) threads.emplace_back(work, t);
            for (auto& th : threads) th.join();
        }
        for (auto& shard : shards)
            for (auto& [key, agg] : shard) {
                ClassAgg& dst = classes[key];
                dst.members += agg.members;
                dst.any_simple = dst.any_simple || agg.any_simple;
                dst.rep_code = std::min(dst.rep_code, agg.rep_code);
            }
        if (!dir.empty()) {
            std::ofstream out(dir / "classes.tsv");
            for (const auto& [key, agg] : classes)
                out << family_hex(key) << " " << agg.rep_code << " " << agg.members << " "
                    << agg.any_simple << "\n";
        }
        if (opt.log)
            *opt.log << "census: " << classes.size() << " equivalence classes enumerated\n";
    }

    CensusResult res;
    res.n = n;
    res.classes = static_cast<long>(classes.size());

    long id = 0;
    for (const auto& [key, agg] : classes) {
        CensusClassInfo info;
        info.id = id++;
        info.rep_code = agg.rep_code;
        info.members = agg.members;
        info.any_simple = agg.any_simple;
        res.rows.push_back(info);
    }

    if (!opt.classify) return res;

    // previously classified rows, from the append-only checkpoint
    std::vector<char> done(res.rows.size(), 0);
    if (!dir.empty()) {
        fs::path vp = dir / "verdicts.tsv";
        if (fs::exists(vp)) {
            std::ifstream in(vp);
            long vid;
            int comb, mark, faith, pm;
            long k;
            while (in >> vid >> comb >> k >> mark >> faith >> pm) {
                if (vid < 0 || vid >= static_cast<long>(res.rows.size())) continue;
                Verdict v;
                v.combinatorial = comb;
                if (k > 0) v.structural_k = k;
                v.markovian = mark;
                v.faithful = faith;
                v.perfectly_markovian = pm;
                res.rows[vid].verdict = v;
                done[vid] = 1;
            }
        }
    }

    std::ofstream vout;
    if (!dir.empty()) vout.open(dir / "verdicts.tsv", std::ios::app);

    int jobs = std::max(1, opt.jobs);
    std::mutex io_mutex;
    std::atomic<std::size_t> next{0};
    auto classify_work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= res.rows.size()) break;
            if (done[i]) continue;
            Verdict v = classify_class(n, res.rows[i].rep_code, res.rows[i].any_simple,
                                       opt.trust_simple);
            std::lock_guard<std::mutex> lock(io_mutex);
            res.rows[i].verdict = v;
            if (vout.is_open()) {
                vout << i << " " << v.combinatorial << " "
                     << (v.structural_k ? v.structural_k->get_si() : 0) << " " << v.markovian
                     << " " << v.faithful << " " << v.perfectly_markovian << "\n";
                vout.flush();
            }
            if (opt.log && (i % 200) == 0)
                *opt.log << "census: classified " << i << "/" << res.rows.size() << "\n";
        }
    };
    if (jobs == 1) {
        classify_work();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < jobs; ++t) threads.emplace_back(classify_work);
        for (auto& th : threads) th.join();
    }

    for (const auto& row : res.rows) {
        if (!row.verdict.perfectly_markovian) res.imperfect += 1;
        if (!row.verdict.combinatorial) res.non_combinatorial += 1;
        if (!row.verdict.structural_k) res.non_structural += 1;
    }
    return res;
}

std::string census_csv(const CensusResult& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (!out_dir.empty()) fs::create_directories(out_dir);
    std::ostringstream os;
    os << "class_id,representative_file,combinatorial,structural_k,perfectly_markovian\n";
    for (const auto& row : r.rows) {
        std::string file = "-";
        if (!row.verdict.perfectly_markovian && !out_dir.empty()) {
            file = out_dir + "/fail_" + std::to_string(row.id) + ".mag";
            std::ofstream out(file);
            out << decode_graph(r.n, row.rep_code).to_text();
        }
        os << row.id << "," << file << "," << (row.verdict.combinatorial ? 1 : 0) << ","
           << (row.verdict.structural_k ? row.verdict.structural_k->get_si() : 0) << ","
           << (row.verdict.perfectly_markovian ? 1 : 0) << "\n";
    }
    return os.str();
}

} // namespace magset
