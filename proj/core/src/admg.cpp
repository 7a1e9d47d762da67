#include "magset/admg.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace magset {

int UndirectedGraph::edge_count() const {
    int c = 0;
    for (int v = 0; v < n; ++v) c += (adj[v] - VertexSet::full(v + 1)).size();
    return c;
}

UndirectedGraph UndirectedGraph::induced(VertexSet w) const {
    UndirectedGraph out;
    auto ids = w.elements();
    out.n = static_cast<int>(ids.size());
    out.adj.assign(out.n, VertexSet());
    for (int i = 0; i < out.n; ++i) {
        out.labels.push_back(labels.empty() ? std::to_string(ids[i]) : labels[ids[i]]);
        for (int j = 0; j < out.n; ++j)
            if (adj[ids[i]].contains(ids[j])) out.adj[i] |= VertexSet::single(j);
    }
    return out;
}

namespace {

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
    return out;
}

// Finds a directed cycle for the error message. Returns vertex ids on the cycle.
std::vector<int> find_cycle(int n, const std::vector<VertexSet>& ch) {
    std::vector<int> state(n, 0), stack;
    std::vector<int> cycle;
    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        stack.push_back(v);
        for (int w : ch[v]) {
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                cycle.assign(it, stack.end());
                return true;
            }
            if (state[w] == 0 && dfs(w)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0 && dfs(v)) return cycle;
    return {};
}

} // namespace

Admg::Admg(int n,
           std::vector<std::pair<int, int>> directed,
           std::vector<std::pair<int, int>> bidirected,
           std::vector<std::string> labels)
    : n_(n),
      directed_(std::move(directed)),
      bidirected_(std::move(bidirected)),
      labels_(labels.empty() ? default_labels(n) : std::move(labels)) {
    if (n_ < 0 || n_ > 30) throw std::invalid_argument("vertex count out of range");
    if (static_cast<int>(labels_.size()) != n_)
        throw std::invalid_argument("label count does not match vertex count");
    pa_.assign(n_, VertexSet());
    ch_.assign(n_, VertexSet());
    sib_.assign(n_, VertexSet());

    auto check_pair = [&](int a, int b) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loops are not allowed");
        if (adjacent(a, b))
            throw std::invalid_argument("more than one edge between " + labels_[a] + " and " + labels_[b]);
    };
    for (auto [a, b] : directed_) {
        check_pair(a, b);
        ch_[a] |= VertexSet::single(b);
        pa_[b] |= VertexSet::single(a);
    }
    for (auto [a, b] : bidirected_) {
        check_pair(a, b);
        sib_[a] |= VertexSet::single(b);
        sib_[b] |= VertexSet::single(a);
    }

    // Reflexive transitive closure of the directed part; also the acyclicity check.
    an_.assign(n_, VertexSet());
    de_.assign(n_, VertexSet());
    std::vector<int> order;
    {
        std::vector<int> indeg(n_, 0);
        for (int v = 0; v < n_; ++v) indeg[v] = pa_[v].size();
        std::vector<int> q;
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) q.push_back(v);
        for (size_t i = 0; i < q.size(); ++i) {
            int v = q[i];
            order.push_back(v);
            for (int w : ch_[v])
                if (--indeg[w] == 0) q.push_back(w);
        }
        if (static_cast<int>(order.size()) != n_) {
            auto cyc = find_cycle(n_, ch_);
            std::string msg = "directed cycle:";
            for (int v : cyc) msg += " " + labels_[v] + " ->";
            msg += " " + labels_[cyc.empty() ? 0 : cyc.front()];
            throw std::invalid_argument(msg);
        }
    }
    for (int v : order) {
        an_[v] = VertexSet::single(v);
        for (int p : pa_[v]) an_[v] |= an_[p];
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        de_[*it] = VertexSet::single(*it);
        for (int c : ch_[*it]) de_[*it] |= de_[c];
    }
}

std::optional<int> Admg::id_of(const std::string& label) const {
    for (int v = 0; v < n_; ++v)
        if (labels_[v] == label) return v;
    return std::nullopt;
}

VertexSet Admg::parents(VertexSet w) const {
    VertexSet out;
    for (int v : w) out |= pa_[v];
    return out;
}
VertexSet Admg::children(VertexSet w) const {
    VertexSet out;
    for (int v : w) out |= ch_[v];
    return out;
}
VertexSet Admg::siblings(VertexSet w) const {
    VertexSet out;
    for (int v : w) out |= sib_[v];
    return out;
}
VertexSet Admg::ancestors(VertexSet w) const {
    VertexSet out;
    for (int v : w) out |= an_[v];
    return out;
}
VertexSet Admg::descendants(VertexSet w) const {
    VertexSet out;
    for (int v : w) out |= de_[v];
    return out;
}
VertexSet Admg::district(VertexSet w) const { return district_in(vertices(), w); }

VertexSet Admg::relatives(VertexSet w, Relation kind) const {
    switch (kind) {
        case Relation::Parents: return parents(w);
        case Relation::Siblings: return siblings(w);
        case Relation::Ancestors: return ancestors(w);
        case Relation::Descendants: return descendants(w);
        case Relation::District: return district(w);
    }
    throw std::invalid_argument("unknown relation");
}

VertexSet Admg::ancestors_in(VertexSet mask, VertexSet w) const {
    VertexSet out = w & mask;
    while (true) {
        VertexSet next = out;
        for (int v : out) next |= pa_[v] & mask;
        if (next == out) return out;
        out = next;
    }
}

VertexSet Admg::descendants_in(VertexSet mask, VertexSet w) const {
    VertexSet out = w & mask;
    while (true) {
        VertexSet next = out;
        for (int v : out) next |= ch_[v] & mask;
        if (next == out) return out;
        out = next;
    }
}

VertexSet Admg::district_in(VertexSet mask, int v) const {
    VertexSet out = VertexSet::single(v) & mask;
    while (true) {
        VertexSet next = out;
        for (int u : out) next |= sib_[u] & mask;
        if (next == out) return out;
        out = next;
    }
}

VertexSet Admg::district_in(VertexSet mask, VertexSet w) const {
    VertexSet out;
    for (int v : w & mask) out |= district_in(mask, v);
    return out;
}

VertexSet Admg::barren_in(VertexSet mask, VertexSet w) const {
    VertexSet out;
    for (int v : w & mask)
        if ((descendants_in(mask, VertexSet::single(v)) & w & mask) == VertexSet::single(v))
            out |= VertexSet::single(v);
    return out;
}

std::vector<VertexSet> Admg::districts_in(VertexSet mask) const {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (int v : mask) {
        if (seen.contains(v)) continue;
        VertexSet d = district_in(mask, v);
        out.push_back(d);
        seen |= d;
    }
    return out;
}

bool Admg::connected_skeleton() const {
    if (n_ == 0) return true;
    VertexSet reached = VertexSet::single(0);
    while (true) {
        VertexSet next = reached;
        for (int v : reached) next |= pa_[v] | ch_[v] | sib_[v];
        if (next == reached) break;
        reached = next;
    }
    return reached == vertices();
}

InducedSubgraph Admg::induced(VertexSet w) const {
    auto ids = w.elements();
    std::vector<int> back(n_, -1);
    for (size_t i = 0; i < ids.size(); ++i) back[ids[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> dir, bid;
    std::vector<std::string> labs;
    for (int v : ids) labs.push_back(labels_[v]);
    for (auto [a, b] : directed_)
        if (w.contains(a) && w.contains(b)) dir.push_back({back[a], back[b]});
    for (auto [a, b] : bidirected_)
        if (w.contains(a) && w.contains(b)) bid.push_back({back[a], back[b]});
    return InducedSubgraph{Admg(static_cast<int>(ids.size()), dir, bid, labs), ids};
}

bool Admg::is_ancestral() const {
    for (int v = 0; v < n_; ++v)
        if (sib_[v].intersects(an_[v])) return false;
    return true;
}

bool Admg::is_maximal() const {
    if (!is_ancestral()) throw std::invalid_argument("is_maximal requires an ancestral graph");
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
            if (adjacent(a, b)) continue;
            VertexSet c = (an_[a] | an_[b]) - VertexSet({a, b});
            if (!m_separated(VertexSet::single(a), VertexSet::single(b), c)) return false;
        }
    return true;
}

bool Admg::is_maximal_brute() const {
    if (!is_ancestral()) throw std::invalid_argument("is_maximal requires an ancestral graph");
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
            if (adjacent(a, b)) continue;
            bool separable = false;
            for_each_subset(vertices() - VertexSet({a, b}), [&](VertexSet c) {
                if (!separable && m_separated(VertexSet::single(a), VertexSet::single(b), c))
                    separable = true;
            });
            if (!separable) return false;
        }
    return true;
}

bool Admg::m_separated(const CITriple& t) const {
    // States (v, arrived-with-arrowhead-at-v).  A walk continues through a
    // noncollider not in C, or a collider in an(C); walk reachability and
    // path reachability coincide for m-connection.
    VertexSet anc = ancestors(t.C);
    std::vector<std::array<bool, 2>> seen(n_, {false, false});
    std::vector<std::pair<int, int>> queue;

    auto push = [&](int v, int head) {
        if (!seen[v][head]) {
            seen[v][head] = true;
            queue.push_back({v, head});
        }
    };

    // Leaving a source: mark at the far endpoint decides the state.
    for (int a : t.A) {
        for (int w : ch_[a] | sib_[a]) push(w, 1);
        for (int w : pa_[a]) push(w, 0);
    }
    for (size_t i = 0; i < queue.size(); ++i) {
        auto [v, head] = queue[i];
        if (t.B.contains(v)) return false;
        if (t.A.contains(v)) continue;  // suffix from another source is explored anyway
        // v -> w: tail at v, head at w
        if (!t.C.contains(v))
            for (int w : ch_[v]) push(w, 1);
        // v <- w and v <-> w have an arrowhead at v: v is a collider iff we
        // arrived with an arrowhead too.
        bool pass_head = head ? anc.contains(v) : !t.C.contains(v);
        if (pass_head) {
            for (int w : pa_[v]) push(w, 0);
            for (int w : sib_[v]) push(w, 1);
        }
    }
    return true;
}

std::vector<int> Admg::canonical_topological_order() const {
    std::vector<int> indeg(n_, 0), order;
    for (int v = 0; v < n_; ++v) indeg[v] = pa_[v].size();
    VertexSet placed;
    for (int step = 0; step < n_; ++step) {
        for (int v = 0; v < n_; ++v) {
            if (!placed.contains(v) && (pa_[v] - placed).empty()) {
                order.push_back(v);
                placed |= VertexSet::single(v);
                break;
            }
        }
    }
    return order;
}

void Admg::all_topological_orders(const std::function<bool(const std::vector<int>&)>& fn) const {
    std::vector<int> order;
    VertexSet placed;
    bool stop = false;
    std::function<void()> rec = [&]() {
        if (stop) return;
        if (static_cast<int>(order.size()) == n_) {
            if (!fn(order)) stop = true;
            return;
        }
        for (int v = 0; v < n_ && !stop; ++v) {
            if (placed.contains(v) || !(pa_[v] - placed).empty()) continue;
            order.push_back(v);
            placed |= VertexSet::single(v);
            rec();
            order.pop_back();
            placed -= VertexSet::single(v);
        }
    };
    rec();
}

bool Admg::is_topological(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != n_) return false;
    VertexSet placed;
    for (int v : order) {
        if (v < 0 || v >= n_ || placed.contains(v)) return false;
        if (!(pa_[v] - placed).empty()) return false;
        placed |= VertexSet::single(v);
    }
    return true;
}

UndirectedGraph Admg::dual_graph() const {
    if (!directed_.empty())
        throw std::invalid_argument("dual_graph is defined for purely bidirected graphs");
    UndirectedGraph out;
    out.n = n_;
    out.labels = labels_;
    out.adj.assign(n_, VertexSet());
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (a != b && !sib_[a].contains(b)) out.adj[a] |= VertexSet::single(b);
    return out;
}

std::string Admg::to_dot() const {
    std::ostringstream os;
    os << "digraph g {\n";
    for (int v = 0; v < n_; ++v) os << "  \"" << labels_[v] << "\";\n";
    for (auto [a, b] : directed_)
        os << "  \"" << labels_[a] << "\" -> \"" << labels_[b] << "\";\n";
    for (auto [a, b] : bidirected_)
        os << "  \"" << labels_[a] << "\" -> \"" << labels_[b] << "\" [dir=both];\n";
    os << "}\n";
    return os.str();
}

std::string Admg::to_text() const {
    std::ostringstream os;
    os << "vertices:";
    for (const auto& l : labels_) os << " " << l;
    os << "\n";
    for (auto [a, b] : directed_) os << labels_[a] << " -> " << labels_[b] << "\n";
    for (auto [a, b] : bidirected_) os << labels_[a] << " <-> " << labels_[b] << "\n";
    return os.str();
}

Admg parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> labels;
    std::map<std::string, int> id;
    bool saw_header = false;
    std::vector<std::pair<int, int>> dir, bid;

    auto vertex = [&](const std::string& lab) {
        auto it = id.find(lab);
        if (it != id.end()) return it->second;
        if (saw_header)
            throw ParseError("unknown vertex '" + lab + "' (not in vertices: header)", line_no);
        int v = static_cast<int>(labels.size());
        labels.push_back(lab);
        id[lab] = v;
        return v;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok[0] == "vertices:") {
            if (saw_header) throw ParseError("duplicate vertices: header", line_no);
            if (!labels.empty()) throw ParseError("vertices: header must come first", line_no);
            for (size_t i = 1; i < tok.size(); ++i) {
                if (id.count(tok[i])) throw ParseError("duplicate vertex '" + tok[i] + "'", line_no);
                id[tok[i]] = static_cast<int>(labels.size());
                labels.push_back(tok[i]);
            }
            saw_header = true;
            continue;
        }
        if (tok.size() != 3 || (tok[1] != "->" && tok[1] != "<->"))
            throw ParseError("expected '<a> -> <b>' or '<a> <-> <b>'", line_no);
        int a = vertex(tok[0]), b = vertex(tok[2]);
        if (tok[1] == "->")
            dir.push_back({a, b});
        else
            bid.push_back({a, b});
    }
    try {
        return Admg(static_cast<int>(labels.size()), dir, bid, labels);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("invalid graph: ") + e.what());
    }
}

Admg parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

bool m_separated_by_paths(const Admg& g, const CITriple& t) {
    VertexSet anc = g.ancestors(t.C);
    bool connected = false;
    VertexSet on_path;

    // extend(v, head_in): v is the tip of a simple path, reached by an edge
    // whose mark at v is head_in.  The passage test at v happens when the
    // path is extended past it; endpoints are exempt.
    std::function<void(int, int, bool)> extend = [&](int v, int head_in, bool source) {
        if (connected) return;
        auto step = [&](int w, int head_at_v, int head_at_w) {
            if (connected || on_path.contains(w)) return;
            if (!source) {
                bool collider = head_in == 1 && head_at_v == 1;
                bool pass = collider ? anc.contains(v) : !t.C.contains(v);
                if (!pass) return;
            }
            if (t.B.contains(w)) {
                connected = true;
                return;
            }
            on_path |= VertexSet::single(w);
            extend(w, head_at_w, false);
            on_path -= VertexSet::single(w);
        };
        for (int w : g.children(v)) step(w, 0, 1);
        for (int w : g.parents(v)) step(w, 1, 0);
        for (int w : g.siblings(v)) step(w, 1, 1);
    };

    for (int a : t.A) {
        if (connected) break;
        on_path = VertexSet::single(a);
        extend(a, 0, true);
    }
    return !connected;
}

} // namespace magset
