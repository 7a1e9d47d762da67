#include "magset/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "magset/bidirected.hpp"
#include "magset/census.hpp"
#include "magset/scoring.hpp"

namespace magset::cli {

namespace {

std::string triple_text(const CITriple& t, const std::vector<std::string>& labels) {
    auto side = [&](VertexSet s) {
        std::string out;
        bool first = true;
        for (int v : s) {
            if (!first) out += ",";
            out += labels[v];
            first = false;
        }
        return out;
    };
    std::string out = side(t.A) + " _||_ " + side(t.B);
    if (!t.C.empty()) out += " | " + side(t.C);
    return out;
}

CITriple parse_triple(const std::string& line, const std::vector<std::string>& labels) {
    auto find_label = [&](const std::string& lab) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == lab) return static_cast<int>(i);
        throw std::runtime_error("unknown vertex label '" + lab + "' in triple: " + line);
    };
    auto parse_side = [&](std::string part) {
        VertexSet out;
        std::istringstream is(part);
        std::string item;
        while (std::getline(is, item, ',')) {
            // trim
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
                item.erase(item.begin());
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
                item.pop_back();
            if (!item.empty()) out |= VertexSet::single(find_label(item));
        }
        return out;
    };
    auto sep = line.find("_||_");
    if (sep == std::string::npos)
        throw std::runtime_error("expected 'A _||_ B | C' in: " + line);
    std::string a = line.substr(0, sep);
    std::string rest = line.substr(sep + 4);
    auto bar = rest.find('|');
    std::string b = (bar == std::string::npos) ? rest : rest.substr(0, bar);
    std::string c = (bar == std::string::npos) ? "" : rest.substr(bar + 1);
    return CITriple(parse_side(a), parse_side(b), parse_side(c));
}

std::vector<int> parse_order(const std::string& text, const Admg& g) {
    std::vector<int> order;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto id = g.id_of(item);
        if (!id) throw std::runtime_error("--order: unknown vertex label '" + item + "'");
        order.push_back(*id);
    }
    if (!g.is_topological(order))
        throw std::runtime_error("--order: not a topological order of the graph");
    return order;
}

struct Ctx {
    std::ostream* out;
    std::ostream* err;
    bool strict = false;
    int exit_code = 0;
};

void print_list(Ctx& ctx, const IndependenceList& list, const std::vector<std::string>& labels) {
    for (const auto& item : list.items())
        *ctx.out << triple_text(item.triple, labels) << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"imsets, Markov properties and power DAGs of maximal ancestral graphs"};
    app.require_subcommand(1);
    Ctx ctx{&out, &err};

    bool strict = false;
    app.add_flag("--strict", strict, "exit 1 on analysis-negative verdicts");

    std::string order_text;

    // heads
    auto* cmd_heads = app.add_subcommand("heads", "list heads and tails");
    std::string heads_path;
    cmd_heads->add_option("graph", heads_path)->required();
    cmd_heads->callback([&] {
        Admg g = parse_graph_file(heads_path);
        for (const auto& hr : enumerate_heads(g))
            out << set_to_text(hr.head, g.labels()) << " | " << set_to_text(hr.tail, g.labels())
                << "\n";
    });

    // pset
    auto* cmd_pset = app.add_subcommand("pset", "list the parametrizing sets S(G)");
    std::string pset_path;
    cmd_pset->add_option("graph", pset_path)->required();
    cmd_pset->callback([&] {
        Admg g = parse_graph_file(pset_path);
        for (VertexSet s : parametrizing_sets(g).sets) out << set_to_text(s, g.labels()) << "\n";
    });

    // imset
    auto* cmd_imset = app.add_subcommand("imset", "print the standard imset");
    std::string imset_path;
    bool characteristic = false;
    cmd_imset->add_option("graph", imset_path)->required();
    cmd_imset->add_flag("--characteristic", characteristic, "print the characteristic imset");
    cmd_imset->callback([&] {
        Admg g = parse_graph_file(imset_path);
        Imset u = characteristic ? characteristic_imset(g) : standard_imset(g);
        out << imset_to_text(u, g.labels());
    });

    // check
    auto* cmd_check = app.add_subcommand("check", "one-line classification record");
    std::string check_path;
    cmd_check->add_option("graph", check_path)->required();
    cmd_check->callback([&] {
        Admg g = parse_graph_file(check_path);
        Verdict v = verdict(g);
        out << v.to_json() << "\n";
        if (strict && !v.perfectly_markovian) ctx.exit_code = 1;
    });

    // verdict
    auto* cmd_verdict = app.add_subcommand("verdict", "full classification, one field per line");
    std::string verdict_path;
    cmd_verdict->add_option("graph", verdict_path)->required();
    cmd_verdict->callback([&] {
        Admg g = parse_graph_file(verdict_path);
        Verdict v = verdict(g);
        out << "combinatorial: " << (v.combinatorial ? "true" : "false") << "\n";
        out << "structural: ";
        if (v.structural_k)
            out << "k=" << *v.structural_k << "\n";
        else
            out << "false\n";
        out << "markovian: " << (v.markovian ? "true" : "false") << "\n";
        out << "faithful: " << (v.faithful ? "true" : "false") << "\n";
        out << "perfectly_markovian: " << (v.perfectly_markovian ? "true" : "false") << "\n";
        if (strict && !v.perfectly_markovian) ctx.exit_code = 1;
    });

    // markov
    auto* cmd_markov = app.add_subcommand("markov", "independence lists");
    std::string markov_path;
    bool m_local = false, m_simple = false, m_complete = false, m_refined = false;
    cmd_markov->add_option("graph", markov_path)->required();
    cmd_markov->add_flag("--local", m_local, "ordered local Markov property (default)");
    cmd_markov->add_flag("--simple", m_simple, "simple-MAG decomposition list");
    cmd_markov->add_flag("--complete", m_complete, "head-and-tail list (complete power DAGs)");
    cmd_markov->add_flag("--refined", m_refined, "refined list (one statement per head)");
    cmd_markov->add_option("--order", order_text, "topological order as comma-separated labels");
    cmd_markov->callback([&] {
        Admg g = parse_graph_file(markov_path);
        std::vector<int> order =
            order_text.empty() ? g.canonical_topological_order() : parse_order(order_text, g);
        IndependenceList list =
            m_simple     ? simple_decomposition(g, order)
            : m_complete ? markov_list(g, PowerDagMode::Complete, order)
            : m_refined  ? markov_list(g, PowerDagMode::Refined, order)
                         : ordered_local_markov(g, order);
        print_list(ctx, list, g.labels());
    });

    // closure
    auto* cmd_closure = app.add_subcommand("closure", "graphoid closure of a triple list");
    std::string closure_path, rules_text = "semi-graphoids", closure_graph;
    cmd_closure->add_option("triples", closure_path, "file with one 'A _||_ B | C' per line")
        ->required();
    cmd_closure->add_option("--rules", rules_text,
                            "comma list from: semi-graphoids, intersection, composition, "
                            "singleton-transitivity, ordered-upward, ordered-downward");
    cmd_closure->add_option("--graph", closure_graph,
                            "graph supplying the labels and the ancestor partial order");
    cmd_closure->callback([&] {
        if (closure_graph.empty())
            throw std::runtime_error("closure: --graph is required (labels and vertex order)");
        Admg g = parse_graph_file(closure_graph);
        std::ifstream in(closure_path);
        if (!in) throw std::runtime_error("cannot open triple file: " + closure_path);
        std::vector<CITriple> start;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            start.push_back(parse_triple(line, g.labels()));
        }
        GraphoidRules rules;
        rules.semi_graphoids = false;
        std::istringstream rs(rules_text);
        std::string r;
        while (std::getline(rs, r, ',')) {
            if (r == "semi-graphoids")
                rules.semi_graphoids = true;
            else if (r == "intersection")
                rules.intersection = true;
            else if (r == "composition")
                rules.composition = true;
            else if (r == "singleton-transitivity")
                rules.singleton_transitivity = true;
            else if (r == "ordered-upward")
                rules.ordered_upward = true;
            else if (r == "ordered-downward")
                rules.ordered_downward = true;
            else
                throw std::runtime_error("closure: unknown rule '" + r + "'");
        }
        PartialOrder po;
        po.n = g.n();
        po.strictly_below.resize(g.n());
        for (int v = 0; v < g.n(); ++v) po.strictly_below[v] = g.ancestors(v).without(v);
        TripleSet closed = graphoid_closure(start, rules, &po);
        std::vector<CITriple> sorted(closed.begin(), closed.end());
        std::sort(sorted.begin(), sorted.end());
        for (const auto& t : sorted) out << triple_text(t, g.labels()) << "\n";
    });

    // powerdag
    auto* cmd_pd = app.add_subcommand("powerdag", "power DAG of one vertex");
    std::string pd_path, pd_vertex;
    bool pd_refined = false, pd_dot = false;
    cmd_pd->add_option("graph", pd_path)->required();
    cmd_pd->add_option("-i,--vertex", pd_vertex, "anchor vertex label")->required();
    cmd_pd->add_flag("--refined", pd_refined);
    cmd_pd->add_flag("--dot", pd_dot);
    cmd_pd->add_option("--order", order_text, "topological order as comma-separated labels");
    cmd_pd->callback([&] {
        Admg g = parse_graph_file(pd_path);
        auto id = g.id_of(pd_vertex);
        if (!id) throw std::runtime_error("powerdag: unknown vertex '" + pd_vertex + "'");
        std::vector<int> order =
            order_text.empty() ? g.canonical_topological_order() : parse_order(order_text, g);
        PowerDagComponent pd =
            pd_refined ? refined_power_dag(g, *id, order) : complete_power_dag(g, *id, order);
        if (pd_dot) {
            out << power_dag_to_dot(g, pd);
        } else {
            for (const auto& h : pd.nodes)
                out << set_to_text(h.head, g.labels()) << " | tail "
                    << set_to_text(h.tail, g.labels()) << "\n";
            for (const auto& e : pd.edges) {
                out << set_to_text(e.from.head, g.labels()) << " -> "
                    << set_to_text(e.to.head, g.labels()) << " [K:";
                for (VertexSet k : e.all_k()) out << " " << set_to_text(k, g.labels());
                out << "]\n";
            }
        }
        for (const auto& w : pd.warnings) err << "warning: " << w << "\n";
    });

    // decompose
    auto* cmd_dec = app.add_subcommand("decompose", "signed head decomposition of the imset");
    std::string dec_path;
    cmd_dec->add_option("graph", dec_path)->required();
    cmd_dec->add_option("--order", order_text, "topological order as comma-separated labels");
    cmd_dec->callback([&] {
        Admg g = parse_graph_file(dec_path);
        std::vector<int> order =
            order_text.empty() ? g.canonical_topological_order() : parse_order(order_text, g);
        SignedDecomposition dec = decompose_standard_imset(g, order);
        for (const auto& t : dec.terms)
            out << (t.coefficient > 0 ? "+1 " : "-1 ") << triple_text(t.triple, g.labels())
                << "\n";
        Imset residual = standard_imset(g) - dec.sum(g.n());
        if (residual.is_zero())
            out << "residual: 0\n";
        else
            out << "residual: " << imset_to_text(residual, g.labels());
    });

    // bidirected
    auto* cmd_bi = app.add_subcommand("bidirected", "rooted criterion and forbidden duals");
    std::string bi_path;
    bool bi_list = false, bi_exhaustive = false;
    cmd_bi->add_option("graph", bi_path)->required();
    cmd_bi->add_flag("--list", bi_list, "also print the rooted decomposition list");
    cmd_bi->add_flag("--exhaustive", bi_exhaustive, "full order backtracking, no memo");
    cmd_bi->callback([&] {
        Admg g = parse_graph_file(bi_path);
        auto witness = rooted_condition(g, bi_exhaustive);
        auto hits = forbidden_scan(g);
        out << "{\"rooted\": " << (witness ? "true" : "false") << ", \"witness_order\": [";
        if (witness) {
            bool first = true;
            for (int v : witness->order) {
                if (!first) out << ",";
                out << "\"" << g.label(v) << "\"";
                first = false;
            }
        }
        out << "], \"forbidden_hits\": [";
        bool first = true;
        for (const auto& h : hits) {
            if (!first) out << ",";
            out << "\"" << h.pattern << "\"";
            first = false;
        }
        out << "]}\n";
        if (witness && bi_list) print_list(ctx, rooted_decomposition(g, *witness), g.labels());
        if (strict && !witness) ctx.exit_code = 1;
    });

    // census
    auto* cmd_census = app.add_subcommand("census", "enumerate and classify MAG classes");
    CensusOptions copt;
    std::string census_out_dir, census_edges;
    cmd_census->add_option("-n", copt.n, "vertex count")->required();
    cmd_census->add_flag("--connected", copt.connected_only);
    cmd_census->add_option("--jobs", copt.jobs);
    cmd_census->add_option("--resume", copt.resume_dir, "checkpoint directory");
    cmd_census->add_option("--out", census_out_dir, "directory for failing representatives");
    bool no_classify = false, no_trust_simple = false;
    cmd_census->add_flag("--no-classify", no_classify);
    cmd_census->add_flag("--no-trust-simple", no_trust_simple,
                         "run the imset machinery even for simple classes");
    cmd_census->add_option("--edge-filter", census_edges, "lo,hi: keep classes with <=lo or >=hi edges");
    cmd_census->callback([&] {
        copt.classify = !no_classify;
        copt.trust_simple = !no_trust_simple;
        if (!census_edges.empty()) {
            auto comma = census_edges.find(',');
            if (comma == std::string::npos)
                throw std::runtime_error("--edge-filter expects lo,hi");
            copt.edge_filter = {std::stoi(census_edges.substr(0, comma)),
                                std::stoi(census_edges.substr(comma + 1))};
        }
        if (copt.n == 7 && !copt.edge_filter)
            throw std::runtime_error("census: n=7 requires --edge-filter (full run not supported)");
        copt.log = &err;
        CensusResult res = run_census(copt);
        out << census_csv(res, census_out_dir);
        err << "classes: " << res.classes << ", imperfect: " << res.imperfect
            << ", non-combinatorial: " << res.non_combinatorial
            << ", non-structural: " << res.non_structural << "\n";
    });

    // score
    auto* cmd_score = app.add_subcommand("score", "characteristic-imset score of data");
    std::string score_graph, score_csvp;
    cmd_score->add_option("graph", score_graph)->required();
    cmd_score->add_option("data", score_csvp, "csv with a header of column labels")->required();
    cmd_score->callback([&] {
        Admg g = parse_graph_file(score_graph);
        EmpiricalTable t = EmpiricalTable::from_csv_file(score_csvp);
        ScoreReport rep = imset_score(g, t);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "{\"score\": %.12g, \"inner\": %.12g, \"dimension\": %ld, \"N\": %ld}",
                      rep.score, rep.inner, rep.dimension, rep.samples);
        out << buf << "\n";
    });

    // dot
    auto* cmd_dot = app.add_subcommand("dot", "DOT export of a graph");
    std::string dot_path;
    cmd_dot->add_option("graph", dot_path)->required();
    cmd_dot->callback([&] { out << parse_graph_file(dot_path).to_dot(); });

    // msep
    auto* cmd_msep = app.add_subcommand("msep", "test one m-separation statement");
    std::string msep_path, msep_triple;
    cmd_msep->add_option("graph", msep_path)->required();
    cmd_msep->add_option("triple", msep_triple, "statement 'A _||_ B | C'")->required();
    cmd_msep->callback([&] {
        Admg g = parse_graph_file(msep_path);
        bool sep = g.m_separated(parse_triple(msep_triple, g.labels()));
        out << (sep ? "separated" : "connected") << "\n";
        if (strict && !sep) ctx.exit_code = 1;
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return ctx.exit_code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace magset::cli
