#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "magset/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Workdir {
    fs::path dir;
    Workdir() : dir(fs::temp_directory_path() / "magset_cli_test") {
        fs::create_directories(dir);
    }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = dir / name;
        std::ofstream(p) << content;
        return p.string();
    }
};

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = magset::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kFig4 = "vertices: 1 2 3 4\n1 <-> 2\n3 <-> 4\n1 -> 4\n3 -> 2\n";
const char* kCycle5 =
    "vertices: 1 2 3 4 5\n1 <-> 2\n2 <-> 3\n3 <-> 4\n4 <-> 5\n5 <-> 1\n";

} // namespace

TEST_CASE("verdict and check") {
    Workdir w;
    std::string fig4 = w.file("fig4.mag", kFig4);
    std::string cycle5 = w.file("cycle5.mag", kCycle5);

    Run v = cli({"verdict", fig4});
    CHECK(v.code == 0);
    CHECK(v.out.find("perfectly_markovian: true") != std::string::npos);

    Run c = cli({"check", cycle5});
    CHECK(c.code == 0);
    CHECK(c.out ==
          "{\"combinatorial\": true, \"structural\": 1, \"markovian\": false, "
          "\"faithful\": true, \"perfectly_markovian\": false}\n");

    // --strict turns the negative verdict into exit 1
    CHECK(cli({"--strict", "check", cycle5}).code == 1);
    CHECK(cli({"--strict", "check", fig4}).code == 0);
}

TEST_CASE("missing files exit 2") {
    CHECK(cli({"imset", "/nonexistent/path.mag"}).code == 2);
    CHECK(cli({"nonsense-command"}).code == 2);
    CHECK(cli({"check"}).code == 2);
}

TEST_CASE("imset output is byte stable") {
    Workdir w;
    std::string fig4 = w.file("fig4.mag", kFig4);
    Run a = cli({"imset", fig4});
    CHECK(a.code == 0);
    CHECK(a.out ==
          "{}: 1\n{1}: -1\n{3}: -1\n{1,3}: 2\n{1,2,3}: -1\n{1,3,4}: -1\n{1,2,3,4}: 1\n");
    Run b = cli({"imset", fig4});
    CHECK(a.out == b.out);

    Run c = cli({"imset", "--characteristic", fig4});
    CHECK(c.out.find("{}: 1\n{1}: 1\n") == 0);
}

TEST_CASE("heads and pset listings") {
    Workdir w;
    std::string fig4 = w.file("fig4.mag", kFig4);
    Run h = cli({"heads", fig4});
    CHECK(h.out.find("{1,2} | {3}") != std::string::npos);
    CHECK(h.out.find("{3,4} | {1}") != std::string::npos);

    Run p = cli({"pset", fig4});
    CHECK(p.out.find("{1,2,3}\n") != std::string::npos);
    CHECK(p.out.find("{1,3}\n") == std::string::npos);
}

TEST_CASE("markov lists and orders") {
    Workdir w;
    std::string fig4 = w.file("fig4.mag", kFig4);
    Run local = cli({"markov", fig4});
    CHECK(local.code == 0);
    CHECK(local.out.find("_||_") != std::string::npos);

    Run ordered = cli({"markov", fig4, "--order", "1,3,2,4"});
    CHECK(ordered.code == 0);
    CHECK(cli({"markov", fig4, "--order", "1,2,3,4"}).code == 2);  // not topological
}

TEST_CASE("decompose prints a zero residual") {
    Workdir w;
    Run r = cli({"decompose", w.file("fig4.mag", kFig4)});
    CHECK(r.code == 0);
    CHECK(r.out.find("residual: 0\n") != std::string::npos);
}

TEST_CASE("powerdag dot mode") {
    Workdir w;
    std::string g = w.file("fig13.mag",
                           "vertices: 1 2 3 4 5 6\n1 -> 5\n2 -> 6\n3 -> 4\n1 <-> 2\n1 <-> 3\n"
                           "2 <-> 3\n2 <-> 5\n3 <-> 6\n1 <-> 4\n");
    Run r = cli({"powerdag", g, "-i", "6", "--dot"});
    CHECK(r.code == 0);
    CHECK(r.out.find("digraph powerdag") == 0);
    CHECK(r.out.find("label=\"{3},{3,5}\"") != std::string::npos);
}

TEST_CASE("bidirected report") {
    Workdir w;
    Run r = cli({"bidirected", w.file("cycle5.mag", kCycle5)});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"rooted\": false, \"witness_order\": [], \"forbidden_hits\": [\"b5\"]}\n");
    CHECK(cli({"--strict", "bidirected", w.file("cycle5.mag", kCycle5)}).code == 1);
}

TEST_CASE("closure with rules") {
    Workdir w;
    std::string g = w.file("pair.mag", "vertices: 1 2 3\n");
    std::string triples = w.file("triples.txt", "1 _||_ 2,3\n");
    Run r = cli({"closure", triples, "--graph", g});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 _||_ 2 | 3\n") != std::string::npos);
    CHECK(cli({"closure", triples, "--graph", g, "--rules", "bogus"}).code == 2);
}

TEST_CASE("msep query") {
    Workdir w;
    std::string g = w.file("fig4.mag", kFig4);
    Run sep = cli({"msep", g, "1 _||_ 3"});
    CHECK(sep.out == "separated\n");
    Run con = cli({"msep", g, "1 _||_ 2"});
    CHECK(con.out == "connected\n");
}

TEST_CASE("score command emits one json line") {
    Workdir w;
    std::string g = w.file("pair.mag", "vertices: a b\n");
    std::string csv = w.file("data.csv", "a,b\n0,0\n0,1\n1,0\n1,1\n");
    Run r = cli({"score", g, csv});
    CHECK(r.code == 0);
    CHECK(r.out.find("{\"score\": ") == 0);
    CHECK(r.out.find("\"dimension\": 2") != std::string::npos);
    CHECK(r.out.find("\"N\": 4") != std::string::npos);
}

TEST_CASE("census command") {
    Run r = cli({"census", "-n", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("class_id,", 0) == 0);
    CHECK(r.err.find("classes: 5") != std::string::npos);
    // n=7 without the edge filter is refused
    CHECK(cli({"census", "-n", "7"}).code == 2);
}

TEST_CASE("dot export command") {
    Workdir w;
    Run r = cli({"dot", w.file("fig4.mag", kFig4)});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph g {", 0) == 0);
    CHECK(r.out.find("dir=both") != std::string::npos);
}
