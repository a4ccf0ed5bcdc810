#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "barcalc/cli.hpp"
#include "barcalc/errors.hpp"

#include <cstdio>
#include <fstream>

using namespace barcalc;
using nlohmann::json;

namespace {

RunConfig config(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

std::vector<std::string> strings(const json& a) {
    return a.get<std::vector<std::string>>();
}

std::vector<long> longs(const json& a) { return a.get<std::vector<long>>(); }

json stripped(const ResultDocument& d) {
    json j = d.doc;
    j.erase("timings");
    return j;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& p, const std::string& content) : path(p) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kTruncPoly2 = R"({"ring":"F2","dim":2,
  "product":[[1,0,0,0],[0,1,1,0]],"unit":[[1],[0]],"aug":[[1,0]]})";

int run(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "barcalc");
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("em-homotopy reports K(G,n) homotopy groups") {
    auto c = config("em-homotopy");
    c.ring = "Z/5";
    c.n = 2;
    c.max_degree = 3;
    auto d = cmd_em_homotopy(c);
    CHECK(strings(d.doc["results"]["homotopy_groups"]) ==
          std::vector<std::string>{"0", "0", "Z/5", "0"});

    c.ring = "Z/2 x Z/4";
    c.n = 0;
    c.max_degree = 2;
    d = cmd_em_homotopy(c);
    CHECK(strings(d.doc["results"]["homotopy_groups"]) ==
          std::vector<std::string>{"Z/2 + Z/4", "0", "0"});

    c.ring = "Z";
    c.n = 1;
    c.max_degree = 2;
    d = cmd_em_homotopy(c);
    CHECK(strings(d.doc["results"]["homotopy_groups"]) == std::vector<std::string>{"0", "Z", "0"});
}

TEST_CASE("em-homology matches the known K(Z/2,1) answers") {
    auto c = config("em-homology");
    c.ring = "Z/2";
    c.n = 1;
    c.coeff = "Z";
    c.max_degree = 5;
    auto d = cmd_em_homology(c);
    CHECK(strings(d.doc["results"]["homology"]) ==
          std::vector<std::string>{"Z", "Z/2", "0", "Z/2", "0", "Z/2"});

    c.ring = "Z/3";
    c.coeff = "F3";
    c.max_degree = 4;
    d = cmd_em_homology(c);
    CHECK(longs(d.doc["results"]["dims"]) == std::vector<long>{1, 1, 1, 1, 1});

    c.ring = "Z/2";
    c.n = 2;
    c.coeff = "F2";
    c.max_degree = 3;
    d = cmd_em_homology(c);
    CHECK(longs(d.doc["results"]["dims"]) == std::vector<long>{1, 0, 1, 1});
}

TEST_CASE("em-homology rejects Z") {
    auto c = config("em-homology");
    c.ring = "Z";
    CHECK_THROWS_AS(cmd_em_homology(c), InfiniteLevel);
}

TEST_CASE("cup-table emits the nonzero pairing into H_2") {
    auto c = config("cup-table");
    c.ring = "Z/2";
    c.coeff = "F2";
    c.pair = "1,1:1,1";
    auto d = cmd_cup_table(c);
    auto& pr = d.doc["results"]["pairing"];
    CHECK(pr["dim_left"] == 1);
    CHECK(pr["dim_target"] == 1);
    CHECK(pr["entries"] == json::array({{0, 0, 1}}));
}

TEST_CASE("cup-table at (0,0) is the linearized multiplication table") {
    auto c = config("cup-table");
    c.ring = "Z/3";
    c.coeff = "F3";
    c.pair = "0,0:0,0";
    auto d = cmd_cup_table(c);
    auto& pr = d.doc["results"]["pairing"];
    CHECK(pr["dim_left"] == 3);
    CHECK(pr["entries"].size() == 9);
}

TEST_CASE("cup-table --verify-axioms passes for Z/6") {
    auto c = config("cup-table");
    c.ring = "Z/6";
    c.verify_axioms = true;
    c.nmax = 2;
    c.pmax = 2;
    c.cap = 50000;
    c.samples = 200;
    auto d = cmd_cup_table(c);
    CHECK(d.ok());
    CHECK(d.doc["results"]["axioms"].size() > 0);
}

TEST_CASE("hochschild homology of F_2[x]/x^2") {
    TempFile f("trunc_poly2.json", kTruncPoly2);
    auto c = config("hochschild");
    c.algebra = f.path;
    c.n = 1;
    c.max_degree = 4;
    auto d = cmd_hochschild(c);
    CHECK(longs(d.doc["results"]["dims"]) == std::vector<long>{1, 1, 1, 1, 1});

    c.n = 2;
    c.max_degree = 3;
    d = cmd_hochschild(c);
    CHECK(longs(d.doc["results"]["dims"]) == std::vector<long>{1, 0, 1, 1});
}

TEST_CASE("export-complex round trips byte-identically") {
    auto c = config("export-complex");
    c.ring = "Z/2";
    c.coeff = "F2";
    c.n = 1;
    c.max_degree = 3;
    auto d1 = cmd_export_complex(c);
    auto d2 = cmd_export_complex(c);
    CHECK(d1.doc["results"]["bytes_hash"] == d2.doc["results"]["bytes_hash"]);
    auto& complex = d1.doc["results"]["complex"];
    CHECK(complex["ring"] == "F2");
    for (const auto& deg : complex["degrees"]) CHECK(deg["rank"] == 1);
    for (const auto& df : complex["differentials"]) CHECK(df["entries"].empty());

    auto bytes = export_complex_json(import_complex_json(complex.dump()));
    CHECK(json::parse(bytes) == complex);
}

TEST_CASE("import rejects malformed complexes") {
    CHECK_THROWS_AS(import_complex_json(R"({"ring":"F2","degrees":[],"differentials":[]})"),
                    ParseError);
    CHECK_THROWS_AS(
        import_complex_json(
            R"({"ring":"F2","degrees":[{"degree":0,"rank":1,"torsion":[]}],
                "differentials":[{"from":2,"to":1,"entries":[]}]})"),
        ParseError);
}

TEST_CASE("verify runs green with default bounds") {
    auto c = config("verify");
    c.ring = "Z/2";
    c.samples = 200;
    auto d = cmd_verify(c);
    CHECK(d.ok());
    CHECK(d.doc["results"]["suites"].size() == 6);
}

TEST_CASE("verify naturality suite for Z/3 over F_3") {
    auto c = config("verify");
    c.ring = "Z/3";
    c.coeff = "F3";
    c.suite = "naturality";
    c.samples = 200;
    auto d = cmd_verify(c);
    CHECK(d.ok());
}

TEST_CASE("verify fault-injection mode reports failures with witnesses") {
    auto c = config("verify");
    c.ring = "Z/3";
    c.coeff = "F3";
    c.fault_injection = true;
    c.samples = 100;
    auto d = cmd_verify(c);
    CHECK_FALSE(d.ok());
    bool witnessed = false;
    for (const auto& suite : d.doc["results"]["suites"])
        if (!suite["ok"].get<bool>())
            for (const auto& item : suite["items"])
                if (!item["pass"].get<bool>() && item.contains("witness") &&
                    !item["witness"].get<std::string>().empty())
                    witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("result documents are deterministic modulo timings") {
    auto c = config("em-homology");
    c.ring = "Z/2";
    c.coeff = "F2";
    c.max_degree = 4;
    auto a = cmd_em_homology(c), b = cmd_em_homology(c);
    CHECK(stripped(a) == stripped(b));
    CHECK(stripped(a).dump() == stripped(b).dump());
    CHECK(a.doc["determinism_hash"] == b.doc["determinism_hash"]);

    auto v = config("verify");
    v.ring = "Z/2";
    v.suite = "axioms";
    v.nmax = 2;
    v.pmax = 2;
    v.cap = 2000;
    v.samples = 50;
    auto va = cmd_verify(v), vb = cmd_verify(v);
    CHECK(stripped(va) == stripped(vb));
}

TEST_CASE("exit codes follow the contract") {
    CHECK(run({"em-homotopy", "--ring", "Z/3", "--n", "1", "--max-degree", "1", "--output",
               "cli_out.json"}) == 0);
    std::remove("cli_out.json");
    CHECK(run({"em-homology", "--ring", "Z", "--output", "cli_out.json"}) == 2);
    CHECK(run({"em-homology", "--ring", "Z/not-a-ring", "--output", "cli_out.json"}) == 2);
    CHECK(run({"em-homology", "--ring", "Z/5", "--n", "2", "--max-degree", "3", "--cap", "10",
               "--output", "cli_out.json"}) == 3);
    CHECK(run({"verify", "--ring", "Z/2", "--suite", "axioms", "--fault-injection", "--samples",
               "50", "--output", "cli_out.json"}) == 4);
    std::remove("cli_out.json");
}

TEST_CASE("truncation below max_degree + 1 is refused") {
    auto c = config("em-homotopy");
    c.max_degree = 3;
    c.truncation = 3;
    CHECK_THROWS_AS(cmd_em_homotopy(c), ParseError);
}
