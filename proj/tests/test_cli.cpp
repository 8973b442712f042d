#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exactpart/cli.hpp"
#include "exactpart/io.hpp"
#include "oracles.hpp"

using namespace exactpart;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("exactpart_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) v.push_back(json::parse(l));
  return v;
}

const char* kPetersenJson = R"({"n": 10, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0],[0,5],[1,6],[2,7],[3,8],[4,9],[5,7],[7,9],[9,6],[6,8],[8,5]]})";

}  // namespace

TEST_CASE("parsers") {
  const Graph c5 = parse_dimacs("c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
  CHECK(c5 == graphs::cycle(5));
  CHECK(std::get<Graph>(parse_instance(to_dimacs(graphs::petersen()))) == graphs::petersen());
  CHECK(std::get<Graph>(parse_instance(kPetersenJson)) == graphs::petersen());
  const ExplicitSystem sys(Universe(4), {0b0011, 0b1100, 0b0110});
  const auto back = std::get<ExplicitSystem>(parse_instance(to_json(sys)));
  CHECK(back.sets() == sys.sets());
  CHECK_THROWS_AS((void)parse_dimacs("e 1 2\n"), InputError);
  CHECK_THROWS_AS((void)parse_dimacs("p edge 3 1\ne 1 4\n"), InputError);
  CHECK_THROWS_AS((void)parse_dimacs("p edge 3 1\ne 2 2\n"), InputError);
  CHECK_THROWS_AS((void)parse_dimacs("p edge 40 0\n"), InputError);
  CHECK_THROWS_AS((void)parse_dimacs("x 1\n"), InputError);
  CHECK_THROWS_AS((void)parse_instance("{\"n\": 3}"), InputError);
  CHECK_THROWS_AS((void)parse_instance("{\"n\": 3, \"sets\": [[0, 3]]}"), InputError);
  CHECK_THROWS_AS((void)parse_instance("{bad"), InputError);
}

TEST_CASE("color") {
  const std::string path = temp_file("petersen.json", kPetersenJson);
  const Run r = run({"color", path});
  REQUIRE(r.code == kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["chi"] == 3);
  CHECK(j["trace"]["cases"].size() == 4);
  CHECK(j["cost"].contains("modeled_quantum_queries"));
  // Same input, same bytes.
  CHECK(run({"color", path}).out == r.out);

  const std::string big = temp_file("k21.col", to_dimacs(graphs::complete(21)));
  CHECK(run({"color", big}).code == kExitResource);
  CHECK(run({"color", path, "--cap", "9"}).code == kExitResource);
  CHECK(run({"color", path, "--cap", "25"}).code == kExitInput);
  CHECK(run({"color", "/nonexistent/file.col"}).code == kExitInput);
  const std::string sys = temp_file("sys.json", R"({"n": 2, "sets": [[0]]})");
  CHECK(run({"color", sys}).code == kExitInput);
}

TEST_CASE("solve agrees with the oracle") {
  const Graph g = graphs::random(9, 0.45, 5);
  const int chi = oracle::chromatic(g);
  const std::string path = temp_file("g9.col", to_dimacs(g));
  for (const char* strategy : {"dde", "etd", "third"}) {
    for (int k = 1; k <= 9; ++k) {
      for (const char* mode : {"exact", "modular"}) {
        const Run r = run({"solve", path, "--kind", "cover", "--k", std::to_string(k), "--strategy", strategy,
                           "--mode", mode, "--witness"});
        REQUIRE(r.code == kExitOk);
        const json j = json::parse(r.out);
        CHECK(j["sat"] == (k >= chi));
        if (k >= chi) {
          Mask covered = 0;
          for (const auto& part : j["witness"]) {
            Mask s = 0;
            for (int v : part) s |= Mask{1} << v;
            CHECK(g.is_independent(s));
            covered |= s;
          }
          CHECK(covered == g.vertices());
        } else {
          CHECK(j["witness"].is_null());
        }
      }
    }
  }
}

TEST_CASE("solve on explicit systems and errors") {
  const std::string path = temp_file("sys4.json", R"({"n": 4, "sets": [[0,1],[2,3],[1,2],[0]]})");
  CHECK(json::parse(run({"solve", path, "--kind", "partition", "--k", "2"}).out)["sat"] == true);
  CHECK(json::parse(run({"solve", path, "--kind", "partition", "--k", "1"}).out)["sat"] == false);
  CHECK(json::parse(run({"solve", path, "--kind", "packing", "--k", "3"}).out)["sat"] == false);
  CHECK(run({"solve", path, "--k", "2", "--kind", "bogus"}).code == kExitInput);
  CHECK(run({"solve", path, "--k", "2", "--strategy", "dde", "--alpha", "0.2"}).code == kExitInput);
  CHECK(run({"solve", path, "--k", "2", "--strategy", "third", "--alpha", "0.1"}).code == kExitInput);
  CHECK(run({"solve", path, "--k", "0"}).code == kExitInput);
  CHECK(run({"solve", path}).code == kExitInput);
  const std::string big = temp_file("k21s.col", to_dimacs(graphs::complete(21)));
  CHECK(run({"solve", big, "--k", "3"}).code == kExitResource);

  const std::string c4 = temp_file("c4.col", to_dimacs(graphs::cycle(4)));
  const Run dom = run({"solve", c4, "--family", "dominating", "--kind", "packing", "--k", "2"});
  CHECK(json::parse(dom.out)["sat"] == true);
}

TEST_CASE("threads from the environment") {
  const std::string path = temp_file("g8.col", to_dimacs(graphs::random(8, 0.5, 3)));
  const std::string base = run({"solve", path, "--k", "3"}).out;
  ::setenv("EXACTPART_THREADS", "4", 1);
  CHECK(run({"solve", path, "--k", "3"}).out == base);
  ::setenv("EXACTPART_THREADS", "zero", 1);
  CHECK(run({"solve", path, "--k", "3"}).code == kExitInput);
  ::unsetenv("EXACTPART_THREADS");
}

TEST_CASE("enum") {
  const Graph g = graphs::random(8, 0.4, 9);
  const std::string path = temp_file("g8e.col", to_dimacs(g));
  const auto mis = lines(run({"enum", path, "--what", "mis"}).out);
  REQUIRE(!mis.empty());
  CHECK(mis.back()["schema"] == 1);
  CHECK(mis.size() - 1 == oracle::maximal_independent_sets(g, g.vertices()).size());
  const auto dom = lines(run({"enum", path, "--what", "min-dom"}).out);
  CHECK(dom.size() - 1 == oracle::minimal_dominating_in(g, g.vertices()).size());
  const auto covers = lines(run({"enum", path, "--what", "minimal-covers"}).out);
  CHECK(covers.size() - 1 == dom.size() - 1);
  CHECK(covers.back()["stats"]["measure_violations"] == 0);
  CHECK(run({"enum", path, "--what", "cliques"}).code == kExitInput);
}

TEST_CASE("cost-table") {
  const Run r = run({"cost-table", "--cmin", "1.0", "--cmax", "1.08", "--step", "0.01"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "c,alpha_star,base_main,base_smallc,base_smallc2,best_strategy,best");
  std::getline(in, line);
  CHECK(line.rfind("1.0,0.2361", 0) == 0);
  CHECK(line.find(",1.7274") != std::string::npos);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);

  const json one = json::parse(run({"cost-table", "--c", "1.5"}).out);
  CHECK(one["schema"] == 1);
  CHECK(one["alpha_star"].is_null());
  CHECK(one["best"]["strategy"] == "DivideDivideEnumerate");

  const fs::path dat = fs::temp_directory_path() / "exactpart_cli_third.dat";
  CHECK(run({"cost-table", "--cmin", "1.0", "--cmax", "1.01", "--dat", dat.string()}).code == kExitOk);
  std::ifstream d(dat);
  std::getline(d, line);
  CHECK(line == "c b");
  std::getline(d, line);
  CHECK(line.rfind("1.0000 1.7273", 0) == 0);

  CHECK(run({"cost-table", "--cmin", "1.5", "--cmax", "1.2"}).code == kExitInput);
  CHECK(run({"cost-table", "--step", "0"}).code == kExitInput);
}

TEST_CASE("domatic, gen, bench and output file") {
  const std::string c4 = temp_file("c4d.col", to_dimacs(graphs::cycle(4)));
  const json d = json::parse(run({"domatic", c4}).out);
  CHECK(d["domatic"] == 2);
  CHECK(d["classes"].size() == 2);
  const std::string big = temp_file("k17.col", to_dimacs(graphs::complete(17)));
  CHECK(run({"domatic", big}).code == kExitResource);

  const Run g1 = run({"gen", "--n", "9", "--p", "0.3", "--seed", "4"});
  CHECK(g1.out == run({"gen", "--n", "9", "--p", "0.3", "--seed", "4"}).out);
  CHECK(std::get<Graph>(parse_instance(g1.out)) == graphs::random(9, 0.3, 4));
  const Run s1 = run({"gen", "--type", "system", "--n", "6", "--m", "5", "--seed", "2"});
  const auto sys = std::get<ExplicitSystem>(parse_instance(s1.out));
  CHECK(sys.sets().size() == 5);
  CHECK(run({"gen", "--n", "40"}).code == kExitInput);

  const auto b = lines(run({"bench", "--n-min", "8", "--n-max", "9"}).out);
  REQUIRE(b.size() >= 2);
  for (const auto& j : b) CHECK(j["log2_queries_per_n"].get<double>() > 0.0);

  const fs::path out = fs::temp_directory_path() / "exactpart_cli_out.json";
  const Run w = run({"-o", out.string(), "domatic", c4});
  CHECK(w.code == kExitOk);
  CHECK(w.out.empty());
  std::ifstream f(out);
  json back;
  f >> back;
  CHECK(back["domatic"] == 2);

  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}
