#include "exactpart/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "exactpart/costmodel.hpp"
#include "exactpart/io.hpp"

namespace exactpart {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int kSolveCap = 20;
constexpr int kDomaticCap = 16;

struct RunConfig {
  std::string input;
  std::string output;
  std::string kind = "cover";
  std::string family = "independent";
  int k = 0;
  std::string strategy = "dde";
  std::string alpha;
  std::string mode = "exact";
  bool witness = false;
  std::string what = "mis";
  int cap = kChromaticCap;
  double cmin = 1.0;
  double cmax = 2.0;
  double step = 0.01;
  std::optional<double> c;
  std::string dat;
  std::string gen_type = "graph";
  int n = 10;
  int m = 10;
  double p = 0.5;
  std::uint64_t seed = 1;
  int n_min = 12;
  int n_max = 16;
};

CountOptions count_options(const RunConfig& cfg) {
  CountOptions o;
  o.arithmetic = cfg.mode == "modular" ? Arithmetic::modular : Arithmetic::exact;
  if (const char* env = std::getenv("EXACTPART_THREADS")) {
    char* end = nullptr;
    const long t = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || t < 1 || t > 256) {
      throw InputError("EXACTPART_THREADS must be an integer in 1..256");
    }
    o.threads = static_cast<int>(t);
  }
  return o;
}

ojson elements_json(Mask m) { return ojson(elements(m)); }

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shortest form with at least one decimal: 1 -> "1.0", 1.01 -> "1.01".
std::string short_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

Graph require_graph(const Instance& inst, const char* cmd) {
  if (const Graph* g = std::get_if<Graph>(&inst)) return *g;
  throw InputError(std::string(cmd) + " needs a graph (DIMACS or JSON with \"edges\")");
}

int cmd_color(const RunConfig& cfg, std::ostream& out) {
  if (cfg.cap < 1 || cfg.cap > kChromaticCap) throw InputError("--cap must lie in 1..20");
  const Graph g = require_graph(read_instance(cfg.input), "color");
  if (g.order() > cfg.cap) {
    throw ResourceLimit("graph has " + std::to_string(g.order()) + " vertices, cap is " + std::to_string(cfg.cap));
  }
  const ChromaticResult r = chromatic_pipeline(g, count_options(cfg), cfg.cap);
  ojson j;
  j["schema"] = kSchemaVersion;
  j["chi"] = r.chi;
  j["trace"] = to_json(r.trace);
  j["cost"] = to_json(r.cost);
  out << j.dump() << '\n';
  return kExitOk;
}

ProblemKind parse_kind(const std::string& s) { return parse_problem_kind(s); }

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = read_instance(cfg.input);
  const ProblemKind kind = parse_kind(cfg.kind);
  Strategy strategy{parse_strategy(cfg.strategy), Alpha(1, 4)};
  if (strategy.tag == StrategyTag::third_level) strategy.alpha = Alpha(1, 5);
  if (!cfg.alpha.empty()) strategy.alpha = Alpha::parse(cfg.alpha);
  strategy.validate();
  if (cfg.k < 1) throw InputError("--k must be at least 1");

  ImplicitFamily fam = [&]() -> ImplicitFamily {
    if (const Graph* g = std::get_if<Graph>(&inst)) {
      if (cfg.family == "independent") return independent_family(*g);
      if (cfg.family == "dominating") return dominating_family(*g);
      throw InputError("--family must be independent or dominating");
    }
    return explicit_family(std::get<ExplicitSystem>(inst));
  }();
  const int n = fam.universe.size();
  if (n > kSolveCap) throw ResourceLimit("universe has " + std::to_string(n) + " elements, cap is 20");

  SolverOptions so;
  so.counts = count_options(cfg);
  DncSolver solver(std::move(fam), kind, strategy, so);
  const SolveResult r = solver.solve(cfg.k);
  ojson j;
  j["schema"] = kSchemaVersion;
  j["kind"] = to_string(kind);
  j["k"] = cfg.k;
  j["strategy"] = to_string(strategy.tag);
  j["alpha"] = strategy.alpha.str();
  j["mode"] = cfg.mode;
  j["sat"] = r.sat;
  j["cost"] = to_json(r.cost);
  if (cfg.witness) {
    const auto w = solver.witness(cfg.k);
    if (w.has_value() != r.sat) throw std::logic_error("witness disagrees with the decision");
    if (w) {
      ojson parts = ojson::array();
      for (Mask s : *w) parts.push_back(elements_json(s));
      j["witness"] = parts;
    } else {
      j["witness"] = nullptr;
    }
  }
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_enum(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = read_instance(cfg.input);
  BranchStats stats;
  if (cfg.what == "mis" || cfg.what == "min-dom") {
    const Graph g = require_graph(inst, "enum");
    auto emit = [&](Mask s) {
      ojson line;
      line["set"] = elements_json(s);
      out << line.dump() << '\n';
      return true;
    };
    stats = cfg.what == "mis" ? enum_mis(g, g.vertices(), emit) : enum_min_dom_in(g, g.vertices(), emit);
  } else if (cfg.what == "minimal-covers") {
    const ExplicitSystem sys = std::holds_alternative<Graph>(inst)
                                   ? neighborhood_system(std::get<Graph>(inst), std::get<Graph>(inst).vertices())
                                   : std::get<ExplicitSystem>(inst);
    stats = enum_minimal_covers(sys, [&](const std::vector<int>& idx) {
      ojson line;
      line["cover"] = idx;
      out << line.dump() << '\n';
      return true;
    });
  } else {
    throw InputError("--what must be mis, minimal-covers or min-dom");
  }
  ojson last;
  last["schema"] = kSchemaVersion;
  last["stats"] = to_json(stats);
  out << last.dump() << '\n';
  return kExitOk;
}

ojson row_json(const CostRow& r) {
  ojson j;
  j["c"] = r.c;
  j["alpha_star"] = r.alpha_star ? ojson(*r.alpha_star) : ojson(nullptr);
  j["base_main"] = r.base_main;
  j["base_smallc"] = r.base_smallc;
  j["base_smallc2"] = r.base_smallc2 ? ojson(*r.base_smallc2) : ojson(nullptr);
  j["best"] = {{"strategy", to_string(r.best.strategy)}, {"base", r.best.base}};
  return j;
}

int cmd_cost_table(const RunConfig& cfg, std::ostream& out) {
  if (cfg.c) {
    ojson j;
    j["schema"] = kSchemaVersion;
    ojson row = row_json(cost_row(*cfg.c));
    for (auto it = row.begin(); it != row.end(); ++it) j[it.key()] = it.value();
    out << j.dump() << '\n';
  } else {
    const auto rows = cost_table(cfg.cmin, cfg.cmax, cfg.step);
    out << "c,alpha_star,base_main,base_smallc,base_smallc2,best_strategy,best\n";
    for (const CostRow& r : rows) {
      out << short_decimal(r.c) << ',' << (r.alpha_star ? fixed(*r.alpha_star, 6) : "") << ','
          << fixed(r.base_main, 4) << ',' << fixed(r.base_smallc, 4) << ','
          << (r.base_smallc2 ? fixed(*r.base_smallc2, 4) : "") << ',' << to_string(r.best.strategy) << ','
          << fixed(r.best.base, 4) << '\n';
    }
  }
  if (!cfg.dat.empty()) {
    // Two-column table of the ThirdLevel curve, as read by pgfplots.
    std::ofstream dat(cfg.dat);
    if (!dat) throw InputError("cannot write " + cfg.dat);
    dat << "c b\n";
    for (int i = 0; i <= 872; ++i) {
      const double c = 1.0 + i / 10000.0;
      dat << fixed(c, 4) << ' ' << fixed(base_smallc2(c).base, 6) << '\n';
    }
  }
  return kExitOk;
}

int cmd_domatic(const RunConfig& cfg, std::ostream& out) {
  const Graph g = require_graph(read_instance(cfg.input), "domatic");
  if (g.order() < 1) throw InputError("domatic number needs at least one vertex");
  if (g.order() > kDomaticCap) throw ResourceLimit("graph has " + std::to_string(g.order()) + " vertices, cap is 16");
  const DomaticResult r = domatic_number(g);
  ojson j;
  j["schema"] = kSchemaVersion;
  j["domatic"] = r.domatic;
  ojson classes = ojson::array();
  for (Mask c : r.classes) classes.push_back(elements_json(c));
  j["classes"] = classes;
  j["cost"] = to_json(r.cost);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.n > kMaxUniverse) throw InputError("--n must lie in 1..32");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw InputError("--p must lie in [0, 1]");
  if (cfg.gen_type == "graph") {
    out << to_dimacs(graphs::random(cfg.n, cfg.p, cfg.seed));
    return kExitOk;
  }
  if (cfg.gen_type != "system") throw InputError("--type must be graph or system");
  if (cfg.m < 0 || cfg.m > 4096) throw InputError("--m must lie in 0..4096");
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution bit(cfg.p);
  std::vector<Mask> sets;
  int attempts = 0;
  while (static_cast<int>(sets.size()) < cfg.m && attempts < 100 * (cfg.m + 1)) {
    ++attempts;
    Mask s = 0;
    for (int v = 0; v < cfg.n; ++v)
      if (bit(rng)) s |= Mask{1} << v;
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
  }
  out << to_json(ExplicitSystem(Universe(cfg.n), std::move(sets)));
  return kExitOk;
}

// Coloring as k-cover by independent sets, at k = χ and k = χ − 1.
int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_min < 1 || cfg.n_max > kSolveCap || cfg.n_min > cfg.n_max) {
    throw InputError("bench needs 1 <= n-min <= n-max <= 20");
  }
  Strategy strategy{parse_strategy(cfg.strategy), Alpha(1, 4)};
  if (strategy.tag == StrategyTag::third_level) strategy.alpha = Alpha(1, 5);
  if (!cfg.alpha.empty()) strategy.alpha = Alpha::parse(cfg.alpha);
  strategy.validate();
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const Graph g = graphs::random(n, cfg.p, cfg.seed + static_cast<std::uint64_t>(n));
    const int chi = chromatic_number(g);
    SolverOptions so;
    so.counts = count_options(cfg);
    DncSolver solver(independent_family(g), ProblemKind::cover, strategy, so);
    for (int k : {chi, chi - 1}) {
      if (k < 1) continue;
      const SolveResult r = solver.solve(k);
      ojson j;
      j["schema"] = kSchemaVersion;
      j["n"] = n;
      j["chi"] = chi;
      j["k"] = k;
      j["sat"] = r.sat;
      j["strategy"] = to_string(strategy.tag);
      j["log2_queries_per_n"] = std::log2(r.cost.modeled_quantum_queries) / n;
      j["cost"] = to_json(r.cost);
      out << j.dump() << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

ojson to_json(const CostReport& c) {
  ojson j;
  j["classical_nodes"] = c.classical_nodes;
  j["evaluated_nodes"] = c.evaluated_nodes;
  j["modeled_quantum_queries"] = c.modeled_quantum_queries;
  j["table_lookups"] = c.table_lookups;
  j["enumerator_leaves"] = c.enumerator_leaves;
  j["table_entries"] = c.table_entries;
  return j;
}

ojson to_json(const CaseTrace& t) {
  ojson j;
  j["n"] = t.n;
  j["table_depth"] = t.table_depth;
  ojson cases = ojson::array();
  for (const auto& c : t.cases) {
    ojson cj;
    cj["case"] = c.name;
    cj["activated"] = c.activated;
    cj["best"] = c.best ? ojson(*c.best) : ojson(nullptr);
    cj["subsets"] = c.subsets;
    cases.push_back(cj);
  }
  j["cases"] = cases;
  ojson th = ojson::array();
  for (const auto& x : t.thresholds) {
    th.push_back({{"name", x.name}, {"num", x.num}, {"den", x.den}, {"value", x.value(t.n)}});
  }
  j["thresholds"] = th;
  return j;
}

ojson to_json(const BranchStats& s) {
  ojson j;
  j["leaves_visited"] = s.leaves_visited;
  j["distinct_outputs"] = s.distinct_outputs;
  j["max_depth"] = s.max_depth;
  j["measure_budget"] = s.measure_budget;
  j["large_set_branches"] = s.large_set_branches;
  j["low_frequency_branches"] = s.low_frequency_branches;
  j["fallback_branches"] = s.fallback_branches;
  j["measure_violations"] = s.measure_violations;
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact partition, cover and packing solvers"};
  app.require_subcommand(1);
  app.add_option("-o,--output", cfg.output, "Write results to this file instead of stdout");

  auto* color = app.add_subcommand("color", "Chromatic number of a graph");
  color->add_option("input", cfg.input, "DIMACS or JSON graph")->required();
  color->add_option("--cap", cfg.cap, "Largest accepted vertex count (<= 20)");

  auto* solve = app.add_subcommand("solve", "Decide whether a k-cover, k-partition or k-packing exists");
  solve->add_option("input", cfg.input, "DIMACS graph or JSON instance")->required();
  solve->add_option("--kind", cfg.kind, "cover, partition or packing");
  solve->add_option("--k", cfg.k, "Number of members")->required();
  solve->add_option("--strategy", cfg.strategy, "dde, etd or third");
  solve->add_option("--alpha", cfg.alpha, "Table depth, e.g. 1/4 or 0.2");
  solve->add_option("--family", cfg.family, "For graphs: independent or dominating");
  solve->add_option("--mode", cfg.mode, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));
  solve->add_flag("--witness", cfg.witness, "Print a solution");

  auto* en = app.add_subcommand("enum", "Stream maximal independent sets, minimal covers or minimal dominating sets");
  en->add_option("input", cfg.input, "DIMACS graph or JSON instance")->required();
  en->add_option("--what", cfg.what, "mis, minimal-covers or min-dom");

  auto* cost = app.add_subcommand("cost-table", "Running-time bases as functions of c");
  cost->add_option("--cmin", cfg.cmin);
  cost->add_option("--cmax", cfg.cmax);
  cost->add_option("--step", cfg.step);
  cost->add_option("--c", cfg.c, "Single value of c; prints JSON");
  cost->add_option("--dat", cfg.dat, "Also write the ThirdLevel curve as a two-column table");

  auto* dom = app.add_subcommand("domatic", "Domatic number of a graph");
  dom->add_option("input", cfg.input, "DIMACS or JSON graph")->required();

  auto* gen = app.add_subcommand("gen", "Random instance");
  gen->add_option("--type", cfg.gen_type, "graph or system");
  gen->add_option("--n", cfg.n);
  gen->add_option("--m", cfg.m, "Number of sets (system)");
  gen->add_option("--p", cfg.p, "Edge or membership probability");
  gen->add_option("--seed", cfg.seed);

  auto* bench = app.add_subcommand("bench", "Modeled query counts for coloring random graphs");
  bench->add_option("--n-min", cfg.n_min);
  bench->add_option("--n-max", cfg.n_max);
  bench->add_option("--p", cfg.p);
  bench->add_option("--seed", cfg.seed);
  bench->add_option("--strategy", cfg.strategy);
  bench->add_option("--alpha", cfg.alpha);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (color->parsed()) code = cmd_color(cfg, buffer);
    else if (solve->parsed()) code = cmd_solve(cfg, buffer);
    else if (en->parsed()) code = cmd_enum(cfg, buffer);
    else if (cost->parsed()) code = cmd_cost_table(cfg, buffer);
    else if (dom->parsed()) code = cmd_domatic(cfg, buffer);
    else if (gen->parsed()) code = cmd_gen(cfg, buffer);
    else if (bench->parsed()) code = cmd_bench(cfg, buffer);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << cfg.output << '\n';
      return kExitInput;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace exactpart
