#include "exactpart/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace exactpart {

namespace {

using nlohmann::json;

int to_int(const std::string& tok, const std::string& what, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v < -1000000 || v > 1000000) throw std::invalid_argument(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
  }
}

int element(const json& v, int n, const char* what) {
  if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto x = v.get<long long>();
  if (x < 0 || x >= n) throw InputError(std::string(what) + " " + std::to_string(x) + " outside 0.." + std::to_string(n - 1));
  return static_cast<int>(x);
}

}  // namespace

Graph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);
    if (tag == "p") {
      if (n >= 0) throw InputError("line " + std::to_string(line) + ": second problem line");
      if (rest.size() != 3 || (rest[0] != "edge" && rest[0] != "col")) {
        throw InputError("line " + std::to_string(line) + ": expected 'p edge <n> <m>'");
      }
      n = to_int(rest[1], "vertex count", line);
      (void)to_int(rest[2], "edge count", line);
      if (n < 0 || n > kMaxUniverse) throw InputError("vertex count must lie in 0..32");
    } else if (tag == "e") {
      if (n < 0) throw InputError("line " + std::to_string(line) + ": edge before the problem line");
      if (rest.size() != 2) throw InputError("line " + std::to_string(line) + ": expected 'e <u> <v>'");
      const int u = to_int(rest[0], "vertex", line);
      const int v = to_int(rest[1], "vertex", line);
      if (u < 1 || u > n || v < 1 || v > n) {
        throw InputError("line " + std::to_string(line) + ": vertex outside 1.." + std::to_string(n));
      }
      if (u == v) throw InputError("line " + std::to_string(line) + ": self-loop");
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw InputError("line " + std::to_string(line) + ": unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw InputError("missing 'p edge' line");
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Instance parse_json_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw InputError("JSON instance needs an integer field \"n\"");
  }
  const auto n64 = j["n"].get<long long>();
  if (n64 < 0 || n64 > kMaxUniverse) throw InputError("\"n\" must lie in 0..32");
  const int n = static_cast<int>(n64);
  const bool has_sets = j.contains("sets");
  const bool has_edges = j.contains("edges");
  if (has_sets == has_edges) throw InputError("JSON instance needs exactly one of \"sets\" and \"edges\"");
  if (has_edges) {
    if (!j["edges"].is_array()) throw InputError("\"edges\" must be an array");
    Graph g(n);
    for (const json& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair");
      const int u = element(e[0], n, "vertex");
      const int v = element(e[1], n, "vertex");
      if (u == v) throw InputError("self-loop in \"edges\"");
      g.add_edge(u, v);
    }
    return g;
  }
  if (!j["sets"].is_array()) throw InputError("\"sets\" must be an array");
  std::vector<Mask> sets;
  for (const json& s : j["sets"]) {
    if (!s.is_array()) throw InputError("each set must be an array of elements");
    Mask m = 0;
    for (const json& x : s) m |= Mask{1} << element(x, n, "element");
    sets.push_back(m);
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw InputError("\"labels\" must be an array");
    for (const json& l : j["labels"]) {
      if (!l.is_string()) throw InputError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return ExplicitSystem(Universe(n, std::move(labels)), std::move(sets));
}

Instance parse_instance(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_instance(text);
  return parse_dimacs(text);
}

Instance read_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream os;
  os << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.adjacent(u, v)) os << "e " << u + 1 << ' ' << v + 1 << '\n';
  return os.str();
}

std::string to_json(const ExplicitSystem& sys) {
  json j;
  j["n"] = sys.universe().size();
  json sets = json::array();
  for (Mask s : sys.sets()) sets.push_back(elements(s));
  j["sets"] = sets;
  return j.dump() + "\n";
}

}  // namespace exactpart
