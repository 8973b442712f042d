#pragma once

// Instance ingestion and emission.
//
// Graphs come as DIMACS `.col` text (`p edge n m`, `e u v`, 1-indexed) or as
// JSON {"n": int, "edges": [[u, v], ...]} (0-indexed). Explicit set systems
// come as JSON {"n": int, "sets": [[...], ...]} (0-indexed). Text whose first
// non-blank character is '{' is read as JSON.

#include <iosfwd>
#include <string>
#include <variant>

#include "exactpart/setsys.hpp"

namespace exactpart {

using Instance = std::variant<Graph, ExplicitSystem>;

[[nodiscard]] Graph parse_dimacs(const std::string& text);
[[nodiscard]] Instance parse_json_instance(const std::string& text);
[[nodiscard]] Instance parse_instance(const std::string& text);
// Reads the whole file; throws InputError when it cannot be opened.
[[nodiscard]] Instance read_instance(const std::string& path);

[[nodiscard]] std::string to_dimacs(const Graph& g);
[[nodiscard]] std::string to_json(const ExplicitSystem& sys);

}  // namespace exactpart
