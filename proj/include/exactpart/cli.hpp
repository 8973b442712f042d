#pragma once

// Command-line front end. Subcommands: color, solve, enum, cost-table,
// domatic, gen, bench. Output is JSON (one object per line), CSV for
// cost-table. Exit codes: 0 success, 2 input error, 3 resource cap,
// 4 internal assertion.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exactpart/chromatic.hpp"
#include "exactpart/dnc_solver.hpp"
#include "exactpart/enumerate.hpp"

namespace exactpart {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;

inline constexpr int kSchemaVersion = 1;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

[[nodiscard]] nlohmann::ordered_json to_json(const CostReport& c);
[[nodiscard]] nlohmann::ordered_json to_json(const CaseTrace& t);
[[nodiscard]] nlohmann::ordered_json to_json(const BranchStats& s);

}  // namespace exactpart
