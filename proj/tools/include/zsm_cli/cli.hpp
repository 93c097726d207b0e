#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zsm/groundset.hpp"

namespace zsm::cli {

inline constexpr const char* kSchema = "zsm-report/1";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, internal_error = 1, budget_exhausted = 2, invalid_input = 3 };

// args excludes the program name. Writes the report to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "[-2,-1,1,2]", "{-2,-1,2,3}", "-2,-1,1,2" or {"finite":[...],"aps":[{"start":a,"step":d}]}
GroundSpec parse_ground(const std::string& text);
// text grammar or {"ambient":"Z"|{"mod":n},"terms":{"g":count}}
Sequence parse_element(const std::string& text);
std::vector<Int> parse_int_list(const std::string& text);

}  // namespace zsm::cli
