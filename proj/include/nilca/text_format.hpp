#pragma once

#include <string>
#include <string_view>

#include "nilca/automaton.hpp"
#include "nilca/subshift.hpp"

namespace nilca {

// %CA-CONFIG v1: finite, tube and torus configurations. Overlays are
// written only when they collapse to one of those kinds.
Configuration parse_config(std::string_view text);
std::string write_config(const Configuration& x);

// %CA-RULE v1: `kind: table` with a total map, or `kind: builtin` with a
// `name:` line. Powers and folded rules are written as tables when the
// table has at most 2^16 entries.
CellularAutomaton parse_rule(std::string_view text);
std::string write_rule(const CellularAutomaton& c);

// %CA-SFT v1: `forbid:` blocks of `(v)=s` lines.
Sft parse_sft(std::string_view text);
std::string write_sft(const Sft& X);

// Whole file contents; FileNotFound when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace nilca
