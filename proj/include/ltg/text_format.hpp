#pragma once

#include <string>
#include <string_view>

#include "ltg/transducer.hpp"

// Line-oriented text formats. `#` starts a comment.
//
//   alphabet f:2 g:1 k:0
//   output a b
//   axiom _ q0 _            or   axiom ab
//   rule q0 f -> _ q1:2 b q2:1 _
//   rule q0 g -> BOTTOM
//
//   dta start h0
//   delta h0 f -> h1 h1
//   delta h1 k ->
//
// Calls are written state:child with 1-based children. Parse errors throw
// InvalidInput naming the source, line and offending token.

namespace ltg {

Transducer parse_transducer(std::string_view text, const std::string& source = "<input>");

/// Uses the file's own `alphabet` line if present, else `sigma` if given,
/// else infers ranks from the delta lines in order of appearance.
Dta parse_dta(std::string_view text, const std::string& source = "<input>", const RankedAlphabet* sigma = nullptr);

std::string format_transducer(const Transducer& m);
std::string format_dta(const Dta& b);
std::string format_alphabet(const RankedAlphabet& sigma);

/// Whole file contents; InvalidInput if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace ltg
