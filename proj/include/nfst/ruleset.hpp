// Copyright 2026 The nfst-overlay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Line-oriented ruleset text format.
//
//   states: <count>
//   start: <state>
//   accept: <state> [<state> ...]
//   trans: <src> <dst> <input>:<output>
//
// <input> is a symbol, a class such as [a-z0-9_] or ~ (epsilon); <output> is
// a symbol or ~. A symbol is a printable byte or one of the escapes \xNN \t
// \n \r \\ \: \~ \# \[ \] \-. An unescaped '#' starts a comment.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "nfst/fst.hpp"

namespace nfst {

// Throws ParseError (line/column) on malformed or out-of-range input.
Fst parse_ruleset(std::string_view text);

// Inverse of parse_ruleset: parse_ruleset(format_ruleset(f)) == f.
std::string format_ruleset(const Fst& fst);

// CRC-32 of the canonical ruleset text.
std::uint32_t fst_digest(const Fst& fst);

// Escape a byte for ruleset text (used for both labels and diagnostics).
std::string escape_symbol(Symbol s);

}  // namespace nfst
