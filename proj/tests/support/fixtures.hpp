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

#pragma once

#include <fstream>
#include <optional>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>

#include "nfst/error.hpp"
#include "nfst/fst.hpp"
#include "nfst/overlay.hpp"
#include "nfst/ruleset.hpp"

namespace fixtures {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline nfst::Fst hello() { return nfst::parse_ruleset(read_text(NFST_DATA_DIR "/hello_hi.rules")); }
inline nfst::Fst hello_lp() {
  return nfst::parse_ruleset(read_text(NFST_DATA_DIR "/hello_hi_lp.rules"));
}

inline nfst::Bytes bytes(std::string_view s) { return {s.begin(), s.end()}; }

// 0->1->2 via a:x b:y and 0->3->2 via a:p b:q, accepting {2}.
inline nfst::Fst two_paths() {
  return nfst::parse_ruleset(
      "states: 4\nstart: 0\naccept: 2\n"
      "trans: 0 1 a:x\ntrans: 1 2 b:y\ntrans: 0 3 a:p\ntrans: 3 2 b:q\n");
}

// Two states bouncing on every byte; one activation per symbol.
inline nfst::Fst bouncer() {
  return nfst::parse_ruleset(
      "states: 2\nstart: 0\naccept: 0 1\ntrans: 0 1 [\\x00-\\xff]:a\ntrans: 1 0 [\\x00-\\xff]:a\n");
}

// Compiles, or returns nothing when the placer cannot fit the machine.
inline std::optional<nfst::CompiledOverlay> try_compile(const nfst::Fst& f,
                                                        const nfst::GridSpec& g) {
  try {
    return nfst::compile(f, g);
  } catch (const nfst::Error& e) {
    if (e.code() != nfst::ErrorCode::kAdjacencyUnsatisfiable &&
        e.code() != nfst::ErrorCode::kCapacityExceeded) {
      throw;
    }
  }
  return std::nullopt;
}

}  // namespace fixtures
