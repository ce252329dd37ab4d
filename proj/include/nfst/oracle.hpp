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

// Reference interpreter. Tracks, per live state, the set of outputs produced
// by every path that reaches it; this never looks at an overlay image and is
// the ground truth the simulator is checked against.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nfst/fst.hpp"
#include "nfst/window.hpp"

namespace nfst {

struct OracleResult {
  std::size_t window_index = 0;
  Outcome outcome = Outcome::kDiscarded;
  std::vector<Bytes> outputs;  // strictly increasing, empty when discarded

  bool matched() const { return outcome == Outcome::kMatched; }

  friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

// Runs exactly |window| symbol steps from the start state, closing over
// epsilon inputs before the first and after every step.
OracleResult oracle_window(const Fst& fst, std::span<const Symbol> window);

std::vector<OracleResult> oracle_stream(const Fst& fst,
                                        std::span<const Symbol> input,
                                        std::size_t n);

}  // namespace nfst
