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

// Overlay-vs-oracle equivalence harness and the random machine generator
// behind `nfst verify`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfst/fst.hpp"
#include "nfst/grid.hpp"
#include "nfst/overlay.hpp"
#include "nfst/rng.hpp"

namespace nfst {

struct RandomFstOptions {
  std::size_t min_states = 2;
  std::size_t max_states = 10;
  std::size_t min_edges = 1;
  std::size_t max_edges = 16;
  std::vector<Symbol> inputs = {'a', 'b', 'c'};
  std::vector<Symbol> outputs = {'x', 'y', 'z'};
  double class_probability = 0.25;  // otherwise a singleton label
  bool epsilon_edges = false;       // add epsilon:epsilon transitions
  bool length_preserving = true;    // false mixes in epsilon outputs
};

// Every transition source is reachable and at least one reachable state
// accepts.
Fst random_fst(Rng& rng, const RandomFstOptions& options = {});

// A stream whose windows are mostly walks of the machine from its start state,
// with occasional substitutions and uniform noise.
Bytes random_input(Rng& rng, const Fst& fst, std::size_t n, std::size_t max_len);

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  GridSpec grid{16, 16, Neighborhood::kMoore8};
  std::size_t max_input = 64;
  std::size_t max_n = 8;
  unsigned threads = 1;  // 0 picks the hardware concurrency
  RandomFstOptions machines;
};

struct Counterexample {
  std::size_t case_index = 0;
  Fst machine;
  Bytes input;
  std::size_t n = 0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // random machines the placer could not fit
  std::optional<Counterexample> first_failure;

  bool ok() const { return failed == 0; }
};

// With `machine` set every case streams a random input through it; otherwise
// each case draws a fresh random machine. `image`, when set, replaces the
// compiled image (so a hand-edited image can be checked against its source).
VerifyReport verify(const Fst* machine, const OverlayImage* image, const VerifyOptions& options);

// Stable textual summary, including the first counterexample.
std::string format_report(const VerifyReport& report);

// Printable bytes as-is; backslash, space and everything else as \xNN.
std::string hex_escape(const Bytes& bytes);

}  // namespace nfst
