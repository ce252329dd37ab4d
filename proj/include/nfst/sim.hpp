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

// Cycle-level model of the PE array.
//
// A window of n symbols is streamed into the array; each symbol costs one
// transition (two cycles): PEs that are enabled and whose match RAM holds the
// symbol become active and are logged in the activation vector, then every
// active PE enables the neighbors that listen to it. A window matches when a
// report PE is active after its last symbol. The activation vector of a
// matched window goes through the FIFO to the transduction stage, which walks
// it back into PE paths and looks each PE up in the transduction RAM.
//
// Cycle cost of one window:
//   matched   n (flush in) + 2n (transitions) + 1 (flush vector)
//             + m (transduction) + n (flush output)     = 4n + m + 1
//   discarded n (flush in) + 2n (transitions) + 1 (discard) = 3n + 1

#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <vector>

#include "nfst/overlay.hpp"
#include "nfst/window.hpp"

namespace nfst {

struct Activation {
  std::size_t position = 0;
  PeId pe = 0;

  friend bool operator==(const Activation&, const Activation&) = default;
};

using ActivationVector = std::vector<Activation>;
using PePath = std::vector<PeId>;

class Fifo {
 public:
  static constexpr std::size_t kDefaultCapacity = 4;

  explicit Fifo(std::size_t capacity = kDefaultCapacity);

  // Throws Error(kFifoOverflow) when full.
  void push(ActivationVector vector);
  ActivationVector pop();

  std::size_t size() const { return contents_.size(); }
  bool empty() const { return contents_.empty(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<ActivationVector> contents_;
};

// Read-only per-image tables shared by every EngineState. The image must
// outlive the engine.
class Engine {
 public:
  explicit Engine(const OverlayImage& image);

  const OverlayImage& image() const { return *image_; }
  std::size_t pe_count() const { return image_->pe_count(); }
  // m * m entries.
  std::size_t activation_capacity() const { return activation_capacity_; }
  const boost::dynamic_bitset<>& start_pes() const { return start_; }
  const boost::dynamic_bitset<>& report_pes() const { return report_; }
  // PEs that listen to `pe`.
  const std::vector<PeId>& fanout(PeId pe) const { return fanout_[pe]; }
  // Whether `to` listens to `from`.
  bool linked(PeId from, PeId to) const;

 private:
  const OverlayImage* image_;
  std::size_t activation_capacity_;
  boost::dynamic_bitset<> start_;
  boost::dynamic_bitset<> report_;
  std::vector<std::vector<PeId>> fanout_;
};

struct EngineState {
  const Engine* engine = nullptr;
  boost::dynamic_bitset<> enabled;
  boost::dynamic_bitset<> active;
  std::size_t position = 0;
  ActivationVector activation_vector;
  std::uint64_t cycles = 0;
};

enum class Policy { kAll, kFirst };

struct SubSequenceResult {
  std::size_t window_index = 0;
  Outcome outcome = Outcome::kDiscarded;
  std::vector<Bytes> outputs;  // strictly increasing
  std::vector<PePath> paths;   // ordered by (output, path)
  std::uint64_t cycles = 0;

  bool matched() const { return outcome == Outcome::kMatched; }
};

struct StreamResult {
  std::vector<SubSequenceResult> windows;
  std::uint64_t total_cycles = 0;
};

struct StreamOptions {
  Policy policy = Policy::kAll;
  std::size_t fifo_capacity = Fifo::kDefaultCapacity;
  // 0 picks the hardware concurrency; forced to 1 while tracing.
  unsigned threads = 1;
  std::ostream* trace = nullptr;
};

std::uint64_t cycle_model(std::size_t n, std::size_t m, bool matched);

EngineState reset(const Engine& engine);

// One transition; throws Error(kActivationOverflow) if logging would push the
// activation vector past m * m entries.
void step(EngineState& state, Symbol symbol);

// Every PE walk consistent with the vector that ends on a report PE at
// position window_len - 1, ordered by transduced output then PE ids.
// Throws Error(kNoAcceptingPath) when there is none.
std::vector<PePath> reconstruct_paths(const ActivationVector& vector,
                                      const OverlayImage& image,
                                      std::size_t window_len);

// Throws Error(kUnusedTramEntry).
Bytes transduce(std::span<const PeId> path, const TransductionRam& tram);

// Runs a whole window from a freshly reset state and leaves the state reset
// for the next window. Trace lines are stamped with cycle_base + local cycle.
SubSequenceResult run_subsequence(EngineState& state, std::span<const Symbol> window,
                                  Fifo& fifo, Policy policy = Policy::kAll,
                                  std::ostream* trace = nullptr,
                                  std::uint64_t cycle_base = 0);

StreamResult run_stream(const OverlayImage& image, std::span<const Symbol> input,
                        std::size_t n, const StreamOptions& options = {});

}  // namespace nfst
