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

// Compilation of an Fst onto the PE array.
//
// Every PE hosts one edge instance. A PE's switch mask names the neighbors
// allowed to enable it; a bit is set exactly when the neighbor hosts an edge
// whose destination is this edge's source. Edges are replicated when a
// predecessor instance has no adjacent copy of a successor edge, so that
// every path of the machine exists as a walk over neighboring PEs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nfst/fst.hpp"
#include "nfst/grid.hpp"

namespace nfst {

struct PeConfig {
  PeId pe_id = 0;
  SymbolClass match;
  bool is_start = false;
  bool is_report = false;
  bool occupied = false;
  std::uint8_t in_switch = 0;  // bit d: neighbor in Direction d enables this PE

  bool listens(Direction d) const {
    return (in_switch >> static_cast<unsigned>(d)) & 1U;
  }

  friend bool operator==(const PeConfig&, const PeConfig&) = default;
};

struct TransductionRam {
  std::vector<std::optional<Symbol>> entries;  // indexed by pe_id

  friend bool operator==(const TransductionRam&, const TransductionRam&) = default;
};

// The reconfiguration payload: exactly what the binary image format carries.
struct OverlayImage {
  GridSpec grid;
  std::vector<PeConfig> pes;
  TransductionRam tram;

  std::size_t pe_count() const { return grid.pe_count(); }
  std::size_t occupied_count() const;

  static OverlayImage empty(const GridSpec& grid);

  friend bool operator==(const OverlayImage&, const OverlayImage&) = default;
};

// One source edge and the PEs hosting its instances (replica order).
struct PlacedEdge {
  std::size_t edge = 0;  // index into the source Fst's transitions
  StateId src = 0;
  StateId dst = 0;
  std::vector<PeId> pes;

  friend bool operator==(const PlacedEdge&, const PlacedEdge&) = default;
};

// Edge-instance -> PE mapping, ordered by edge index. Edges absent from the
// map are unreachable from the start state.
using EdgeMap = std::vector<PlacedEdge>;

// An image together with the compile-side metadata that is not part of the
// hardware payload.
struct CompiledOverlay {
  OverlayImage image;
  EdgeMap edge_map;
  StateId start = 0;
  bool start_accepting = false;
  std::uint32_t source_fst_digest = 0;

  std::size_t replications() const;

  friend bool operator==(const CompiledOverlay&, const CompiledOverlay&) = default;
};

struct PlaceOptions {
  std::size_t max_instances_per_edge = 4;
};

// Breadth-first placement from the start edges, followed by a seeded local
// search when the greedy pass leaves gaps. Throws Error(kCapacityExceeded) or
// AdjacencyError.
EdgeMap place(const Fst& fst, const GridSpec& grid, const PlaceOptions& options = {});

// Requires a validated, epsilon-free, length-preserving machine. Throws
// Error with kInvalidFst, kEpsilonPresent, kNotLengthPreserving,
// kCapacityExceeded, or AdjacencyError.
CompiledOverlay compile(const Fst& fst, const GridSpec& grid,
                        const PlaceOptions& options = {});

// Structural checks on the hardware payload alone; throws
// Error(kMalformedImage) with the first violation found.
void check_image(const OverlayImage& image);

// Rebuilds the machine from the PE configs, switch masks and tram, merging
// replicas. States are numbered breadth-first from the start state. Throws
// Error(kMalformedImage) if the hardware and the edge map disagree.
Fst decompile(const CompiledOverlay& compiled);

}  // namespace nfst
