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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nfst/grid.hpp"
#include "nfst/overlay.hpp"

namespace nfst {

// Memory bit counts for one array configuration.
struct ResourceReport {
  std::uint64_t m = 0;
  std::uint64_t occupied = 0;
  std::uint64_t match_ram_bits = 0;  // 256 per PE
  std::uint64_t tram_bits = 0;       // 8 per PE
  std::uint64_t vector_bits = 0;     // m^2 entries of ceil(log2(max(m, 2))) bits
  std::uint64_t fifo_bits = 0;       // fifo_capacity activation vectors
  std::uint64_t total_bits = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

// Width in bits of one PE id: ceil(log2(max(m, 2))).
std::uint64_t pe_id_width(std::uint64_t m);

ResourceReport estimate(std::uint64_t m, std::uint64_t occupied, std::uint64_t fifo_capacity);
ResourceReport estimate(const OverlayImage& image, std::uint64_t fifo_capacity);

// One row per grid, occupied = 0.
std::vector<ResourceReport> scaling_sweep(std::span<const GridSpec> sizes,
                                          std::uint64_t fifo_capacity);

// Header row then one row per report, LF line endings.
std::string to_csv(std::span<const ResourceReport> rows);

}  // namespace nfst
