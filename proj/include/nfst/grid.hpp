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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace nfst {

using PeId = std::uint32_t;

enum class Neighborhood : std::uint8_t { kMoore8 = 0, kVonNeumann4 = 1 };

// Bit positions in a PE switch mask.
enum class Direction : std::uint8_t { kN = 0, kNE, kE, kSE, kS, kSW, kW, kNW };

inline constexpr std::size_t kMaxPeCount = std::size_t{1} << 20;

struct GridSpec {
  std::uint16_t rows = 1;
  std::uint16_t cols = 1;
  Neighborhood neighborhood = Neighborhood::kMoore8;

  std::size_t pe_count() const { return std::size_t{rows} * cols; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Throws Error(kUsage) for zero dimensions or more than kMaxPeCount PEs.
void check_grid(const GridSpec& grid);

std::span<const Direction> directions(Neighborhood n);
std::uint8_t direction_mask(Neighborhood n);
std::string_view direction_name(Direction d);
Direction opposite(Direction d);

std::optional<PeId> neighbor(const GridSpec& grid, PeId pe, Direction d);

// Position of a cell along the boustrophedon walk of the grid.
std::size_t snake_index(const GridSpec& grid, PeId pe);

std::string_view neighborhood_name(Neighborhood n);
std::optional<Neighborhood> parse_neighborhood(std::string_view name);

}  // namespace nfst
