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

#include "nfst/grid.hpp"

#include <string>

#include "nfst/error.hpp"

namespace nfst {
namespace {

constexpr std::array<Direction, 8> kMoore = {
    Direction::kN, Direction::kNE, Direction::kE, Direction::kSE,
    Direction::kS, Direction::kSW, Direction::kW, Direction::kNW};
constexpr std::array<Direction, 4> kVonNeumann = {
    Direction::kN, Direction::kE, Direction::kS, Direction::kW};

// (row, col) offsets indexed by Direction.
constexpr std::array<std::array<int, 2>, 8> kOffsets = {{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}}};

}  // namespace

void check_grid(const GridSpec& grid) {
  if (grid.rows == 0 || grid.cols == 0) {
    throw Error(ErrorCode::kUsage, "grid dimensions must be positive");
  }
  if (grid.pe_count() > kMaxPeCount) {
    throw Error(ErrorCode::kUsage, "grid exceeds " + std::to_string(kMaxPeCount) + " PEs");
  }
  if (grid.neighborhood != Neighborhood::kMoore8 &&
      grid.neighborhood != Neighborhood::kVonNeumann4) {
    throw Error(ErrorCode::kUsage, "unknown neighborhood");
  }
}

std::span<const Direction> directions(Neighborhood n) {
  if (n == Neighborhood::kVonNeumann4) return kVonNeumann;
  return kMoore;
}

std::uint8_t direction_mask(Neighborhood n) {
  std::uint8_t mask = 0;
  for (Direction d : directions(n)) mask |= static_cast<std::uint8_t>(1U << static_cast<unsigned>(d));
  return mask;
}

std::string_view direction_name(Direction d) {
  static constexpr std::array<std::string_view, 8> kNames = {
      "N", "NE", "E", "SE", "S", "SW", "W", "NW"};
  return kNames[static_cast<std::size_t>(d)];
}

Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<unsigned>(d) + 4) % 8);
}

std::optional<PeId> neighbor(const GridSpec& grid, PeId pe, Direction d) {
  const auto [dr, dc] = kOffsets[static_cast<std::size_t>(d)];
  const long r = static_cast<long>(pe / grid.cols) + dr;
  const long c = static_cast<long>(pe % grid.cols) + dc;
  if (r < 0 || c < 0 || r >= grid.rows || c >= grid.cols) return std::nullopt;
  return static_cast<PeId>(r * grid.cols + c);
}

std::size_t snake_index(const GridSpec& grid, PeId pe) {
  const std::size_t r = pe / grid.cols;
  const std::size_t c = pe % grid.cols;
  return r * grid.cols + (r % 2 == 0 ? c : grid.cols - 1 - c);
}

std::string_view neighborhood_name(Neighborhood n) {
  return n == Neighborhood::kVonNeumann4 ? "vonneumann4" : "moore8";
}

std::optional<Neighborhood> parse_neighborhood(std::string_view name) {
  if (name == "moore8" || name == "moore") return Neighborhood::kMoore8;
  if (name == "vonneumann4" || name == "vonneumann") return Neighborhood::kVonNeumann4;
  return std::nullopt;
}

}  // namespace nfst
