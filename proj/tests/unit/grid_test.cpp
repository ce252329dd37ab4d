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

#include "doctest.h"
#include "nfst/error.hpp"
#include "nfst/grid.hpp"

using namespace nfst;

TEST_CASE("neighbors respect the border") {
  const GridSpec g{3, 4, Neighborhood::kMoore8};
  CHECK_FALSE(neighbor(g, 0, Direction::kN));
  CHECK_FALSE(neighbor(g, 0, Direction::kW));
  CHECK(neighbor(g, 0, Direction::kE) == PeId{1});
  CHECK(neighbor(g, 0, Direction::kSE) == PeId{5});
  CHECK(neighbor(g, 5, Direction::kNW) == PeId{0});
  CHECK_FALSE(neighbor(g, 11, Direction::kSE));
  CHECK_FALSE(neighbor(g, 3, Direction::kNE));
  CHECK(neighbor(g, 3, Direction::kSW) == PeId{6});
}

TEST_CASE("neighborhoods") {
  CHECK(directions(Neighborhood::kMoore8).size() == 8);
  CHECK(directions(Neighborhood::kVonNeumann4).size() == 4);
  CHECK(direction_mask(Neighborhood::kMoore8) == 0xFF);
  CHECK(direction_mask(Neighborhood::kVonNeumann4) == 0x55);
  for (auto d : directions(Neighborhood::kMoore8)) CHECK(opposite(opposite(d)) == d);
  CHECK(opposite(Direction::kNE) == Direction::kSW);
  CHECK(parse_neighborhood("moore8") == Neighborhood::kMoore8);
  CHECK(parse_neighborhood("vonneumann4") == Neighborhood::kVonNeumann4);
  CHECK_FALSE(parse_neighborhood("hex6"));
  CHECK(neighborhood_name(Neighborhood::kVonNeumann4) == "vonneumann4");
  CHECK(direction_name(Direction::kNW) == "NW");
}

TEST_CASE("snake walk") {
  const GridSpec g{3, 3, Neighborhood::kMoore8};
  CHECK(snake_index(g, 0) == 0);
  CHECK(snake_index(g, 2) == 2);
  CHECK(snake_index(g, 5) == 3);
  CHECK(snake_index(g, 3) == 5);
  CHECK(snake_index(g, 6) == 6);
}

TEST_CASE("grid limits") {
  CHECK_NOTHROW(check_grid({1, 1, Neighborhood::kMoore8}));
  CHECK_NOTHROW(check_grid({1024, 1024, Neighborhood::kMoore8}));
  CHECK_THROWS_AS(check_grid({0, 4, Neighborhood::kMoore8}), Error);
  CHECK_THROWS_AS(check_grid({1025, 1024, Neighborhood::kMoore8}), Error);
}
