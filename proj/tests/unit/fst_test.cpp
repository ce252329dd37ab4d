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
#include "fixtures.hpp"
#include "nfst/error.hpp"
#include "nfst/fst.hpp"

using namespace nfst;

TEST_CASE("symbol class constructors") {
  CHECK(SymbolClass::single('a').members() == std::vector<Symbol>{'a'});
  CHECK(SymbolClass::range('a', 'c').count() == 3);
  CHECK(SymbolClass::all().count() == 256);
  CHECK(SymbolClass().empty());
  auto c = SymbolClass::single(0);
  c.add(255);
  CHECK(c.contains(0));
  CHECK(c.contains(255));
  CHECK_FALSE(c.contains(1));
}

TEST_CASE("symbol class bitmap is lsb first") {
  auto bm = SymbolClass::single(9).to_bitmap();
  CHECK(bm[1] == 0x02);
  for (std::size_t i = 0; i < bm.size(); ++i) {
    if (i != 1) CHECK(bm[i] == 0);
  }
  SymbolClass::Bitmap raw{};
  raw[31] = 0x80;
  raw[0] = 0x01;
  CHECK(SymbolClass::from_bitmap(raw).members() == std::vector<Symbol>{0, 255});
  auto r = SymbolClass::range(3, 200);
  CHECK(SymbolClass::from_bitmap(r.to_bitmap()) == r);
}

TEST_CASE("length preserving") {
  CHECK_FALSE(is_length_preserving(fixtures::hello()));
  CHECK(is_length_preserving(fixtures::hello_lp()));
  Fst f = fixtures::hello_lp();
  f.transitions.push_back({0, 0, std::nullopt, OutputLabel::byte('a')});
  CHECK_FALSE(is_length_preserving(f));
  CHECK(is_length_preserving(Fst{}));
}

TEST_CASE("reachable renumbers densely") {
  Fst f;
  f.state_count = 5;
  f.start = 2;
  f.accepting = {4, 1};
  f.transitions = {{2, 4, SymbolClass::single('a'), OutputLabel::byte('x')},
                   {1, 3, SymbolClass::single('b'), OutputLabel::byte('y')},
                   {4, 2, SymbolClass::single('c'), OutputLabel::byte('z')}};
  CHECK(reachable_states(f) == std::vector<StateId>{2, 4});
  Fst r = reachable(f);
  CHECK(r.state_count == 2);
  CHECK(r.start == 0);
  CHECK(r.accepting == std::set<StateId>{1});
  REQUIRE(r.transitions.size() == 2);
  CHECK(r.transitions[0].src == 0);
  CHECK(r.transitions[0].dst == 1);
  CHECK(r.transitions[1].src == 1);
  CHECK(r.transitions[1].dst == 0);
}

TEST_CASE("reachable rejects out of range states") {
  Fst f;
  f.state_count = 1;
  f.transitions = {{0, 3, SymbolClass::single('a'), OutputLabel::byte('x')}};
  CHECK_THROWS_AS(reachable(f), Error);
}
