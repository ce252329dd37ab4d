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

#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "nfst/epsilon.hpp"
#include "nfst/error.hpp"
#include "nfst/oracle.hpp"
#include "nfst/ruleset.hpp"

using namespace nfst;

namespace {

bool has(const Fst& f, StateId s, StateId d, Symbol in, Symbol out) {
  for (const auto& t : f.transitions) {
    if (t.src == s && t.dst == d && t.input == SymbolClass::single(in) &&
        t.output == OutputLabel::byte(out)) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("epsilon free machines pass through") {
  CHECK(eliminate_epsilon(fixtures::hello()) == fixtures::hello());
  CHECK(eliminate_epsilon(fixtures::two_paths()) == fixtures::two_paths());
}

TEST_CASE("epsilon then symbol") {
  Fst f = parse_ruleset("states: 3\nstart: 0\naccept: 2\ntrans: 0 1 ~:~\ntrans: 1 2 a:x\n");
  Fst g = eliminate_epsilon(f);
  CHECK(has(g, 0, 2, 'a', 'x'));
  CHECK(has(g, 1, 2, 'a', 'x'));
  CHECK(g.accepting == f.accepting);
  for (const auto& t : g.transitions) CHECK_FALSE(t.is_epsilon_input());
  for (const auto& w : brute::all_words({'a'}, 3)) {
    CHECK(brute::enumerate(f, w).outputs == brute::enumerate(g, w).outputs);
  }
}

TEST_CASE("closure of start reaches accept") {
  Fst g = eliminate_epsilon(parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 ~:~\n"));
  CHECK(g.is_accepting(0));
  CHECK(g.transitions.empty());
}

TEST_CASE("closure") {
  Fst f = parse_ruleset(
      "states: 4\nstart: 0\ntrans: 0 1 ~:~\ntrans: 1 2 ~:~\ntrans: 2 0 ~:~\ntrans: 2 3 a:x\n");
  CHECK(epsilon_closure(f, 0) == std::vector<StateId>{0, 1, 2});
  CHECK(epsilon_closure(f, 3) == std::vector<StateId>{3});
}

TEST_CASE("epsilon input with a byte output is refused") {
  Fst f = parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 ~:x\n");
  try {
    eliminate_epsilon(f);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedEpsilonOutput);
  }
}

TEST_CASE("elimination preserves the relation") {
  std::mt19937_64 rng(5);
  brute::Shape shape;
  shape.epsilon_input = 0.3;
  shape.epsilon_output = 0.2;
  const auto words = brute::all_words({'a', 'b', 'c'}, 4);
  for (int i = 0; i < 150; ++i) {
    Fst f = brute::random_machine(rng, shape);
    Fst g = eliminate_epsilon(f);
    for (const auto& t : g.transitions) REQUIRE_FALSE(t.is_epsilon_input());
    for (const auto& w : words) {
      const auto a = brute::enumerate(f, w);
      const auto b = brute::enumerate(g, w);
      REQUIRE(a.matched == b.matched);
      REQUIRE(a.outputs == b.outputs);
      // The library oracle agrees on both sides as well.
      const auto o = oracle_window(f, w);
      REQUIRE(o.matched() == a.matched);
      REQUIRE(std::set<Bytes>(o.outputs.begin(), o.outputs.end()) == a.outputs);
    }
  }
}
