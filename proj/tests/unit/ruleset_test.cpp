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
#include "nfst/error.hpp"
#include "nfst/ruleset.hpp"

using namespace nfst;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_ruleset(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::pair<std::size_t, std::size_t> where(std::string_view text) {
  try {
    parse_ruleset(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("golden ruleset") {
  Fst f = fixtures::hello();
  CHECK(f.state_count == 6);
  CHECK(f.transitions.size() == 5);
  CHECK(f.start == 0);
  CHECK(f.accepting == std::set<StateId>{5});
  CHECK(f.transitions[1].input == SymbolClass::single('e'));
  CHECK(f.transitions[1].output == OutputLabel::byte('i'));
  CHECK(f.transitions[2].output.is_epsilon());
  CHECK(fixtures::hello_lp().transitions[4].output == OutputLabel::byte(' '));
}

TEST_CASE("machine with no transitions") {
  Fst f = parse_ruleset("states: 1\nstart: 0\naccept: 0\n");
  CHECK(f.state_count == 1);
  CHECK(f.transitions.empty());
  CHECK(f.accepting == std::set<StateId>{0});
}

TEST_CASE("class input") {
  Fst f = parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 [a-c]:x\n");
  REQUIRE(f.transitions.size() == 1);
  CHECK(f.transitions[0].input->members() == std::vector<Symbol>{'a', 'b', 'c'});
}

TEST_CASE("classes, escapes and comments") {
  Fst f = parse_ruleset(
      "states: 2 # two\nstart: 0\naccept: 1\naccept: 0\n"
      "trans: 0 1 [a-c0-9_]:\\x41\n"
      "trans: 1 0 \\::\\#\n"
      "trans: 1 1 ~:~\n"
      "trans: 0 0 [-a]:\\\\\n"
      "trans: 0 0 \\t:\\n\n");
  CHECK(f.accepting == std::set<StateId>{0, 1});
  CHECK(f.transitions[0].input->count() == 14);
  CHECK(f.transitions[0].output == OutputLabel::byte('A'));
  CHECK(f.transitions[1].input == SymbolClass::single(':'));
  CHECK(f.transitions[1].output == OutputLabel::byte('#'));
  CHECK(f.transitions[2].is_epsilon_input());
  CHECK(f.transitions[2].output.is_epsilon());
  CHECK(f.transitions[3].input->members() == std::vector<Symbol>{'-', 'a'});
  CHECK(f.transitions[3].output == OutputLabel::byte('\\'));
  CHECK(f.transitions[4].input == SymbolClass::single('\t'));
}

TEST_CASE("parse errors") {
  CHECK(code_of("start: 0\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\nstart: 1\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstates: 2\nstart: 0\n") == ErrorCode::kParse);
  CHECK(code_of("states: 0\nstart: 0\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\nbogus: 1\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\ntrans: 0 1 []:x\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\ntrans: 0 1 [c-a]:x\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\ntrans: 0 1 a\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\ntrans: 0 1 a:xy\n") == ErrorCode::kParse);
  CHECK(code_of("states: 2\nstart: 0\ntrans: 0 1 \\xZZ:x\n") == ErrorCode::kParse);
}

TEST_CASE("out of range states carry their location") {
  CHECK(where("states: 2\nstart: 0\ntrans: 0 2 a:x\n") == std::pair<std::size_t, std::size_t>{3, 10});
  CHECK(where("states: 2\nstart: 5\n").first == 2);
  CHECK(where("states: 2\nstart: 0\naccept: 1 7\n").first == 3);
  CHECK(where("states: 2\nstart: 0\nstart: 1\n").first == 3);
}

TEST_CASE("format is the inverse of parse") {
  CHECK(parse_ruleset(format_ruleset(fixtures::hello())) == fixtures::hello());
  std::mt19937_64 rng(11);
  brute::Shape shape;
  shape.epsilon_input = 0.2;
  shape.epsilon_output = 0.2;
  for (int i = 0; i < 300; ++i) {
    Fst f = brute::random_machine(rng, shape);
    // Exercise awkward bytes too.
    if (!f.transitions.empty() && f.transitions[0].input) {
      f.transitions[0].input->add_range(0, 40);
      f.transitions[0].input->add(']');
      f.transitions[0].input->add('-');
      f.transitions[0].input->add(255);
    }
    REQUIRE(parse_ruleset(format_ruleset(f)) == f);
  }
}

TEST_CASE("escape every byte") {
  for (unsigned s = 0; s < 256; ++s) {
    const std::string text = "states: 1\nstart: 0\ntrans: 0 0 " + escape_symbol(Symbol(s)) + ":" +
                             escape_symbol(Symbol(s)) + "\n";
    Fst f = parse_ruleset(text);
    REQUIRE(f.transitions[0].input == SymbolClass::single(Symbol(s)));
    REQUIRE(f.transitions[0].output == OutputLabel::byte(Symbol(s)));
  }
}

TEST_CASE("digest tracks the machine") {
  CHECK(fst_digest(fixtures::hello()) == fst_digest(fixtures::hello()));
  CHECK(fst_digest(fixtures::hello()) != fst_digest(fixtures::hello_lp()));
}
