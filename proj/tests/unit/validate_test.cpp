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
#include "nfst/validate.hpp"

using namespace nfst;

TEST_CASE("golden machine is clean") { CHECK(validate(fixtures::hello()).empty()); }

TEST_CASE("dst past the last state") {
  Fst f = fixtures::hello();
  f.transitions[4].dst = 6;
  auto d = validate(f);
  REQUIRE(d.size() == 1);
  CHECK(d[0].severity == Severity::kError);
  CHECK(has_errors(d));
}

TEST_CASE("unreachable accepting state") {
  Fst f = fixtures::hello();
  f.state_count = 7;
  f.accepting.insert(6);
  auto d = validate(f);
  REQUIRE(d.size() == 1);
  CHECK(d[0].severity == Severity::kWarning);
  CHECK_FALSE(has_errors(d));
}

TEST_CASE("other invariants") {
  Fst f = fixtures::hello();
  f.transitions[0].input = SymbolClass();
  CHECK(has_errors(validate(f)));
  f = fixtures::hello();
  f.start = 9;
  CHECK(has_errors(validate(f)));
  f = fixtures::hello();
  f.accepting.insert(40);
  CHECK(has_errors(validate(f)));
}
