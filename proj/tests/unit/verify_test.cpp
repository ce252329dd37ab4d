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
#include "nfst/oracle.hpp"
#include "nfst/overlay.hpp"
#include "nfst/verify.hpp"
#include "nfst/window.hpp"

using namespace nfst;

TEST_CASE("golden machine verifies") {
  const Fst f = fixtures::hello_lp();
  VerifyOptions opts;
  opts.grid = {4, 4, Neighborhood::kMoore8};
  const auto r = verify(&f, nullptr, opts);
  CHECK(r.cases == 100);
  CHECK(r.passed == 100);
  CHECK(r.ok());
  CHECK(format_report(r).rfind("100/100 pass (seed 1)", 0) == 0);
}

TEST_CASE("a corrupted tram byte is caught") {
  const Fst f = fixtures::hello_lp();
  auto c = compile(f, {4, 4, Neighborhood::kMoore8});
  c.image.tram.entries[c.edge_map[1].pes[0]] = Symbol('j');
  VerifyOptions opts;
  opts.grid = c.image.grid;
  const auto r = verify(&f, &c.image, opts);
  CHECK_FALSE(r.ok());
  REQUIRE(r.first_failure);
  const auto& cx = *r.first_failure;
  CHECK(cx.n >= 1);
  // The counterexample really disagrees with the oracle.
  const auto want = oracle_stream(f, cx.input, cx.n);
  bool any_match = false;
  for (const auto& w : want) any_match = any_match || w.matched();
  CHECK(any_match);
  const auto text = format_report(r);
  CHECK(text.find("counterexample") != std::string::npos);
  CHECK(text.find("input") != std::string::npos);
}

TEST_CASE("zero cases") {
  const Fst f = fixtures::hello_lp();
  VerifyOptions opts;
  opts.cases = 0;
  const auto r = verify(&f, nullptr, opts);
  CHECK(r.ok());
  CHECK(r.cases == 0);
}

TEST_CASE("random mode is reproducible") {
  VerifyOptions opts;
  opts.cases = 60;
  opts.seed = 9;
  const auto a = verify(nullptr, nullptr, opts);
  opts.threads = 3;
  const auto b = verify(nullptr, nullptr, opts);
  CHECK(a.ok());
  CHECK(a.passed + a.skipped == 60);
  CHECK(format_report(a) == format_report(b));
  opts.seed = 10;
  opts.threads = 1;
  CHECK(verify(nullptr, nullptr, opts).ok());
}

TEST_CASE("generator shape") {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const Fst f = random_fst(rng);
    REQUIRE(f.state_count >= 2);
    REQUIRE(f.state_count <= 10);
    REQUIRE(f.transitions.size() >= 1);
    REQUIRE(f.transitions.size() <= 16);
    REQUIRE(is_length_preserving(f));
    const auto live = reachable_states(f);
    for (const auto& t : f.transitions) {
      REQUIRE(std::binary_search(live.begin(), live.end(), t.src));
    }
    bool accept_live = false;
    for (StateId s : f.accepting) {
      accept_live = accept_live || std::binary_search(live.begin(), live.end(), s);
    }
    REQUIRE(accept_live);
    const Bytes in = random_input(rng, f, 4, 64);
    REQUIRE(in.size() <= 64);
  }
  Rng a(5, 2), b(5, 2), c(5, 3);
  CHECK(a.next() == b.next());
  CHECK(a.next() != c.next());
}

TEST_CASE("hex escape") {
  CHECK(hex_escape(fixtures::bytes("hi   ")) == "hi\\x20\\x20\\x20");
  CHECK(hex_escape({'\\', 0, 0x7f, '~'}) == "\\x5c\\x00\\x7f~");
}
