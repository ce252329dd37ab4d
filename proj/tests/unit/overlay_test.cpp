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

#include <cstdlib>
#include <map>
#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "nfst/error.hpp"
#include "nfst/image_io.hpp"
#include "nfst/oracle.hpp"
#include "nfst/overlay.hpp"
#include "nfst/ruleset.hpp"
#include "nfst/verify.hpp"

using namespace nfst;

namespace {

const GridSpec k4x4{4, 4, Neighborhood::kMoore8};

bool touching(const GridSpec& g, PeId a, PeId b) {
  const int ra = a / g.cols, ca = a % g.cols, rb = b / g.cols, cb = b % g.cols;
  const int dr = std::abs(ra - rb), dc = std::abs(ca - cb);
  if (a == b) return false;
  if (g.neighborhood == Neighborhood::kMoore8) return dr <= 1 && dc <= 1;
  return dr + dc == 1;
}

ErrorCode compile_code(const Fst& f, const GridSpec& g) {
  try {
    compile(f, g);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

// Checks every structural promise of a compiled overlay against the source.
void check_overlay(const Fst& f, const CompiledOverlay& c) {
  const auto& img = c.image;
  const GridSpec& g = img.grid;
  std::map<PeId, std::size_t> host;
  for (const auto& pe : c.edge_map) {
    for (PeId p : pe.pes) {
      REQUIRE(host.count(p) == 0);
      host[p] = pe.edge;
    }
  }
  REQUIRE(host.size() == img.occupied_count());
  for (PeId p = 0; p < img.pe_count(); ++p) {
    const auto& cfg = img.pes[p];
    REQUIRE(cfg.pe_id == p);
    if (!host.count(p)) {
      REQUIRE_FALSE(cfg.occupied);
      REQUIRE(cfg.match.empty());
      REQUIRE(cfg.in_switch == 0);
      REQUIRE_FALSE(img.tram.entries[p].has_value());
      continue;
    }
    const Transition& t = f.transitions[host[p]];
    REQUIRE(cfg.occupied);
    REQUIRE(cfg.match == *t.input);
    REQUIRE(cfg.is_start == (t.src == f.start));
    REQUIRE(cfg.is_report == f.is_accepting(t.dst));
    REQUIRE(img.tram.entries[p] == t.output.value());
    for (Direction d : directions(Neighborhood::kMoore8)) {
      auto nb = neighbor(g, p, d);
      bool want = false;
      if (nb && touching(g, p, *nb) && host.count(*nb)) {
        want = f.transitions[host[*nb]].dst == t.src;
      }
      REQUIRE(cfg.listens(d) == want);
    }
    // Every successor edge has an adjacent instance.
    for (const auto& succ : c.edge_map) {
      if (succ.src != t.dst) continue;
      bool found = false;
      for (PeId q : succ.pes) found = found || touching(g, p, q);
      REQUIRE(found);
    }
  }
}

Fst chain(std::size_t k) {
  Fst f;
  f.state_count = k + 1;
  f.accepting = {static_cast<StateId>(k)};
  for (std::size_t i = 0; i < k; ++i) {
    f.transitions.push_back({static_cast<StateId>(i), static_cast<StateId>(i + 1),
                             SymbolClass::single(Symbol('a' + i % 26)), OutputLabel::byte('z')});
  }
  return f;
}

}  // namespace

TEST_CASE("golden compile") {
  const Fst f = fixtures::hello_lp();
  const auto c = compile(f, k4x4);
  CHECK(c.image.occupied_count() == 5);
  CHECK(c.replications() == 0);
  check_overlay(f, c);
  REQUIRE(c.edge_map.size() == 5);
  for (std::size_t i = 0; i + 1 < 5; ++i) {
    CHECK(touching(k4x4, c.edge_map[i].pes[0], c.edge_map[i + 1].pes[0]));
  }
  CHECK(c.image.pes[c.edge_map[0].pes[0]].is_start);
  CHECK(c.image.pes[c.edge_map[4].pes[0]].is_report);
  std::string tram;
  for (const auto& e : c.edge_map) tram.push_back(char(*c.image.tram.entries[e.pes[0]]));
  CHECK(tram == "hi   ");
  CHECK(c.source_fst_digest == fst_digest(f));
}

TEST_CASE("smallest machine") {
  Fst f = parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 a:a\n");
  const auto c = compile(f, {1, 1, Neighborhood::kMoore8});
  CHECK(c.image.occupied_count() == 1);
  CHECK(c.image.pes[0].is_start);
  CHECK(c.image.pes[0].is_report);
  check_overlay(f, c);
  CHECK(brute::isomorphic(decompile(c), f));
}

TEST_CASE("compile errors") {
  CHECK(compile_code(chain(5), {2, 2, Neighborhood::kMoore8}) == ErrorCode::kCapacityExceeded);
  CHECK(compile_code(fixtures::hello(), k4x4) == ErrorCode::kNotLengthPreserving);
  Fst eps = fixtures::hello_lp();
  eps.transitions.push_back({0, 1, std::nullopt, OutputLabel::epsilon()});
  CHECK(compile_code(eps, k4x4) == ErrorCode::kEpsilonPresent);
  Fst bad = fixtures::hello_lp();
  bad.transitions[0].dst = 99;
  CHECK(compile_code(bad, k4x4) == ErrorCode::kInvalidFst);
  CHECK(compile_code(fixtures::hello_lp(), {0, 4, Neighborhood::kMoore8}) == ErrorCode::kUsage);
}

TEST_CASE("a chain follows the snake") {
  for (std::size_t k : {1, 5, 12, 16}) {
    const Fst f = chain(k);
    const auto c = compile(f, k4x4);
    CHECK(c.replications() == 0);
    check_overlay(f, c);
    for (std::size_t i = 0; i < k; ++i) CHECK(snake_index(k4x4, c.edge_map[i].pes[0]) == i);
  }
}

TEST_CASE("a nine-edge star needs a replicated successor") {
  Fst f;
  f.state_count = 3;
  f.accepting = {2};
  for (int i = 0; i < 9; ++i) {
    f.transitions.push_back({0, 1, SymbolClass::single(Symbol('a' + i)), OutputLabel::byte('x')});
  }
  f.transitions.push_back({1, 2, SymbolClass::single('z'), OutputLabel::byte('y')});
  const auto c = compile(f, {5, 5, Neighborhood::kMoore8});
  check_overlay(f, c);
  CHECK(c.edge_map[9].pes.size() >= 2);
  CHECK(brute::isomorphic(decompile(c), f));
}

TEST_CASE("no transitions") {
  Fst f = parse_ruleset("states: 1\nstart: 0\naccept: 0\n");
  CHECK(place(f, k4x4).empty());
  const auto c = compile(f, k4x4);
  CHECK(c.image.occupied_count() == 0);
  CHECK(c.start_accepting);
  CHECK(brute::isomorphic(decompile(c), f));
}

TEST_CASE("unreachable edges are not placed") {
  Fst f = fixtures::hello_lp();
  f.state_count = 8;
  f.transitions.push_back({6, 7, SymbolClass::single('q'), OutputLabel::byte('q')});
  const auto c = compile(f, k4x4);
  CHECK(c.image.occupied_count() == 5);
  CHECK(brute::isomorphic(decompile(c), reachable(f)));
}

TEST_CASE("replication budget") {
  Fst f = parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 a:a\ntrans: 1 1 b:b\n");
  for (int i = 0; i < 8; ++i) {
    f.transitions.push_back({0, 1, SymbolClass::single(Symbol('c' + i)), OutputLabel::byte('x')});
  }
  // Nine predecessors of the self loop, which also follows itself.
  try {
    compile(f, {6, 6, Neighborhood::kVonNeumann4}, {1});
    FAIL("no throw");
  } catch (const AdjacencyError& e) {
    CHECK_FALSE(e.pairs().empty());
    CHECK(std::is_sorted(e.pairs().begin(), e.pairs().end()));
  }
}

TEST_CASE("edges with too many successors cannot be placed") {
  Fst f;
  f.state_count = 2;
  f.accepting = {1};
  f.transitions.push_back({0, 1, SymbolClass::single('a'), OutputLabel::byte('x')});
  for (int i = 0; i < 5; ++i) {
    f.transitions.push_back({1, 1, SymbolClass::single(Symbol('b' + i)), OutputLabel::byte('y')});
  }
  CHECK(compile_code(f, {8, 8, Neighborhood::kVonNeumann4}) ==
        ErrorCode::kAdjacencyUnsatisfiable);
}

TEST_CASE("random machines: structure, round trip and semantics") {
  Rng rng(21);
  RandomFstOptions opts;
  opts.max_edges = 12;
  const auto words = brute::all_words({'a', 'b', 'c'}, 5);
  std::size_t placed = 0;
  for (int i = 0; i < 150; ++i) {
    const Fst f = random_fst(rng, opts);
    const GridSpec g{7, 7, i % 3 == 0 ? Neighborhood::kVonNeumann4 : Neighborhood::kMoore8};
    const auto attempt = fixtures::try_compile(f, g);
    if (!attempt) continue;
    const CompiledOverlay& c = *attempt;
    ++placed;
    check_overlay(f, c);
    // Deterministic placement.
    REQUIRE(compile(f, g) == c);
    const Fst back = decompile(c);
    REQUIRE(brute::isomorphic(back, reachable(f)));
    if (i % 5 == 0) {
      for (const auto& w : words) {
        REQUIRE(brute::enumerate(back, w).outputs == brute::enumerate(f, w).outputs);
      }
    }
    REQUIRE(load_image(save_image(c.image)) == c.image);
  }
  CHECK(placed >= 60);
}

TEST_CASE("decompile numbers states breadth first") {
  Fst f = parse_ruleset(
      "states: 4\nstart: 3\naccept: 0\ntrans: 3 1 a:x\ntrans: 1 2 b:y\ntrans: 2 0 c:z\n");
  const Fst back = decompile(compile(f, k4x4));
  CHECK(back.start == 0);
  CHECK(back.accepting == std::set<StateId>{3});
  CHECK(brute::isomorphic(back, f));
}

TEST_CASE("malformed images") {
  Fst f = parse_ruleset("states: 2\nstart: 0\naccept: 1\ntrans: 0 1 a:a\n");
  auto c = compile(f, {1, 2, Neighborhood::kMoore8});
  CHECK_NOTHROW(check_image(c.image));
  auto code = [](const CompiledOverlay& x) {
    try {
      decompile(x);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOk;
  };
  const PeId used = c.edge_map[0].pes[0];
  const Direction toward = used == 0 ? Direction::kE : Direction::kW;

  auto x = c;
  x.image.pes[used].in_switch = std::uint8_t(1U << unsigned(toward));
  CHECK_THROWS_AS(check_image(x.image), Error);
  CHECK(code(x) == ErrorCode::kMalformedImage);

  x = c;
  x.image.pes[used].in_switch = std::uint8_t(1U << unsigned(Direction::kN));
  CHECK(code(x) == ErrorCode::kMalformedImage);

  x = c;
  x.image.tram.entries[used].reset();
  CHECK(code(x) == ErrorCode::kMalformedImage);

  x = c;
  x.image.pes[used].is_report = false;
  CHECK(decompile(x).accepting.empty());

  x = c;
  x.image.pes[used].match = SymbolClass();
  CHECK(code(x) == ErrorCode::kMalformedImage);

  x = c;
  x.edge_map[0].pes = {PeId(1 - used)};
  CHECK(code(x) == ErrorCode::kMalformedImage);
}
