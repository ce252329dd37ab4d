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

// Finite state transducer data model.
//
// An Fst is the tuple (Q, Sigma, delta, omega, Gamma, q0, F) with Sigma and
// Gamma both the 256 byte values. Each transition carries its own output
// label, so the output function is per edge.

#pragma once

#include <array>
#include <bitset>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace nfst {

using Symbol = std::uint8_t;
using StateId = std::uint32_t;
using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kAlphabetSize = 256;

// Membership bitmap over all 256 symbols; this is exactly the image held in a
// PE's 256x1-bit match RAM.
class SymbolClass {
 public:
  using Bitmap = std::array<std::uint8_t, kAlphabetSize / 8>;

  SymbolClass() = default;

  static SymbolClass single(Symbol s);
  static SymbolClass range(Symbol lo, Symbol hi);
  static SymbolClass all();
  // Bit i of the class lives in bitmap[i / 8], bit (i % 8), LSB first.
  static SymbolClass from_bitmap(const Bitmap& bitmap);

  void add(Symbol s) { bits_.set(s); }
  void add_range(Symbol lo, Symbol hi);

  bool contains(Symbol s) const { return bits_.test(s); }
  bool empty() const { return bits_.none(); }
  std::size_t count() const { return bits_.count(); }
  std::vector<Symbol> members() const;
  Bitmap to_bitmap() const;

  friend bool operator==(const SymbolClass&, const SymbolClass&) = default;
  friend std::strong_ordering operator<=>(const SymbolClass& a,
                                          const SymbolClass& b);

 private:
  std::bitset<kAlphabetSize> bits_;
};

class OutputLabel {
 public:
  OutputLabel() = default;
  static OutputLabel epsilon() { return OutputLabel(); }
  static OutputLabel byte(Symbol s) { return OutputLabel(s); }

  bool is_epsilon() const { return !value_.has_value(); }
  Symbol value() const { return *value_; }

  friend bool operator==(const OutputLabel&, const OutputLabel&) = default;
  friend auto operator<=>(const OutputLabel&, const OutputLabel&) = default;

 private:
  explicit OutputLabel(Symbol s) : value_(s) {}
  std::optional<Symbol> value_;
};

struct Transition {
  StateId src = 0;
  StateId dst = 0;
  std::optional<SymbolClass> input;  // nullopt is an epsilon input
  OutputLabel output;

  bool is_epsilon_input() const { return !input.has_value(); }

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Fst {
  std::size_t state_count = 1;
  std::vector<Transition> transitions;
  StateId start = 0;
  std::set<StateId> accepting;

  bool is_accepting(StateId s) const { return accepting.count(s) != 0; }

  friend bool operator==(const Fst&, const Fst&) = default;
};

// True iff every transition consumes a symbol and emits exactly one byte.
bool is_length_preserving(const Fst& fst);

// States reachable from the start state over any transition, ascending.
std::vector<StateId> reachable_states(const Fst& fst);

// The machine restricted to reachable states, renumbered densely in ascending
// order of original id. Transitions keep their relative order.
Fst reachable(const Fst& fst);

}  // namespace nfst
