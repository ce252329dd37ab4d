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

#include "nfst/fst.hpp"

#include "nfst/error.hpp"

#include <algorithm>
#include <deque>

namespace nfst {

SymbolClass SymbolClass::single(Symbol s) {
  SymbolClass c;
  c.add(s);
  return c;
}

SymbolClass SymbolClass::range(Symbol lo, Symbol hi) {
  SymbolClass c;
  c.add_range(lo, hi);
  return c;
}

SymbolClass SymbolClass::all() {
  SymbolClass c;
  c.bits_.set();
  return c;
}

SymbolClass SymbolClass::from_bitmap(const Bitmap& bitmap) {
  SymbolClass c;
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    if ((bitmap[i / 8] >> (i % 8)) & 1U) c.bits_.set(i);
  }
  return c;
}

void SymbolClass::add_range(Symbol lo, Symbol hi) {
  for (unsigned s = lo; s <= hi; ++s) bits_.set(s);
}

std::vector<Symbol> SymbolClass::members() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    if (bits_.test(i)) out.push_back(static_cast<Symbol>(i));
  }
  return out;
}

SymbolClass::Bitmap SymbolClass::to_bitmap() const {
  Bitmap b{};
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    if (bits_.test(i)) b[i / 8] = static_cast<std::uint8_t>(b[i / 8] | (1U << (i % 8)));
  }
  return b;
}

std::strong_ordering operator<=>(const SymbolClass& a, const SymbolClass& b) {
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    if (a.bits_.test(i) != b.bits_.test(i)) {
      return a.bits_.test(i) ? std::strong_ordering::less
                             : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

bool is_length_preserving(const Fst& fst) {
  return std::all_of(fst.transitions.begin(), fst.transitions.end(),
                     [](const Transition& t) {
                       return !t.is_epsilon_input() && !t.output.is_epsilon();
                     });
}

std::vector<StateId> reachable_states(const Fst& fst) {
  std::vector<bool> seen(fst.state_count, false);
  if (fst.start >= fst.state_count) return {};
  std::vector<std::vector<StateId>> succ(fst.state_count);
  for (const auto& t : fst.transitions) {
    if (t.src < fst.state_count && t.dst < fst.state_count) {
      succ[t.src].push_back(t.dst);
    }
  }
  std::deque<StateId> queue{fst.start};
  seen[fst.start] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId d : succ[s]) {
      if (!seen[d]) {
        seen[d] = true;
        queue.push_back(d);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < fst.state_count; ++s) {
    if (seen[s]) out.push_back(s);
  }
  return out;
}

Fst reachable(const Fst& fst) {
  if (fst.start >= fst.state_count) {
    throw Error(ErrorCode::kInvalidFst, "start state out of range");
  }
  const auto states = reachable_states(fst);
  std::vector<std::optional<StateId>> remap(fst.state_count);
  for (std::size_t i = 0; i < states.size(); ++i) {
    remap[states[i]] = static_cast<StateId>(i);
  }
  Fst out;
  out.state_count = states.size();
  out.start = *remap[fst.start];
  for (StateId s : fst.accepting) {
    if (s < fst.state_count && remap[s]) out.accepting.insert(*remap[s]);
  }
  for (const auto& t : fst.transitions) {
    if (t.src >= fst.state_count || t.dst >= fst.state_count) {
      throw Error(ErrorCode::kInvalidFst, "transition state out of range");
    }
    if (!remap[t.src]) continue;
    Transition r = t;
    r.src = *remap[t.src];
    r.dst = *remap[t.dst];
    out.transitions.push_back(r);
  }
  return out;
}

}  // namespace nfst
