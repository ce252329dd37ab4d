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

#include "nfst/epsilon.hpp"

#include <algorithm>
#include <set>

#include "nfst/error.hpp"

namespace nfst {
namespace {

void require_silent_epsilons(const Fst& fst) {
  for (std::size_t i = 0; i < fst.transitions.size(); ++i) {
    const auto& t = fst.transitions[i];
    if (t.is_epsilon_input() && !t.output.is_epsilon()) {
      throw Error(ErrorCode::kUnsupportedEpsilonOutput,
                  "transition " + std::to_string(i) +
                      " has an epsilon input with a byte output");
    }
  }
}

}  // namespace

std::vector<StateId> epsilon_closure(const Fst& fst, StateId state) {
  std::vector<bool> seen(fst.state_count, false);
  std::vector<StateId> stack{state};
  seen[state] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& t : fst.transitions) {
      if (t.src == s && t.is_epsilon_input() && !seen[t.dst]) {
        seen[t.dst] = true;
        stack.push_back(t.dst);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < fst.state_count; ++s) {
    if (seen[s]) out.push_back(s);
  }
  return out;
}

Fst eliminate_epsilon(const Fst& fst) {
  require_silent_epsilons(fst);
  const bool any_epsilon =
      std::any_of(fst.transitions.begin(), fst.transitions.end(),
                  [](const Transition& t) { return t.is_epsilon_input(); });
  if (!any_epsilon) return fst;

  Fst out;
  out.state_count = fst.state_count;
  out.start = fst.start;
  out.accepting = fst.accepting;

  std::set<Transition> emitted;
  auto emit = [&](const Transition& t) {
    if (emitted.insert(t).second) out.transitions.push_back(t);
  };
  for (const auto& t : fst.transitions) {
    if (!t.is_epsilon_input()) emit(t);
  }
  for (StateId q = 0; q < fst.state_count; ++q) {
    for (StateId p : epsilon_closure(fst, q)) {
      if (fst.is_accepting(p)) out.accepting.insert(q);
      if (p == q) continue;
      for (const auto& t : fst.transitions) {
        if (t.src != p || t.is_epsilon_input()) continue;
        Transition derived = t;
        derived.src = q;
        emit(derived);
      }
    }
  }
  return out;
}

}  // namespace nfst
