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

#include "nfst/oracle.hpp"

#include <map>
#include <set>

#include "nfst/error.hpp"

namespace nfst {
namespace {

using Frontier = std::map<StateId, std::set<Bytes>>;

void close_over_epsilon(const Fst& fst, Frontier& frontier) {
  std::vector<StateId> work;
  for (const auto& [s, _] : frontier) work.push_back(s);
  while (!work.empty()) {
    StateId s = work.back();
    work.pop_back();
    for (const auto& t : fst.transitions) {
      if (t.src != s || !t.is_epsilon_input()) continue;
      if (!t.output.is_epsilon()) {
        throw Error(ErrorCode::kUnsupportedEpsilonOutput,
                    "epsilon input with a byte output");
      }
      auto& into = frontier[t.dst];
      const std::size_t before = into.size();
      const auto from = frontier[s];
      into.insert(from.begin(), from.end());
      if (into.size() != before) work.push_back(t.dst);
    }
  }
}

}  // namespace

OracleResult oracle_window(const Fst& fst, std::span<const Symbol> window) {
  Frontier frontier;
  frontier[fst.start].insert(Bytes{});
  close_over_epsilon(fst, frontier);

  for (Symbol sym : window) {
    Frontier next;
    for (const auto& [state, outputs] : frontier) {
      for (const auto& t : fst.transitions) {
        if (t.src != state || t.is_epsilon_input() || !t.input->contains(sym)) {
          continue;
        }
        auto& into = next[t.dst];
        for (const auto& o : outputs) {
          Bytes extended = o;
          if (!t.output.is_epsilon()) extended.push_back(t.output.value());
          into.insert(std::move(extended));
        }
      }
    }
    close_over_epsilon(fst, next);
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  std::set<Bytes> accepted;
  for (const auto& [state, outputs] : frontier) {
    if (fst.is_accepting(state)) accepted.insert(outputs.begin(), outputs.end());
  }
  OracleResult r;
  if (!accepted.empty()) {
    r.outcome = Outcome::kMatched;
    r.outputs.assign(accepted.begin(), accepted.end());
  }
  return r;
}

std::vector<OracleResult> oracle_stream(const Fst& fst,
                                        std::span<const Symbol> input,
                                        std::size_t n) {
  std::vector<OracleResult> out;
  const auto windows = split_windows(input, n);
  out.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    OracleResult r = oracle_window(fst, windows[i]);
    r.window_index = i;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nfst
