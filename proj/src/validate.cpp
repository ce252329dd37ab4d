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

#include "nfst/validate.hpp"

#include <algorithm>

namespace nfst {

std::vector<Diagnostic> validate(const Fst& fst) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string msg) {
    out.push_back({Severity::kError, std::move(msg)});
  };

  if (fst.state_count == 0) {
    error("state count must be positive");
    return out;
  }
  if (fst.start >= fst.state_count) {
    error("start state " + std::to_string(fst.start) + " out of range");
  }
  for (StateId s : fst.accepting) {
    if (s >= fst.state_count) {
      error("accepting state " + std::to_string(s) + " out of range");
    }
  }
  for (std::size_t i = 0; i < fst.transitions.size(); ++i) {
    const auto& t = fst.transitions[i];
    const std::string where = "transition " + std::to_string(i);
    if (t.src >= fst.state_count) {
      error(where + ": source " + std::to_string(t.src) + " out of range");
    }
    if (t.dst >= fst.state_count) {
      error(where + ": destination " + std::to_string(t.dst) + " out of range");
    }
    if (t.input && t.input->empty()) error(where + ": empty symbol class");
  }
  if (has_errors(out)) return out;

  const auto live = reachable_states(fst);
  for (StateId s = 0; s < fst.state_count; ++s) {
    if (!std::binary_search(live.begin(), live.end(), s)) {
      out.push_back({Severity::kWarning,
                     "state " + std::to_string(s) + " is unreachable from start"});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

}  // namespace nfst
