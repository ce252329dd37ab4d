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

#pragma once

#include <string>
#include <vector>

#include "nfst/fst.hpp"

namespace nfst {

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity;
  std::string message;
};

// Errors for broken invariants (ranges, dead edges), one warning per state
// unreachable from the start state. Empty means the machine is clean.
std::vector<Diagnostic> validate(const Fst& fst);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace nfst
