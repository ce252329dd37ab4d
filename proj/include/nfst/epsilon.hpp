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

#include <vector>

#include "nfst/fst.hpp"

namespace nfst {

// Epsilon closure of a single state over epsilon-input transitions, ascending.
std::vector<StateId> epsilon_closure(const Fst& fst, StateId state);

// Removes every epsilon-input transition while preserving the transduction
// relation. Original symbol transitions keep their order and are followed by
// the derived ones; a machine without epsilon inputs is returned unchanged.
// Throws Error(kUnsupportedEpsilonOutput) if an epsilon input emits a byte.
Fst eliminate_epsilon(const Fst& fst);

}  // namespace nfst
