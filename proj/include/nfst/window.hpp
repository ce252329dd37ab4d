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

#include <cstddef>
#include <span>
#include <vector>

#include "nfst/fst.hpp"

namespace nfst {

enum class Outcome { kMatched, kDiscarded };

// Consecutive windows of length n; a trailing remainder becomes a shorter
// final window. Throws Error(kUsage) when n == 0.
std::vector<std::span<const Symbol>> split_windows(std::span<const Symbol> input,
                                                   std::size_t n);

}  // namespace nfst
