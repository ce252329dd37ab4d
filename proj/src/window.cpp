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

#include "nfst/window.hpp"

#include "nfst/error.hpp"

namespace nfst {

std::vector<std::span<const Symbol>> split_windows(std::span<const Symbol> input,
                                                   std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kUsage, "window length must be >= 1");
  std::vector<std::span<const Symbol>> out;
  for (std::size_t pos = 0; pos < input.size(); pos += n) {
    out.push_back(input.subspan(pos, std::min(n, input.size() - pos)));
  }
  return out;
}

}  // namespace nfst
