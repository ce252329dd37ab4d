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

#include "nfst/resource.hpp"

#include "nfst/error.hpp"

namespace nfst {

std::uint64_t pe_id_width(std::uint64_t m) {
  const std::uint64_t v = m < 2 ? 2 : m;
  std::uint64_t width = 0;
  while ((std::uint64_t{1} << width) < v) ++width;
  return width;
}

ResourceReport estimate(std::uint64_t m, std::uint64_t occupied, std::uint64_t fifo_capacity) {
  if (m == 0 || m > kMaxPeCount) throw Error(ErrorCode::kUsage, "PE count out of range");
  ResourceReport r;
  r.m = m;
  r.occupied = occupied;
  r.match_ram_bits = 256 * m;
  r.tram_bits = 8 * m;
  r.vector_bits = m * m * pe_id_width(m);
  r.fifo_bits = fifo_capacity * r.vector_bits;
  r.total_bits = r.match_ram_bits + r.tram_bits + r.vector_bits + r.fifo_bits;
  return r;
}

ResourceReport estimate(const OverlayImage& image, std::uint64_t fifo_capacity) {
  return estimate(image.pe_count(), image.occupied_count(), fifo_capacity);
}

std::vector<ResourceReport> scaling_sweep(std::span<const GridSpec> sizes,
                                          std::uint64_t fifo_capacity) {
  if (sizes.empty()) throw Error(ErrorCode::kUsage, "sweep needs at least one grid size");
  std::vector<ResourceReport> rows;
  rows.reserve(sizes.size());
  for (const auto& g : sizes) {
    check_grid(g);
    rows.push_back(estimate(g.pe_count(), 0, fifo_capacity));
  }
  return rows;
}

std::string to_csv(std::span<const ResourceReport> rows) {
  std::string out = "m,occupied,match_ram_bits,tram_bits,vector_bits,fifo_bits,total_bits\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + std::to_string(r.occupied) + ',' +
           std::to_string(r.match_ram_bits) + ',' + std::to_string(r.tram_bits) + ',' +
           std::to_string(r.vector_bits) + ',' + std::to_string(r.fifo_bits) + ',' +
           std::to_string(r.total_bits) + '\n';
  }
  return out;
}

}  // namespace nfst
