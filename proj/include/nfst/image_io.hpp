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

// Binary overlay image, version 1. Little-endian throughout.
//
//   "NFSTOVLY"  magic, 8 bytes
//   u16         version
//   u16 rows, u16 cols, u8 neighborhood (0 moore8, 1 vonneumann4)
//   per PE, row-major, 36 bytes each:
//     32 bytes  match bitmap (symbol i -> byte i/8, bit i%8)
//     u8        flags: bit0 start, bit1 report, bit2 occupied
//     u8        switch mask, bit order N NE E SE S SW W NW
//     u8        tram entry
//     u8        tram used flag (0 or 1)
//   u32         CRC-32 of everything above

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nfst/overlay.hpp"

namespace nfst {

inline constexpr std::uint16_t kImageVersion = 1;
inline constexpr std::size_t kImageHeaderSize = 15;
inline constexpr std::size_t kImagePeRecordSize = 36;

std::uint32_t crc32(std::span<const std::uint8_t> data);

std::vector<std::uint8_t> save_image(const OverlayImage& image);

// Throws Error with kTruncatedInput, kVersionMismatch, kChecksumMismatch or
// kMalformedImage.
OverlayImage load_image(std::span<const std::uint8_t> bytes);

// Human-readable dump of the same fields, plus the edge map when given a
// CompiledOverlay.
std::string image_to_json(const OverlayImage& image);
std::string image_to_json(const CompiledOverlay& compiled);

}  // namespace nfst
