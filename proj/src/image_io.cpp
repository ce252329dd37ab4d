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

#include "nfst/image_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "json.hpp"
#include "nfst/error.hpp"

namespace nfst {
namespace {

constexpr char kMagic[8] = {'N', 'F', 'S', 'T', 'O', 'V', 'L', 'Y'};

constexpr std::uint8_t kFlagStart = 1U << 0;
constexpr std::uint8_t kFlagReport = 1U << 1;
constexpr std::uint8_t kFlagOccupied = 1U << 2;

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) {
      throw Error(ErrorCode::kTruncatedInput, "image truncated at byte " + std::to_string(in_.size()));
    }
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return bytes(1)[0]; }
  std::uint16_t u16() {
    auto b = bytes(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    auto b = bytes(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  std::size_t pos = 0;
  while (pos < data.size()) {
    const std::size_t chunk = std::min<std::size_t>(data.size() - pos, 1U << 30);
    crc = ::crc32(crc, data.data() + pos, static_cast<uInt>(chunk));
    pos += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> save_image(const OverlayImage& image) {
  check_image(image);
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u16(kImageVersion);
  w.u16(image.grid.rows);
  w.u16(image.grid.cols);
  w.u8(static_cast<std::uint8_t>(image.grid.neighborhood));
  for (std::size_t i = 0; i < image.pes.size(); ++i) {
    const PeConfig& pe = image.pes[i];
    const auto bitmap = pe.match.to_bitmap();
    w.bytes(bitmap.data(), bitmap.size());
    std::uint8_t flags = 0;
    if (pe.is_start) flags |= kFlagStart;
    if (pe.is_report) flags |= kFlagReport;
    if (pe.occupied) flags |= kFlagOccupied;
    w.u8(flags);
    w.u8(pe.in_switch);
    const auto& entry = image.tram.entries[i];
    w.u8(entry.value_or(0));
    w.u8(entry ? 1 : 0);
  }
  const std::uint32_t crc = crc32(w.buffer());
  w.u32(crc);
  return std::move(w.buffer());
}

OverlayImage load_image(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.bytes(sizeof kMagic);
  if (std::memcmp(magic.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCode::kMalformedImage, "bad magic; not an overlay image");
  }
  const std::uint16_t version = r.u16();
  if (version != kImageVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "image version " + std::to_string(version) + ", expected " +
                    std::to_string(kImageVersion));
  }
  GridSpec grid;
  grid.rows = r.u16();
  grid.cols = r.u16();
  const std::uint8_t hood = r.u8();
  if (hood > 1) throw Error(ErrorCode::kMalformedImage, "unknown neighborhood byte");
  grid.neighborhood = static_cast<Neighborhood>(hood);
  if (grid.rows == 0 || grid.cols == 0 || grid.pe_count() > kMaxPeCount) {
    throw Error(ErrorCode::kMalformedImage, "bad grid dimensions");
  }

  const std::size_t body = kImageHeaderSize + grid.pe_count() * kImagePeRecordSize;
  r.need(body - r.pos() + 4);
  if (bytes.size() != body + 4) {
    throw Error(ErrorCode::kMalformedImage, "trailing bytes after image");
  }
  Reader tail(bytes.subspan(body));
  if (tail.u32() != crc32(bytes.first(body))) {
    throw Error(ErrorCode::kChecksumMismatch, "image checksum mismatch");
  }

  OverlayImage image = OverlayImage::empty(grid);
  for (std::size_t i = 0; i < grid.pe_count(); ++i) {
    SymbolClass::Bitmap bitmap;
    auto raw = r.bytes(bitmap.size());
    std::copy(raw.begin(), raw.end(), bitmap.begin());
    PeConfig& pe = image.pes[i];
    pe.match = SymbolClass::from_bitmap(bitmap);
    const std::uint8_t flags = r.u8();
    pe.is_start = flags & kFlagStart;
    pe.is_report = flags & kFlagReport;
    pe.occupied = flags & kFlagOccupied;
    pe.in_switch = r.u8();
    const std::uint8_t entry = r.u8();
    const std::uint8_t used = r.u8();
    if ((flags & ~(kFlagStart | kFlagReport | kFlagOccupied)) || used > 1 ||
        (!used && entry != 0)) {
      throw Error(ErrorCode::kMalformedImage, "PE " + std::to_string(i) + " has reserved bits set");
    }
    if (used) image.tram.entries[i] = entry;
  }
  check_image(image);
  return image;
}

namespace {

nlohmann::ordered_json pes_json(const OverlayImage& image) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < image.pes.size(); ++i) {
    const PeConfig& pe = image.pes[i];
    nlohmann::ordered_json j;
    j["pe_id"] = pe.pe_id;
    j["row"] = pe.pe_id / image.grid.cols;
    j["col"] = pe.pe_id % image.grid.cols;
    j["occupied"] = pe.occupied;
    j["start"] = pe.is_start;
    j["report"] = pe.is_report;
    j["match"] = pe.match.members();
    auto sw = nlohmann::ordered_json::array();
    for (Direction d : directions(image.grid.neighborhood)) {
      if (pe.listens(d)) sw.push_back(direction_name(d));
    }
    j["in_switch"] = sw;
    const auto& entry = image.tram.entries[i];
    j["tram"] = entry ? nlohmann::ordered_json(*entry) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::ordered_json image_json(const OverlayImage& image) {
  nlohmann::ordered_json j;
  j["version"] = kImageVersion;
  j["rows"] = image.grid.rows;
  j["cols"] = image.grid.cols;
  j["neighborhood"] = neighborhood_name(image.grid.neighborhood);
  j["pes"] = pes_json(image);
  return j;
}

}  // namespace

std::string image_to_json(const OverlayImage& image) {
  return image_json(image).dump(2) + "\n";
}

std::string image_to_json(const CompiledOverlay& compiled) {
  auto j = image_json(compiled.image);
  auto map = nlohmann::ordered_json::array();
  for (const auto& e : compiled.edge_map) {
    map.push_back({{"edge", e.edge}, {"src", e.src}, {"dst", e.dst}, {"pes", e.pes}});
  }
  j["edge_map"] = map;
  j["start"] = compiled.start;
  j["start_accepting"] = compiled.start_accepting;
  j["source_fst_digest"] = compiled.source_fst_digest;
  return j.dump(2) + "\n";
}

}  // namespace nfst
