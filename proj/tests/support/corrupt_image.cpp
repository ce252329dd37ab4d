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

// Rewrites one transduction RAM byte of an image file and reseals it.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

#include "nfst/image_io.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: corrupt_image <in> <out>\n";
    return 1;
  }
  std::ifstream in(argv[1], std::ios::binary);
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  auto image = nfst::load_image(bytes);
  for (auto& entry : image.tram.entries) {
    if (entry) {
      *entry ^= 0x01;
      break;
    }
  }
  const auto out = nfst::save_image(image);
  std::ofstream(argv[2], std::ios::binary)
      .write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  return 0;
}
