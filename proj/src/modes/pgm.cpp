// Copyright 2026 The gemsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gemsim/modes/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gemsim/core/error.hpp"

namespace gemsim::modes {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("PGM: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  const std::string magic = header_token(in);
  if (magic != "P2" && magic != "P5") throw IoError("PGM: unsupported magic '" + magic + "'");
  GrayImage img;
  img.width = header_int(in, "width");
  img.height = header_int(in, "height");
  img.maxval = header_int(in, "maxval");
  if (img.width <= 0 || img.height <= 0) throw IoError("PGM: empty image");
  if (img.maxval <= 0 || img.maxval > 65535) throw IoError("PGM: maxval out of range");
  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);

  if (magic == "P2") {
    for (auto& px : img.pixels) {
      long v;
      if (!(in >> v) || v < 0 || v > img.maxval) throw IoError("PGM: truncated or out-of-range ASCII data");
      px = static_cast<std::uint16_t>(v);
    }
    return img;
  }
  const bool wide = img.maxval > 255;
  std::vector<unsigned char> raw(count * (wide ? 2 : 1));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw IoError("PGM: truncated binary data");
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = wide ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
    if (static_cast<int>(v) > img.maxval) throw IoError("PGM: sample exceeds maxval");
    img.pixels[i] = static_cast<std::uint16_t>(v);
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image '" + path.string() + "'");
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  const bool wide = img.maxval > 255;
  std::vector<unsigned char> raw;
  raw.reserve(img.pixels.size() * (wide ? 2 : 1));
  for (auto px : img.pixels) {
    if (wide) raw.push_back(static_cast<unsigned char>(px >> 8));
    raw.push_back(static_cast<unsigned char>(px & 0xFF));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("PGM: write failed");
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image '" + path.string() + "'");
  write_pgm(out, img);
}

GrayImage render_intensity(const Intensity& in, double norm) {
  const auto& g = in.grid;
  if (norm <= 0.0) norm = *std::max_element(in.values.begin(), in.values.end());
  GrayImage img{g.nx(), g.ny(), 65535, std::vector<std::uint16_t>(g.size())};
  for (int row = 0; row < g.ny(); ++row) {
    const int iy = g.ny() - 1 - row;
    for (int ix = 0; ix < g.nx(); ++ix) {
      const double v = norm > 0.0 ? in(ix, iy) / norm : 0.0;
      img.pixels[static_cast<std::size_t>(row) * g.nx() + ix] =
          static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
    }
  }
  return img;
}

}  // namespace gemsim::modes
