// Copyright 2026 The lpformant Authors
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

#include "lpformant/wav.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lpformant {

namespace {

std::uint32_t ReadLe32(std::istream &is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char *>(b.data()), 4))
    throw std::runtime_error("WAV: unexpected end of file");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t ReadLe16(std::istream &is) {
  std::array<unsigned char, 2> b{};
  if (!is.read(reinterpret_cast<char *>(b.data()), 2))
    throw std::runtime_error("WAV: unexpected end of file");
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::string ReadTag(std::istream &is) {
  char tag[4];
  if (!is.read(tag, 4)) throw std::runtime_error("WAV: unexpected end of file");
  return std::string(tag, 4);
}

void WriteLe32(std::ostream &os, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff),
               static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

void WriteLe16(std::ostream &os, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

}  // namespace

SignalBuffer ReadWav(std::istream &is) {
  if (ReadTag(is) != "RIFF") throw std::runtime_error("WAV: missing RIFF header");
  ReadLe32(is);
  if (ReadTag(is) != "WAVE") throw std::runtime_error("WAV: missing WAVE tag");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  while (true) {
    std::string tag = ReadTag(is);
    std::uint32_t size = ReadLe32(is);
    if (tag == "fmt ") {
      if (size < 16) throw std::runtime_error("WAV: fmt chunk too small");
      std::uint16_t format = ReadLe16(is);
      channels = ReadLe16(is);
      rate = ReadLe32(is);
      ReadLe32(is);  // byte rate
      ReadLe16(is);  // block align
      bits = ReadLe16(is);
      is.ignore(size - 16 + (size & 1));
      // 0xFFFE is WAVE_FORMAT_EXTENSIBLE; accepted when it carries plain PCM.
      if (format != 1 && format != 0xFFFE)
        throw std::runtime_error("WAV: only PCM is supported");
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw std::runtime_error("WAV: data chunk before fmt chunk");
      if (channels != 1)
        throw std::runtime_error("WAV: expected mono, got " +
                                 std::to_string(channels) + " channels");
      if (bits != 16)
        throw std::runtime_error("WAV: expected 16-bit samples, got " +
                                 std::to_string(bits));
      SignalBuffer x;
      x.sample_rate = static_cast<int>(rate);
      x.samples.resize(size / 2);
      for (double &v : x.samples)
        v = static_cast<std::int16_t>(ReadLe16(is)) / 32768.0;
      return x;
    } else {
      is.ignore(size + (size & 1));
      if (!is) throw std::runtime_error("WAV: no data chunk");
    }
  }
}

SignalBuffer ReadWavFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return ReadWav(is);
}

void WriteWav(const SignalBuffer &x, std::ostream &os) {
  if (x.sample_rate <= 0) throw std::invalid_argument("WAV: bad sample rate");
  auto data_bytes = static_cast<std::uint32_t>(x.size() * 2);
  os.write("RIFF", 4);
  WriteLe32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteLe32(os, 16);
  WriteLe16(os, 1);
  WriteLe16(os, 1);
  WriteLe32(os, static_cast<std::uint32_t>(x.sample_rate));
  WriteLe32(os, static_cast<std::uint32_t>(x.sample_rate) * 2);
  WriteLe16(os, 2);
  WriteLe16(os, 16);
  os.write("data", 4);
  WriteLe32(os, data_bytes);
  for (double v : x.samples) {
    double s = std::round(v * 32768.0);
    if (!(s >= -32768.0)) s = -32768.0;
    if (s > 32767.0) s = 32767.0;
    WriteLe16(os, static_cast<std::uint16_t>(static_cast<std::int16_t>(s)));
  }
}

void WriteWavFile(const SignalBuffer &x, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  WriteWav(x, os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace lpformant
