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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lpformant/corpus.h"
#include "lpformant/eval.h"
#include "lpformant/refine.h"
#include "lpformant/wav.h"

using namespace lpformant;

namespace {

SignalBuffer Tone(std::size_t n) {
  SignalBuffer x;
  x.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) x.samples[i] = 0.2 * std::sin(0.05 * static_cast<double>(i));
  return x;
}

double NoisePower(const SignalBuffer &clean, const SignalBuffer &noisy) {
  double s = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    double d = noisy.samples[i] - clean.samples[i];
    s += d * d;
  }
  return s / static_cast<double>(clean.size());
}

double Power(const SignalBuffer &x) {
  double s = 0.0;
  for (double v : x.samples) s += v * v;
  return s / static_cast<double>(x.size());
}

void PutLe(std::string &s, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::string WavBytes(int channels, int bits, int rate, const std::vector<std::int16_t> &data) {
  std::string fmt, body;
  PutLe(fmt, 1, 2);
  PutLe(fmt, channels, 2);
  PutLe(fmt, rate, 4);
  PutLe(fmt, rate * channels * bits / 8, 4);
  PutLe(fmt, channels * bits / 8, 2);
  PutLe(fmt, bits, 2);
  for (auto v : data) PutLe(body, static_cast<std::uint16_t>(v), 2);
  std::string out = "RIFF";
  PutLe(out, 4 + 8 + fmt.size() + 8 + 8 + 4 + body.size(), 4);
  out += "WAVEfmt ";
  PutLe(out, fmt.size(), 4);
  out += fmt;
  out += "LIST";  // unrelated chunk to skip
  PutLe(out, 4, 4);
  out += "INFO";
  out += "data";
  PutLe(out, body.size(), 4);
  out += body;
  return out;
}

}  // namespace

TEST_CASE("white noise at a target SNR") {
  auto clean = Tone(8000);
  for (double snr : {0.0, 5.0, 20.0}) {
    auto noisy = MixNoise(clean, {NoiseKind::kWhite, snr, 3});
    double ratio = Power(clean) / NoisePower(clean, noisy);
    CHECK(ratio == doctest::Approx(std::pow(10.0, snr / 10.0)).epsilon(1e-6));
    CHECK(std::fabs(MeasureSnrDb(clean, noisy) - snr) < 0.01);
  }
  auto a = MixNoise(clean, {NoiseKind::kWhite, 10.0, 3});
  auto b = MixNoise(clean, {NoiseKind::kWhite, 10.0, 3});
  auto c = MixNoise(clean, {NoiseKind::kWhite, 10.0, 4});
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
}

TEST_CASE("infinite SNR leaves the signal alone") {
  auto clean = Tone(500);
  CHECK(MixNoise(clean, {}).samples == clean.samples);
}

TEST_CASE("noise mixing errors") {
  SignalBuffer silent{std::vector<double>(100, 0.0), 8000};
  CHECK_THROWS_AS(MixNoise(silent, {NoiseKind::kWhite, 10.0, 1}), std::invalid_argument);
  auto clean = Tone(1000);
  auto shorter = Tone(999);
  CHECK_THROWS_AS(MixNoise(clean, {NoiseKind::kFile, 10.0, 1}, &shorter), std::invalid_argument);
  CHECK_THROWS_AS(MixNoise(clean, {NoiseKind::kFile, 10.0, 1}), std::invalid_argument);
}

TEST_CASE("file noise draws a seeded segment") {
  auto clean = Tone(4000);
  auto babble = MakePseudoBabble(12000, 5);
  CHECK(babble.samples.size() == 12000);
  CHECK(MakePseudoBabble(12000, 5).samples == babble.samples);
  auto a = MixNoise(clean, {NoiseKind::kFile, 5.0, 8}, &babble);
  auto b = MixNoise(clean, {NoiseKind::kFile, 5.0, 8}, &babble);
  CHECK(a.samples == b.samples);
  CHECK(std::fabs(MeasureSnrDb(clean, a) - 5.0) < 0.01);
}

TEST_CASE("synthetic corpus construction") {
  auto corpus = MakeSyntheticCorpus(6, 11);
  REQUIRE(corpus.size() == 6);
  for (const auto &u : corpus) {
    const auto n = u.audio.samples.size();
    CHECK(u.audio.sample_rate == 8000);
    CHECK(n >= 8 * 3 * 150);
    CHECK(n <= 8 * 8 * 300);
    double rms = std::sqrt(Power(u.audio));
    CHECK(rms == doctest::Approx(0.1).epsilon(1e-9));
    REQUIRE(u.truth.size() == NumFrames(n, FrameSpec{}, 8000));
    CHECK_NOTHROW(u.truth.Validate(4000));
    for (std::size_t k = 0; k < u.truth.size(); ++k) {
      CHECK(u.truth.times[k] == doctest::Approx(0.0125 + 0.01 * k));
      const auto &f = u.truth.formants[k];
      CHECK(u.truth.valid[k]);
      CHECK(f[0] >= 300);
      CHECK(f[0] <= 900);
      CHECK(f[1] - f[0] >= 300 - 1e-9);
      CHECK(f[2] - f[1] >= 300 - 1e-9);
      CHECK(f[2] <= 3400);
    }
    CHECK_NOTHROW(u.pulses.Validate(n));
    for (std::size_t i = 1; i < u.pulses.instants.size(); ++i) {
      auto d = u.pulses.instants[i] - u.pulses.instants[i - 1];
      CHECK(d >= 8000 / 245);  // 220 Hz plus drift
      CHECK(d <= 8000 / 80);
    }
  }
}

TEST_CASE("corpus seeds") {
  auto a = MakeSyntheticCorpus(3, 1), b = MakeSyntheticCorpus(3, 1);
  for (int i = 0; i < 3; ++i) CHECK(a[i].audio.samples == b[i].audio.samples);
  // Nearby seeds must not just reorder the same utterances.
  auto c = MakeSyntheticCorpus(3, 2);
  for (const auto &x : a)
    for (const auto &y : c) CHECK(x.audio.samples != y.audio.samples);
}

TEST_CASE("LP-COV on a small clean corpus") {
  auto corpus = MakeSyntheticCorpus(4, 21);
  FormantTrack ref, hyp;
  for (const auto &u : corpus) {
    auto est = TrackFromPeaks(AnalyzeUtterance(u.audio, AnalysisOptions{}));
    for (std::size_t k = 0; k < est.size(); ++k) {
      double t = 0.01 * static_cast<double>(ref.size());
      ref.Append(t, u.truth.formants[k]);
      hyp.Append(t, est.formants[k]);
    }
  }
  auto r = Evaluate(ref, hyp, {}, {});
  REQUIRE(r.cells.size() == 1);
  CHECK(r.cells[0].formants[0].fee_hz < 80);
  CHECK(r.cells[0].formants[1].fee_hz < 120);
  CHECK(r.cells[0].formants[2].fee_hz < 150);
}

TEST_CASE("WAV round trip") {
  SignalBuffer x;
  x.sample_rate = 8000;
  for (int v : {0, 1, -1, 32767, -32768, 1234, -4321}) x.samples.push_back(v / 32768.0);
  std::stringstream ss;
  WriteWav(x, ss);
  auto y = ReadWav(ss);
  CHECK(y.sample_rate == 8000);
  CHECK(y.samples == x.samples);

  SignalBuffer loud{{1.5, -2.0, 0.49999 / 32768.0}, 16000};
  std::stringstream s2;
  WriteWav(loud, s2);
  auto z = ReadWav(s2);
  CHECK(z.sample_rate == 16000);
  CHECK(z.samples == std::vector<double>{32767 / 32768.0, -1.0, 0.0});
}

TEST_CASE("WAV parsing of foreign files") {
  std::stringstream mono(WavBytes(1, 16, 8000, {100, -200, 300}));
  auto x = ReadWav(mono);
  CHECK(x.samples == std::vector<double>{100 / 32768.0, -200 / 32768.0, 300 / 32768.0});
  std::stringstream stereo(WavBytes(2, 16, 8000, {1, 2, 3, 4}));
  CHECK_THROWS(ReadWav(stereo));
  std::stringstream junk("RIFX....");
  CHECK_THROWS(ReadWav(junk));
}
