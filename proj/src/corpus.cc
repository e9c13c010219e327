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

#include "lpformant/corpus.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpformant/random.h"

namespace lpformant {

namespace {

double MeanSquare(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return x.empty() ? 0.0 : e / static_cast<double>(x.size());
}

struct SegmentTarget {
  std::array<Resonance, 3> formants;
};

SegmentTarget DrawTarget(Rng &rng) {
  SegmentTarget t;
  double f1 = rng.Uniform(300.0, 900.0);
  double f2 = rng.Uniform(std::max(900.0, f1 + 300.0), 2400.0);
  double f3 = rng.Uniform(std::max(2200.0, f2 + 300.0), 3400.0);
  t.formants[0] = {f1, rng.Uniform(50.0, 90.0)};
  t.formants[1] = {f2, rng.Uniform(60.0, 120.0)};
  t.formants[2] = {f3, rng.Uniform(80.0, 150.0)};
  return t;
}

// Random vowel sequence filling exactly `num_samples` when given, otherwise
// 3-8 segments of 150-300 ms each.
FormantTrajectory RandomTrajectory(Rng &rng, int fs, std::size_t num_samples = 0) {
  std::vector<SegmentTarget> targets;
  std::vector<double> centers;  // in samples
  double cursor = 0.0;
  const auto segments = num_samples == 0 ? rng.UniformInt(3, 8) : 0;
  for (std::int64_t s = 0; num_samples == 0 ? s < segments : cursor < num_samples; ++s) {
    double len = rng.Uniform(0.15, 0.30) * fs;
    targets.push_back(DrawTarget(rng));
    centers.push_back(cursor + 0.5 * len);
    cursor += len;
  }
  const std::size_t n = num_samples == 0 ? static_cast<std::size_t>(std::lround(cursor))
                                         : num_samples;
  const double f0_start = rng.Uniform(90.0, 220.0);
  const double f0_end = std::clamp(f0_start * rng.Uniform(0.9, 1.1), 90.0, 220.0);

  FormantTrajectory traj;
  traj.sample_rate = fs;
  traj.per_sample.resize(n);
  traj.f0_hz.resize(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = static_cast<double>(i);
    while (seg + 1 < centers.size() && pos >= centers[seg + 1]) ++seg;
    std::vector<Resonance> res(3);
    if (pos <= centers.front() || seg + 1 >= centers.size()) {
      const auto &t = pos <= centers.front() ? targets.front() : targets[seg];
      std::copy(t.formants.begin(), t.formants.end(), res.begin());
    } else {
      const double a = (pos - centers[seg]) / (centers[seg + 1] - centers[seg]);
      for (int r = 0; r < 3; ++r) {
        const auto &lo = targets[seg].formants[r];
        const auto &hi = targets[seg + 1].formants[r];
        res[r] = {lo.frequency_hz + a * (hi.frequency_hz - lo.frequency_hz),
                  lo.bandwidth_hz + a * (hi.bandwidth_hz - lo.bandwidth_hz)};
      }
    }
    traj.per_sample[i] = std::move(res);
    traj.f0_hz[i] = f0_start + (f0_end - f0_start) * pos / std::max<double>(1.0, n - 1);
  }
  return traj;
}

}  // namespace

SignalBuffer MixNoise(const SignalBuffer &clean, const NoiseSpec &spec,
                      const SignalBuffer *noise_source) {
  if (std::isnan(spec.snr_db)) throw std::invalid_argument("SNR must not be NaN");
  if (spec.snr_db == std::numeric_limits<double>::infinity()) return clean;
  if (spec.snr_db == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument("SNR of -inf is not supported");
  const double clean_power = MeanSquare(clean.samples);
  if (!(clean_power > 0.0))
    throw std::invalid_argument("cannot mix noise at an SNR into a silent signal");

  Rng rng(spec.seed);
  std::vector<double> noise(clean.size());
  if (spec.kind == NoiseKind::kWhite) {
    for (double &v : noise) v = rng.Gaussian();
  } else {
    if (!noise_source) throw std::invalid_argument("file noise needs a noise signal");
    if (noise_source->sample_rate != clean.sample_rate)
      throw std::invalid_argument("noise and speech sample rates differ");
    if (noise_source->size() < clean.size())
      throw std::invalid_argument("noise signal (" + std::to_string(noise_source->size()) +
                                  " samples) is shorter than the speech (" +
                                  std::to_string(clean.size()) + " samples)");
    const auto offset = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(noise_source->size() - clean.size())));
    std::copy_n(noise_source->samples.begin() + static_cast<std::ptrdiff_t>(offset),
                clean.size(), noise.begin());
  }
  const double noise_power = MeanSquare(noise);
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise segment is silent");
  const double gain =
      std::sqrt(clean_power / (noise_power * std::pow(10.0, spec.snr_db / 10.0)));

  SignalBuffer out = clean;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += gain * noise[i];
  return out;
}

double MeasureSnrDb(const SignalBuffer &clean, const SignalBuffer &noisy) {
  if (clean.size() != noisy.size()) throw std::invalid_argument("length mismatch");
  double pc = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    pc += clean.samples[i] * clean.samples[i];
    double d = noisy.samples[i] - clean.samples[i];
    pn += d * d;
  }
  return 10.0 * std::log10(pc / pn);
}

SignalBuffer MakePseudoBabble(std::size_t num_samples, std::uint64_t seed,
                              int sample_rate) {
  SignalBuffer out;
  out.sample_rate = sample_rate;
  out.samples.assign(num_samples, 0.0);
  if (num_samples == 0) return out;
  Rng rng(seed);
  for (int talker = 0; talker < 8; ++talker) {
    auto traj = RandomTrajectory(rng, sample_rate, num_samples);
    traj.source = GlottalSource::kRosenberg;
    auto stream = SynthesizeTrajectory(traj, seed ^ (0x9e3779b97f4a7c15ULL * (talker + 1)));
    const auto shift = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(num_samples) - 1));
    for (std::size_t i = 0; i < num_samples; ++i)
      out.samples[(i + shift) % num_samples] += stream.signal.samples[i];
  }
  return out;
}

Utterance MakeSyntheticUtterance(std::uint64_t seed) {
  Rng rng(seed);
  const int fs = kAnalysisRate;
  FormantTrajectory traj = RandomTrajectory(rng, fs);
  traj.source = GlottalSource::kRosenberg;
  SynthResult synth = SynthesizeTrajectory(traj, seed);

  Utterance u;
  u.audio = std::move(synth.signal);
  u.pulses.instants = std::move(synth.pulses);
  const AnalysisOptions defaults;
  for (double t : FrameTimes(u.audio.size(), defaults, fs)) {
    auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::lround(t * fs)),
                                     traj.per_sample.size() - 1);
    const auto &res = traj.per_sample[idx];
    u.truth.Append(t, {res[0].frequency_hz, res[1].frequency_hz, res[2].frequency_hz});
  }
  return u;
}

std::vector<Utterance> MakeSyntheticCorpus(std::size_t n_utterances, std::uint64_t seed) {
  if (n_utterances == 0) throw std::invalid_argument("corpus needs at least one utterance");
  std::vector<Utterance> corpus;
  corpus.reserve(n_utterances);
  for (std::size_t i = 0; i < n_utterances; ++i)
    corpus.push_back(MakeSyntheticUtterance(MixSeed(seed) ^ static_cast<std::uint64_t>(i)));
  return corpus;
}

}  // namespace lpformant
