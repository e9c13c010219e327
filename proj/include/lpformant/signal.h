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

#ifndef LPFORMANT_SIGNAL_H_
#define LPFORMANT_SIGNAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpformant {

/// Sample rate every analysis routine expects. Other rates are rejected.
inline constexpr int kAnalysisRate = 8000;

/// Mono audio with its sample rate in Hz.
struct SignalBuffer {
  std::vector<double> samples;
  int sample_rate = kAnalysisRate;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Throws std::invalid_argument unless the buffer is at the analysis rate
/// and every sample is finite.
void RequireAnalysisRate(const SignalBuffer &x);

/// Throws std::invalid_argument if any sample is NaN or Inf.
void RequireFinite(const SignalBuffer &x);

struct FrameSpec {
  double length_ms = 25.0;
  double shift_ms = 10.0;

  std::size_t LengthSamples(int sample_rate) const;
  std::size_t ShiftSamples(int sample_rate) const;
  void Validate() const;
};

/// One rectangular analysis window; `offset` and `length` index into the
/// signal it was cut from.
struct Frame {
  std::size_t offset = 0;
  std::size_t length = 0;
  double time_s = 0.0;  // frame center

  std::span<const double> View(const SignalBuffer &x) const {
    return std::span<const double>(x.samples).subspan(offset, length);
  }
};

/// y[0] = x[0], y[n] = x[n] - coef * x[n-1]. Throws on empty input.
SignalBuffer Preemphasize(const SignalBuffer &x, double coef = 0.97);

/// Frames at k*shift for k = 0 .. floor((N - length) / shift). A signal
/// shorter than one frame yields no frames.
std::vector<Frame> FrameSignal(const SignalBuffer &x, const FrameSpec &spec);

/// Number of frames FrameSignal would produce for `num_samples`.
std::size_t NumFrames(std::size_t num_samples, const FrameSpec &spec,
                      int sample_rate);

struct Resonance {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

struct SynthSpec {
  double f0_hz = 120.0;
  std::vector<Resonance> formants;
  double duration_s = 1.0;
  int sample_rate = kAnalysisRate;

  void Validate() const;
};

/// Output of the source-filter synthesizer together with the sample
/// indices of the excitation impulses (the true glottal closures).
struct SynthResult {
  SignalBuffer signal;
  std::vector<std::size_t> pulses;
};

enum class GlottalSource {
  /// One negative unit impulse per period.
  kImpulse,
  /// Differentiated Rosenberg flow pulse (open quotient 0.6, speed quotient
  /// 2) whose abrupt closure falls on the pulse instant.
  kRosenberg,
};

/// Per-sample formant targets for a time-varying vowel. Each inner vector
/// holds one Resonance per formant and has the same size for every sample.
struct FormantTrajectory {
  std::vector<std::vector<Resonance>> per_sample;
  std::vector<double> f0_hz;  // per sample
  int sample_rate = kAnalysisRate;
  GlottalSource source = GlottalSource::kImpulse;
};

/// Impulse train at f0 through a cascade of second-order resonators with
/// poles at radius exp(-pi B / fs) and angle 2 pi F / fs, RMS-normalized to
/// 0.1. The seed sets the phase of the first impulse.
SynthResult SynthesizeVowelWithPulses(const SynthSpec &spec, std::uint64_t seed);
SignalBuffer SynthesizeVowel(const SynthSpec &spec, std::uint64_t seed);

/// Same source-filter model with resonator coefficients updated every
/// sample from `traj`.
SynthResult SynthesizeTrajectory(const FormantTrajectory &traj,
                                 std::uint64_t seed);

/// Denominator coefficients [1, c1, c2] of one resonator.
std::vector<double> ResonatorPolynomial(const Resonance &r, int sample_rate);

}  // namespace lpformant

#endif  // LPFORMANT_SIGNAL_H_
