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

#include "lpformant/signal.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lpformant/random.h"

namespace lpformant {

void RequireFinite(const SignalBuffer &x) {
  for (double v : x.samples)
    if (!std::isfinite(v))
      throw std::invalid_argument("signal contains non-finite samples");
}

void RequireAnalysisRate(const SignalBuffer &x) {
  if (x.sample_rate != kAnalysisRate)
    throw std::invalid_argument(
        "sample rate " + std::to_string(x.sample_rate) +
        " Hz is not supported; resample to 8000 Hz before analysis");
  RequireFinite(x);
}

std::size_t FrameSpec::LengthSamples(int sample_rate) const {
  return static_cast<std::size_t>(std::lround(length_ms * sample_rate / 1000.0));
}

std::size_t FrameSpec::ShiftSamples(int sample_rate) const {
  return static_cast<std::size_t>(std::lround(shift_ms * sample_rate / 1000.0));
}

void FrameSpec::Validate() const {
  if (!(shift_ms > 0.0) || !(shift_ms <= length_ms))
    throw std::invalid_argument("frame spec needs 0 < shift_ms <= length_ms");
}

SignalBuffer Preemphasize(const SignalBuffer &x, double coef) {
  if (x.empty()) throw std::invalid_argument("pre-emphasis of empty signal");
  SignalBuffer y;
  y.sample_rate = x.sample_rate;
  y.samples.resize(x.size());
  y.samples[0] = x.samples[0];
  for (std::size_t n = 1; n < x.size(); ++n)
    y.samples[n] = x.samples[n] - coef * x.samples[n - 1];
  return y;
}

std::size_t NumFrames(std::size_t num_samples, const FrameSpec &spec,
                      int sample_rate) {
  spec.Validate();
  std::size_t len = spec.LengthSamples(sample_rate);
  std::size_t shift = spec.ShiftSamples(sample_rate);
  if (len == 0 || shift == 0)
    throw std::invalid_argument("frame spec rounds to zero samples");
  if (num_samples < len) return 0;
  return (num_samples - len) / shift + 1;
}

std::vector<Frame> FrameSignal(const SignalBuffer &x, const FrameSpec &spec) {
  std::size_t count = NumFrames(x.size(), spec, x.sample_rate);
  std::size_t len = spec.LengthSamples(x.sample_rate);
  std::size_t shift = spec.ShiftSamples(x.sample_rate);
  std::vector<Frame> frames(count);
  for (std::size_t k = 0; k < count; ++k) {
    frames[k].offset = k * shift;
    frames[k].length = len;
    frames[k].time_s =
        (static_cast<double>(k * shift) + 0.5 * static_cast<double>(len)) /
        x.sample_rate;
  }
  return frames;
}

void SynthSpec::Validate() const {
  if (!(f0_hz > 0.0)) throw std::invalid_argument("f0 must be positive");
  if (sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
  if (!(duration_s > 0.0)) throw std::invalid_argument("duration must be positive");
  double nyquist = 0.5 * sample_rate;
  for (const auto &r : formants) {
    if (!(r.frequency_hz > 0.0) || !(r.frequency_hz < nyquist))
      throw std::invalid_argument("formant " + std::to_string(r.frequency_hz) +
                                  " Hz is outside (0, Nyquist)");
    if (!(r.bandwidth_hz > 0.0))
      throw std::invalid_argument("formant bandwidth must be positive");
  }
  if (f0_hz >= nyquist) throw std::invalid_argument("f0 must be below Nyquist");
}

std::vector<double> ResonatorPolynomial(const Resonance &r, int sample_rate) {
  double radius = std::exp(-std::numbers::pi * r.bandwidth_hz / sample_rate);
  double angle = 2.0 * std::numbers::pi * r.frequency_hz / sample_rate;
  return {1.0, -2.0 * radius * std::cos(angle), radius * radius};
}

namespace {

void NormalizeRms(std::vector<double> &y, double target) {
  double energy = 0.0;
  for (double v : y) energy += v * v;
  if (y.empty() || energy <= 0.0) return;
  double gain = target / std::sqrt(energy / y.size());
  for (double &v : y) v *= gain;
}

}  // namespace

SynthResult SynthesizeTrajectory(const FormantTrajectory &traj,
                                 std::uint64_t seed) {
  const std::size_t n = traj.per_sample.size();
  if (traj.f0_hz.size() != n)
    throw std::invalid_argument("trajectory f0 and formant lengths differ");
  const int fs = traj.sample_rate;
  const double nyquist = 0.5 * fs;

  SynthResult out;
  out.signal.sample_rate = fs;
  std::vector<double> excitation(n, 0.0);

  // Phase accumulator; the seed picks where inside the first period the
  // first impulse lands.
  Rng rng(seed);
  double phase = rng.Uniform();
  std::vector<double> glottal_phase(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double f0 = traj.f0_hz[i];
    if (!(f0 > 0.0) || f0 >= nyquist)
      throw std::invalid_argument("f0 outside (0, Nyquist)");
    phase += f0 / fs;
    if (phase >= 1.0) {
      phase -= std::floor(phase);
      excitation[i] = -1.0;
      out.pulses.push_back(i);
    }
    glottal_phase[i] = phase;
  }

  if (traj.source == GlottalSource::kRosenberg) {
    // Flow as a function of the phase since the last closure, differenced
    // for lip radiation.
    constexpr double kOpenQuotient = 0.6;
    constexpr double kOpeningShare = 2.0 / 3.0;  // speed quotient 2
    auto flow = [&](double phi) {
      if (phi < 1.0 - kOpenQuotient) return 0.0;
      double tau = (phi - (1.0 - kOpenQuotient)) / kOpenQuotient;
      if (tau < kOpeningShare)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * tau / kOpeningShare));
      return std::cos(0.5 * std::numbers::pi * (tau - kOpeningShare) /
                      (1.0 - kOpeningShare));
    };
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double g = flow(glottal_phase[i]);
      excitation[i] = g - prev;
      prev = g;
    }
  }

  std::vector<double> y = std::move(excitation);
  if (n > 0) {
    const std::size_t num_res = traj.per_sample[0].size();
    for (std::size_t r = 0; r < num_res; ++r) {
      double y1 = 0.0, y2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto &res = traj.per_sample[i];
        if (res.size() != num_res)
          throw std::invalid_argument("trajectory formant count varies");
        const Resonance &cur = res[r];
        if (!(cur.frequency_hz > 0.0) || cur.frequency_hz >= nyquist)
          throw std::invalid_argument("formant at or above Nyquist");
        if (!(cur.bandwidth_hz > 0.0))
          throw std::invalid_argument("formant bandwidth must be positive");
        auto a = ResonatorPolynomial(cur, fs);
        // Unity gain at DC keeps the cascade's level independent of the
        // formant positions.
        double gain = a[0] + a[1] + a[2];
        double v = gain * y[i] - a[1] * y1 - a[2] * y2;
        y2 = y1;
        y1 = v;
        y[i] = v;
      }
    }
  }
  NormalizeRms(y, 0.1);
  out.signal.samples = std::move(y);
  return out;
}

SynthResult SynthesizeVowelWithPulses(const SynthSpec &spec,
                                      std::uint64_t seed) {
  spec.Validate();
  auto n = static_cast<std::size_t>(std::lround(spec.duration_s * spec.sample_rate));
  FormantTrajectory traj;
  traj.sample_rate = spec.sample_rate;
  traj.per_sample.assign(n, spec.formants);
  traj.f0_hz.assign(n, spec.f0_hz);
  return SynthesizeTrajectory(traj, seed);
}

SignalBuffer SynthesizeVowel(const SynthSpec &spec, std::uint64_t seed) {
  return SynthesizeVowelWithPulses(spec, seed).signal;
}

}  // namespace lpformant
