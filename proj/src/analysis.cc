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

#include "lpformant/analysis.h"

#include <stdexcept>

#include "lpformant/parallel.h"

namespace lpformant {

LpMethod ParseLpMethod(const std::string &name) {
  if (name == "lp-cov") return LpMethod::kLpCov;
  if (name == "qcp-fb") return LpMethod::kQcpFb;
  throw std::invalid_argument("unknown LP method '" + name +
                              "' (expected lp-cov or qcp-fb)");
}

std::string LpMethodName(LpMethod method) {
  return method == LpMethod::kLpCov ? "lp-cov" : "qcp-fb";
}

LpModel FitFrame(std::span<const double> frame, LpMethod method, int order,
                 std::span<const double> weights) {
  switch (method) {
    case LpMethod::kLpCov:
      return LpCov(frame, order);
    case LpMethod::kQcpFb:
      return QcpFb(frame, order, weights);
  }
  throw std::logic_error("unhandled LP method");
}

PeakList FormantsFromFrame(std::span<const double> frame, LpMethod method, int order,
                           std::span<const double> weights,
                           const PeakPickOptions &peaks, int sample_rate,
                           std::size_t grid_size) {
  LpModel model = FitFrame(frame, method, order, weights);
  bool silent = true;
  for (double c : model.coefficients) silent = silent && c == 0.0;
  if (model.degenerate && silent) return {};
  return PickPeaks(AllPoleSpectrum(model, sample_rate, grid_size), peaks);
}

std::vector<double> FrameTimes(std::size_t num_samples, const AnalysisOptions &opts,
                               int sample_rate) {
  const std::size_t count = NumFrames(num_samples, opts.frame, sample_rate);
  const double shift_s =
      static_cast<double>(opts.frame.ShiftSamples(sample_rate)) / sample_rate;
  const double first_s =
      opts.align_offset_ms
          ? *opts.align_offset_ms / 1000.0
          : 0.5 * static_cast<double>(opts.frame.LengthSamples(sample_rate)) / sample_rate;
  std::vector<double> times(count);
  for (std::size_t k = 0; k < count; ++k)
    times[k] = first_s + static_cast<double>(k) * shift_s;
  return times;
}

PeakTrack AnalyzeUtterance(const SignalBuffer &audio, const AnalysisOptions &opts,
                           const GciList *gcis) {
  RequireAnalysisRate(audio);
  PeakTrack track;
  track.times = FrameTimes(audio.size(), opts, audio.sample_rate);
  if (track.times.empty()) return track;

  const SignalBuffer emphasized = Preemphasize(audio, opts.preemphasis);
  const auto frames = FrameSignal(emphasized, opts.frame);

  GciList detected;
  const GciList *closures = gcis;
  if (opts.method == LpMethod::kQcpFb) {
    opts.qcp.Validate();
    if (!closures) {
      detected = DetectGci(audio, opts.gci);
      closures = &detected;
    }
    closures->Validate(audio.size());
  }

  track.peaks.resize(frames.size());
  ParallelFor(frames.size(), opts.threads, [&](std::size_t k) {
    const Frame &f = frames[k];
    std::vector<double> weights;
    if (opts.method == LpMethod::kQcpFb)
      weights = BuildQcpWeights(f.offset, f.length, *closures, opts.qcp,
                                audio.sample_rate);
    track.peaks[k] = FormantsFromFrame(f.View(emphasized), opts.method, opts.order,
                                       weights, opts.peaks, audio.sample_rate,
                                       opts.grid_size);
  });
  return track;
}

}  // namespace lpformant
