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

#include "lpformant/refine.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpformant {

Formants RefineFrame(const Formants &predicted, const PeakList &peaks) {
  if (peaks.empty()) return predicted;
  Formants out = predicted;
  for (std::size_t i = 0; i < out.size(); ++i) {
    double best = peaks.front();
    for (double p : peaks)
      if (std::fabs(p - predicted[i]) < std::fabs(best - predicted[i])) best = p;
    out[i] = best;
  }
  return out;
}

RefineResult RefineWithPeaks(const FormantTrack &predicted, const PeakTrack &peaks) {
  if (predicted.size() != peaks.peaks.size())
    throw std::invalid_argument(
        "predicted track has " + std::to_string(predicted.size()) +
        " frames but the audio yields " + std::to_string(peaks.peaks.size()) +
        " analysis frames");
  RefineResult result;
  result.track = predicted;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    if (!predicted.valid[k]) continue;
    Formants f = RefineFrame(predicted.formants[k], peaks.peaks[k]);
    result.track.formants[k] = f;
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) ++result.collisions;
    if (!(f[0] < f[1] && f[1] < f[2])) ++result.order_violations;
  }
  return result;
}

RefineResult RefineTrack(const FormantTrack &predicted, const SignalBuffer &audio,
                         const AnalysisOptions &opts, const GciList *gcis) {
  return RefineWithPeaks(predicted, AnalyzeUtterance(audio, opts, gcis));
}

FormantTrack TrackFromPeaks(const PeakTrack &peaks) {
  FormantTrack track;
  for (std::size_t k = 0; k < peaks.times.size(); ++k) {
    const PeakList &p = peaks.peaks[k];
    Formants f{0.0, 0.0, 0.0};
    if (p.size() >= 3) f = {p[0], p[1], p[2]};
    track.Append(peaks.times[k], f);
  }
  return track;
}

}  // namespace lpformant
