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

#ifndef LPFORMANT_REFINE_H_
#define LPFORMANT_REFINE_H_

#include <cstddef>

#include "lpformant/analysis.h"
#include "lpformant/track.h"

namespace lpformant {

/// Replaces each formant independently with the nearest peak in Hz. Two
/// formants may land on the same peak. With no peaks the prediction is
/// returned unchanged.
Formants RefineFrame(const Formants &predicted, const PeakList &peaks);

struct RefineResult {
  FormantTrack track;
  /// Valid frames where two refined formants share a peak.
  std::size_t collisions = 0;
  /// Valid frames whose refined formants are not strictly ascending.
  std::size_t order_violations = 0;
};

/// Refines every valid frame of `predicted` with the peaks of the matching
/// analysis frame. Throws std::invalid_argument when the frame counts
/// differ; both counts appear in the message.
RefineResult RefineWithPeaks(const FormantTrack &predicted, const PeakTrack &peaks);

/// Analyzes `audio` with `opts` and refines `predicted` against it.
RefineResult RefineTrack(const FormantTrack &predicted, const SignalBuffer &audio,
                         const AnalysisOptions &opts, const GciList *gcis = nullptr);

/// Lowest three peaks per frame; frames with fewer than three are invalid.
FormantTrack TrackFromPeaks(const PeakTrack &peaks);

}  // namespace lpformant

#endif  // LPFORMANT_REFINE_H_
