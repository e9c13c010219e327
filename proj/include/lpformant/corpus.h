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

#ifndef LPFORMANT_CORPUS_H_
#define LPFORMANT_CORPUS_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "lpformant/analysis.h"
#include "lpformant/signal.h"
#include "lpformant/track.h"

namespace lpformant {

enum class NoiseKind { kWhite, kFile };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kWhite;
  /// +infinity leaves the signal untouched.
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

/// clean + g * noise with g chosen so that the mean-square ratio over the
/// whole utterance equals snr_db. File noise draws a seeded contiguous
/// segment from `noise_source`, which must be at least as long as `clean`.
/// Throws on a silent clean signal or short noise.
SignalBuffer MixNoise(const SignalBuffer &clean, const NoiseSpec &spec,
                      const SignalBuffer *noise_source = nullptr);

/// 10 log10(P_clean / P_(noisy - clean)).
double MeasureSnrDb(const SignalBuffer &clean, const SignalBuffer &noisy);

/// Stand-in for recorded babble: eight synthetic vowel streams with random
/// formants, pitch and offsets, summed.
SignalBuffer MakePseudoBabble(std::size_t num_samples, std::uint64_t seed,
                              int sample_rate = kAnalysisRate);

struct Utterance {
  SignalBuffer audio;
  /// Ground truth on the default analysis grid (25 ms / 10 ms, frame centers).
  FormantTrack truth;
  /// Sample positions of the excitation impulses.
  GciList pulses;
};

/// Utterances of 3-8 vowel segments with F1 in [300, 900], F2 in
/// [900, 2400], F3 in [2200, 3400] Hz (adjacent formants at least 300 Hz
/// apart) and f0 in [90, 220] Hz. Formants move linearly between segment
/// centers. Utterance i uses MixSeed(seed) ^ i.
std::vector<Utterance> MakeSyntheticCorpus(std::size_t n_utterances, std::uint64_t seed);
Utterance MakeSyntheticUtterance(std::uint64_t seed);

}  // namespace lpformant

#endif  // LPFORMANT_CORPUS_H_
