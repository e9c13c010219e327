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

#ifndef LPFORMANT_ANALYSIS_H_
#define LPFORMANT_ANALYSIS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpformant/lp.h"
#include "lpformant/qcp.h"
#include "lpformant/signal.h"
#include "lpformant/spectrum.h"

namespace lpformant {

enum class LpMethod { kLpCov, kQcpFb };

/// "lp-cov" or "qcp-fb".
LpMethod ParseLpMethod(const std::string &name);
std::string LpMethodName(LpMethod method);

/// Frame-level settings. Defaults: 25 ms rectangular frames every 10 ms,
/// order 13, pre-emphasis 0.97, 2049-point one-sided spectrum.
struct AnalysisOptions {
  LpMethod method = LpMethod::kLpCov;
  int order = 13;
  FrameSpec frame;
  double preemphasis = 0.97;
  std::size_t grid_size = kDefaultGridSize;
  PeakPickOptions peaks;
  QcpParams qcp;
  GciDetectorOptions gci;
  /// Timestamp of frame 0; frame k sits at align_offset_ms + k * shift_ms.
  /// Unset means the center of frame 0.
  std::optional<double> align_offset_ms;
  int threads = 1;
};

/// LP model of one pre-emphasized frame. `weights` is only read for QCP-FB;
/// when empty, QCP-FB reduces to unweighted forward-backward LP.
LpModel FitFrame(std::span<const double> frame, LpMethod method, int order,
                 std::span<const double> weights = {});

/// LP fit, all-pole spectrum and peak picking for one pre-emphasized frame.
/// Degenerate (silent) frames give no peaks.
PeakList FormantsFromFrame(std::span<const double> frame, LpMethod method, int order,
                           std::span<const double> weights = {},
                           const PeakPickOptions &peaks = {},
                           int sample_rate = kAnalysisRate,
                           std::size_t grid_size = kDefaultGridSize);

/// Per-frame peaks of a whole utterance, aligned to `times`.
struct PeakTrack {
  std::vector<double> times;
  std::vector<PeakList> peaks;
};

/// Runs the frame pipeline over `audio` (raw, not pre-emphasized). QCP-FB
/// uses `gcis` when given and otherwise detects closures on `audio`.
PeakTrack AnalyzeUtterance(const SignalBuffer &audio, const AnalysisOptions &opts,
                           const GciList *gcis = nullptr);

/// Timestamps of the analysis grid for `num_samples` samples.
std::vector<double> FrameTimes(std::size_t num_samples, const AnalysisOptions &opts,
                               int sample_rate = kAnalysisRate);

}  // namespace lpformant

#endif  // LPFORMANT_ANALYSIS_H_
