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

#ifndef LPFORMANT_EVAL_H_
#define LPFORMANT_EVAL_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpformant/track.h"

namespace lpformant {

struct EvalConfig {
  double tau_r = 0.30;   // relative deviation threshold (fraction)
  double tau_a = 300.0;  // absolute deviation threshold (Hz)
  /// Categories to pool; empty means every frame.
  std::vector<std::string> categories;

  void Validate() const;
};

/// |ref - hyp| / ref < tau_r and |ref - hyp| < tau_a, both strict.
bool FormantDetected(double ref_hz, double hyp_hz, const EvalConfig &cfg);

struct FormantScore {
  double fdr_percent = 0.0;
  double fee_hz = 0.0;
  double mad_percent = 0.0;
};

struct EvalCell {
  std::string category;
  std::size_t frames = 0;
  std::array<FormantScore, 3> formants;
};

struct EvalReport {
  /// First the pooled cell over all selected frames, then one cell per
  /// category that has frames.
  std::vector<EvalCell> cells;
  /// Requested categories with no frames. Reported instead of zeros.
  std::vector<std::string> absent;
  /// Frames skipped because the hypothesis was invalid.
  std::size_t missing_hypotheses = 0;

  const EvalCell *Find(const std::string &category) const;
};

/// Scores `hyp` against `ref` over frames with valid reference and
/// hypothesis values. `frame_categories` (one per frame, or empty for no
/// labels) restricts and groups the frames. Throws on grid mismatch.
EvalReport Evaluate(const FormantTrack &ref, const FormantTrack &hyp,
                    const std::vector<std::string> &frame_categories,
                    const EvalConfig &cfg);

/// `category,formant,fdr_percent,fee_hz,mad_percent,frames`
void WriteReportCsv(const EvalReport &report, std::ostream &os);
void WriteReportTable(const EvalReport &report, std::ostream &os);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double v);
  double Value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace lpformant

#endif  // LPFORMANT_EVAL_H_
