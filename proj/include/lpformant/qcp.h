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

#ifndef LPFORMANT_QCP_H_
#define LPFORMANT_QCP_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lpformant/lp.h"
#include "lpformant/signal.h"

namespace lpformant {

/// Glottal closure instants as ascending sample indices.
struct GciList {
  std::vector<std::size_t> instants;

  /// Throws unless strictly increasing and below `num_samples`.
  void Validate(std::size_t num_samples) const;
};

/// Shape of the quasi-closed-phase weight. Within a glottal cycle of length
/// T starting at a closure, the weight is 1 on the quasi-closed phase
/// [GCI + position_quotient*T, GCI + (position_quotient+duration_quotient)*T)
/// with linear ramps of ramp_ms on both edges, and d_min on the rest of the
/// cycle, which covers the closure itself and the open phase.
struct QcpParams {
  double ramp_ms = 0.7;
  double position_quotient = 0.05;
  double duration_quotient = 0.7;
  double d_min = 1e-5;
  /// Consecutive closures farther apart than this are not treated as one
  /// voiced cycle.
  double max_period_ms = 20.0;

  void Validate() const;
};

struct GciDetectorOptions {
  /// Trend-removal window, in multiples of the average pitch period.
  double window_periods = 1.5;
  /// Pitch period assumed when the residual shows no periodicity.
  double initial_period_ms = 8.0;
  double min_period_ms = 2.5;
  double max_period_ms = 15.0;
  /// Crossings in regions more than this many dB below the loudest 20 ms of
  /// the utterance are discarded as unvoiced.
  double voicing_floor_db = 30.0;
  /// Each zero-crossing instant moves to the most negative LP residual
  /// sample within this distance. Zero disables the adjustment.
  double snap_ms = 1.0;
  /// Flip the sign of the input before detection.
  bool invert_polarity = false;
};

/// Zero-frequency-filter closure detector: the differenced signal goes
/// through two zero-frequency resonators, the trend is removed with a
/// moving average about 1.5 pitch periods long, and negative-to-positive
/// zero crossings of the result are taken as closures. Closures are
/// assumed to excite the tract with negative-going pulses, the usual
/// polarity of recorded speech; see GciDetectorOptions::invert_polarity.
GciList DetectGci(const SignalBuffer &x, const GciDetectorOptions &opts = {});

/// QCP weights for samples [begin, begin + length) of the utterance the
/// closures were detected in. Samples outside every voiced cycle get 1, so
/// a frame with no nearby closures gets all-ones weights.
std::vector<double> BuildQcpWeights(std::size_t begin, std::size_t length,
                                    const GciList &gcis, const QcpParams &params,
                                    int sample_rate);

/// Weighted forward-backward covariance LP with QCP weights.
LpModel QcpFb(std::span<const double> frame, int order,
              std::span<const double> weights);

/// One sample index per line, ascending.
GciList ReadGciFile(const std::string &path);
void WriteGciFile(const GciList &gcis, const std::string &path);

}  // namespace lpformant

#endif  // LPFORMANT_QCP_H_
