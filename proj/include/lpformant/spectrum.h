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

#ifndef LPFORMANT_SPECTRUM_H_
#define LPFORMANT_SPECTRUM_H_

#include <cstddef>
#include <span>
#include <vector>

#include "lpformant/lp.h"

namespace lpformant {

/// One-sided power spectrum on a uniform grid over [0, fs/2].
struct PowerSpectrum {
  std::vector<double> values;
  int sample_rate = 8000;
  /// Set when some grid point hit a zero of A(z) and was clamped.
  bool clamped = false;

  std::size_t grid_size() const { return values.size(); }
  double BinHz() const {
    return 0.5 * sample_rate / static_cast<double>(values.size() - 1);
  }
};

/// Ascending peak frequencies in Hz.
using PeakList = std::vector<double>;

inline constexpr std::size_t kDefaultGridSize = 2049;
inline constexpr double kMaxSpectrumValue = 1e12;

/// 1 / |A(e^{jw})|^2 at w_k = pi k / (grid_size - 1).
PowerSpectrum AllPoleSpectrum(const LpModel &model, int sample_rate,
                              std::size_t grid_size = kDefaultGridSize);

struct PeakPickOptions {
  /// Smoothing width; the Gaussian's standard deviation is half of this.
  double width_hz = 100.0;
  /// Pick on 10 log10 of the power rather than on the power itself.
  bool use_db = true;
  /// Peaks this close to 0 or fs/2 are dropped.
  double edge_guard_hz = 50.0;
};

/// Sampled derivative-of-Gaussian kernel, truncated at +-3 sigma. Index
/// `half` is the center tap.
std::vector<double> GaussianDerivativeKernel(double sigma_bins);

/// Spectrum (dB or linear per options) convolved with a Gaussian, or with
/// its derivative when `derivative` is set. Edges are reflect-padded.
std::vector<double> SmoothSpectrum(const PowerSpectrum &s,
                                   const PeakPickOptions &opts, bool derivative);

/// Negative-going zero crossings of the smoothed spectral derivative,
/// linearly interpolated between the two straddling bins.
PeakList PickPeaks(const PowerSpectrum &s, const PeakPickOptions &opts = {});

}  // namespace lpformant

#endif  // LPFORMANT_SPECTRUM_H_
