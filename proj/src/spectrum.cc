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

#include "lpformant/spectrum.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace lpformant {

PowerSpectrum AllPoleSpectrum(const LpModel &model, int sample_rate,
                              std::size_t grid_size) {
  if (grid_size < 2) throw std::invalid_argument("spectrum grid needs >= 2 points");
  if (static_cast<int>(model.coefficients.size()) != model.order)
    throw std::invalid_argument("LP model order does not match its coefficients");
  PowerSpectrum s;
  s.sample_rate = sample_rate;
  s.values.resize(grid_size);
  const double step = std::numbers::pi / static_cast<double>(grid_size - 1);
  for (std::size_t k = 0; k < grid_size; ++k) {
    const double w = step * static_cast<double>(k);
    // Horner in z^-1 = e^{-jw}.
    const std::complex<double> zinv = std::polar(1.0, -w);
    std::complex<double> a(0.0, 0.0);
    for (int m = model.order; m >= 1; --m) a = (a + model.coefficients[m - 1]) * zinv;
    a += 1.0;
    double mag2 = std::norm(a);
    if (mag2 < 1.0 / kMaxSpectrumValue) {
      s.values[k] = kMaxSpectrumValue;
      s.clamped = true;
    } else {
      s.values[k] = 1.0 / mag2;
    }
  }
  return s;
}

std::vector<double> GaussianDerivativeKernel(double sigma_bins) {
  if (!(sigma_bins > 0.0)) throw std::invalid_argument("kernel sigma must be positive");
  const auto half = static_cast<int>(std::ceil(3.0 * sigma_bins));
  std::vector<double> k(2 * half + 1);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_bins);
  for (int i = -half; i <= half; ++i) {
    double t = static_cast<double>(i);
    k[i + half] = -t / (sigma_bins * sigma_bins) * norm *
                  std::exp(-0.5 * t * t / (sigma_bins * sigma_bins));
  }
  return k;
}

namespace {

std::vector<double> GaussianKernel(double sigma_bins) {
  const auto half = static_cast<int>(std::ceil(3.0 * sigma_bins));
  std::vector<double> k(2 * half + 1);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma_bins);
  for (int i = -half; i <= half; ++i) {
    double t = static_cast<double>(i);
    k[i + half] = norm * std::exp(-0.5 * t * t / (sigma_bins * sigma_bins));
  }
  return k;
}

// Mirror about the edge bins without repeating them, which matches the even
// symmetry of a real filter's spectrum about 0 and fs/2.
double Reflected(const std::vector<double> &v, long i) {
  const long n = static_cast<long>(v.size());
  if (n == 1) return v[0];
  const long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  if (i >= n) i = period - i;
  return v[static_cast<std::size_t>(i)];
}

}  // namespace

std::vector<double> SmoothSpectrum(const PowerSpectrum &s,
                                   const PeakPickOptions &opts, bool derivative) {
  if (s.values.size() < 2) throw std::invalid_argument("spectrum too short");
  std::vector<double> base(s.values.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    base[i] = opts.use_db ? 10.0 * std::log10(std::max(s.values[i], 1e-300))
                          : s.values[i];
  const double sigma_bins = 0.5 * opts.width_hz / s.BinHz();
  const auto kernel = derivative ? GaussianDerivativeKernel(sigma_bins)
                                 : GaussianKernel(sigma_bins);
  const long half = static_cast<long>(kernel.size() / 2);
  const long n = static_cast<long>(base.size());
  std::vector<double> padded(static_cast<std::size_t>(n + 2 * half));
  for (long i = -half; i < n + half; ++i)
    padded[static_cast<std::size_t>(i + half)] = Reflected(base, i);
  std::vector<double> out(base.size());
  for (long j = 0; j < n; ++j) {
    // out[j] = sum_t base[j - t] * kernel[t]
    double acc = 0.0;
    const double *src = padded.data() + j + 2 * half;
    for (long t = 0; t < static_cast<long>(kernel.size()); ++t)
      acc += src[-t] * kernel[static_cast<std::size_t>(t)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

PeakList PickPeaks(const PowerSpectrum &s, const PeakPickOptions &opts) {
  const auto d = SmoothSpectrum(s, opts, /*derivative=*/true);
  const double bin = s.BinHz();
  const double nyquist = 0.5 * s.sample_rate;
  PeakList peaks;
  for (std::size_t j = 0; j + 1 < d.size(); ++j) {
    if (d[j] > 0.0 && d[j + 1] <= 0.0) {
      double frac = d[j] / (d[j] - d[j + 1]);
      double f = (static_cast<double>(j) + frac) * bin;
      if (f > opts.edge_guard_hz && f < nyquist - opts.edge_guard_hz)
        peaks.push_back(f);
    }
  }
  return peaks;
}

}  // namespace lpformant
