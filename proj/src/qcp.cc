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

#include "lpformant/qcp.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lpformant {

void GciList::Validate(std::size_t num_samples) const {
  for (std::size_t i = 0; i < instants.size(); ++i) {
    if (instants[i] >= num_samples)
      throw std::invalid_argument("GCI " + std::to_string(instants[i]) +
                                  " is past the end of the signal");
    if (i > 0 && instants[i] <= instants[i - 1])
      throw std::invalid_argument("GCIs must be strictly increasing");
  }
}

void QcpParams::Validate() const {
  if (!(position_quotient >= 0.0 && position_quotient < 1.0))
    throw std::invalid_argument("QCP position quotient must be in [0, 1)");
  if (!(duration_quotient > 0.0 && duration_quotient <= 1.0))
    throw std::invalid_argument("QCP duration quotient must be in (0, 1]");
  if (!(d_min > 0.0 && d_min <= 1.0))
    throw std::invalid_argument("QCP d_min must be in (0, 1]");
  if (!(ramp_ms >= 0.0)) throw std::invalid_argument("QCP ramp must be >= 0");
  if (!(max_period_ms > 0.0))
    throw std::invalid_argument("QCP max period must be positive");
}

std::vector<double> BuildQcpWeights(std::size_t begin, std::size_t length,
                                    const GciList &gcis, const QcpParams &params,
                                    int sample_rate) {
  params.Validate();
  std::vector<double> w(length, 1.0);
  const auto &g = gcis.instants;
  const auto ramp = static_cast<std::int64_t>(std::lround(params.ramp_ms * sample_rate / 1000.0));
  const auto max_period =
      static_cast<std::int64_t>(std::lround(params.max_period_ms * sample_rate / 1000.0));
  const auto lo = static_cast<std::int64_t>(begin);
  const auto hi = lo + static_cast<std::int64_t>(length);

  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto gi = static_cast<std::int64_t>(g[i]);
    std::int64_t next = i + 1 < g.size() ? static_cast<std::int64_t>(g[i + 1]) - gi : 0;
    std::int64_t prev = i > 0 ? gi - static_cast<std::int64_t>(g[i - 1]) : 0;
    bool has_next = next > 0 && next <= max_period;
    bool has_prev = prev > 0 && prev <= max_period;
    std::int64_t period = has_next ? next : (has_prev ? prev : 0);
    if (period == 0) continue;  // isolated closure

    const std::int64_t win_begin =
        gi + std::llround(params.position_quotient * period);
    const std::int64_t win_end =
        win_begin + std::llround(params.duration_quotient * period);
    std::int64_t cycle_begin = gi;
    if (!has_prev) {
      // First cycle of a voiced run: the open phase leading into the closure
      // is down-weighted too.
      cycle_begin = gi - std::max<std::int64_t>(0, gi + period - win_end);
    }
    const std::int64_t cycle_end = std::max(gi + period, win_end);

    for (std::int64_t n = std::max(cycle_begin, lo); n < std::min(cycle_end, hi); ++n) {
      double value = params.d_min;
      if (n >= win_begin && n < win_end) {
        double rise = static_cast<double>(n - win_begin + 1) / static_cast<double>(ramp + 1);
        double fall = static_cast<double>(win_end - n) / static_cast<double>(ramp + 1);
        double r = std::min({1.0, rise, fall});
        value = params.d_min + (1.0 - params.d_min) * r;
      }
      double &slot = w[static_cast<std::size_t>(n - lo)];
      slot = std::min(slot, value);
    }
  }
  return w;
}

LpModel QcpFb(std::span<const double> frame, int order,
              std::span<const double> weights) {
  return WeightedLpFb(frame, order, weights);
}

namespace {

void IntegrateTwice(std::vector<double> &y) {
  double y1 = 0.0, y2 = 0.0;
  for (double &v : y) {
    double out = v + 2.0 * y1 - y2;
    y2 = y1;
    y1 = out;
    v = out;
  }
}

void RemoveTrend(std::vector<double> &y, std::size_t half_window) {
  const std::size_t n = y.size();
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = i >= half_window ? i - half_window : 0;
    std::size_t b = std::min(n, i + half_window + 1);
    long double mean = (prefix[b] - prefix[a]) / static_cast<long double>(b - a);
    out[i] = static_cast<double>(static_cast<long double>(y[i]) - mean);
  }
  y = std::move(out);
}

std::vector<double> ZeroFrequencyFilter(std::span<const double> x,
                                        std::size_t half_window) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = x[i] - (i > 0 ? x[i - 1] : 0.0);
  // Trend removal between the two resonators keeps magnitudes bounded; both
  // stages are linear so the order does not change the interior response.
  IntegrateTwice(y);
  RemoveTrend(y, half_window);
  IntegrateTwice(y);
  for (int pass = 0; pass < 3; ++pass) RemoveTrend(y, half_window);
  return y;
}

struct Crossing {
  std::size_t index;
  double slope;
};

std::vector<Crossing> PositiveCrossings(const std::vector<double> &y) {
  std::vector<Crossing> out;
  for (std::size_t n = 1; n < y.size(); ++n)
    if (y[n - 1] < 0.0 && y[n] >= 0.0) {
      // Take whichever straddling sample is closer to zero.
      std::size_t idx = (-y[n - 1] < y[n]) ? n - 1 : n;
      out.push_back({idx, y[n] - y[n - 1]});
    }
  return out;
}

// Prediction residual of `x` from order-10 covariance LP fitted on 25 ms
// windows centered on each 10 ms block.
std::vector<double> LpResidual(const std::vector<double> &x, int fs) {
  constexpr int kOrder = 10;
  const auto hop = static_cast<std::size_t>(std::lround(0.010 * fs));
  const auto len = static_cast<std::size_t>(std::lround(0.025 * fs));
  std::vector<double> e(x.size(), 0.0);
  if (x.size() < len) return e;
  for (std::size_t b = 0; b < x.size(); b += hop) {
    std::size_t start = b >= (len - hop) / 2 ? b - (len - hop) / 2 : 0;
    start = std::min(start, x.size() - len);
    LpModel m = LpCov(std::span<const double>(x).subspan(start, len), kOrder);
    for (std::size_t n = std::max<std::size_t>(b, kOrder);
         n < std::min(x.size(), b + hop); ++n) {
      double v = x[n];
      for (int k = 1; k <= kOrder; ++k) v += m.coefficients[k - 1] * x[n - k];
      e[n] = v;
    }
  }
  return e;
}

// Median over 40 ms blocks of the autocorrelation peak lag of the residual,
// counting only blocks whose normalized peak exceeds 0.3.
double EstimatePeriod(const std::vector<double> &residual, int fs, double min_period,
                      double max_period, double fallback) {
  const auto block = static_cast<std::size_t>(std::lround(0.040 * fs));
  const auto lag_lo = static_cast<std::size_t>(std::floor(min_period));
  const auto lag_hi = static_cast<std::size_t>(std::ceil(max_period));
  std::vector<double> lags;
  for (std::size_t b = 0; b + block + lag_hi <= residual.size(); b += block / 2) {
    double e0 = 0.0;
    for (std::size_t n = b; n < b + block; ++n) e0 += residual[n] * residual[n];
    if (!(e0 > 0.0)) continue;
    std::vector<double> corr(lag_hi + 1, 0.0);
    double best = 0.0;
    for (std::size_t lag = lag_lo; lag <= lag_hi; ++lag) {
      double r = 0.0, e1 = 0.0;
      for (std::size_t n = b; n < b + block; ++n) {
        r += residual[n] * residual[n + lag];
        e1 += residual[n + lag] * residual[n + lag];
      }
      corr[lag] = r / std::sqrt(e0 * e1 + 1e-300);
      best = std::max(best, corr[lag]);
    }
    if (best <= 0.3) continue;
    // Shortest lag that is a local maximum close to the best one, so period
    // multiples do not win.
    for (std::size_t lag = lag_lo; lag <= lag_hi; ++lag) {
      bool local_max = (lag == lag_lo || corr[lag] >= corr[lag - 1]) &&
                       (lag == lag_hi || corr[lag] >= corr[lag + 1]);
      if (local_max && corr[lag] >= 0.8 * best) {
        lags.push_back(static_cast<double>(lag));
        break;
      }
    }
  }
  if (lags.empty()) return fallback;
  std::nth_element(lags.begin(), lags.begin() + lags.size() / 2, lags.end());
  return lags[lags.size() / 2];
}

}  // namespace

GciList DetectGci(const SignalBuffer &x, const GciDetectorOptions &opts) {
  GciList result;
  if (x.empty()) return result;
  RequireFinite(x);
  const int fs = x.sample_rate;
  std::vector<double> in = x.samples;
  if (opts.invert_polarity)
    for (double &v : in) v = -v;

  // Short-time RMS for the voicing gate.
  const auto half_rms = static_cast<std::size_t>(std::lround(0.010 * fs));
  std::vector<long double> sq(in.size() + 1, 0.0L);
  for (std::size_t i = 0; i < in.size(); ++i)
    sq[i + 1] = sq[i] + static_cast<long double>(in[i]) * in[i];
  auto local_rms = [&](std::size_t i) {
    std::size_t a = i >= half_rms ? i - half_rms : 0;
    std::size_t b = std::min(in.size(), i + half_rms + 1);
    return std::sqrt(static_cast<double>((sq[b] - sq[a]) / (b - a)));
  };
  double max_rms = 0.0;
  for (std::size_t i = 0; i < in.size(); i += half_rms > 0 ? half_rms : 1)
    max_rms = std::max(max_rms, local_rms(i));
  if (!(max_rms > 1e-9)) return result;
  const double floor_rms = max_rms * std::pow(10.0, -opts.voicing_floor_db / 20.0);

  const double min_period = opts.min_period_ms * fs / 1000.0;
  const double max_period = opts.max_period_ms * fs / 1000.0;

  auto detect = [&](double period) {
    auto half = static_cast<std::size_t>(std::lround(0.5 * opts.window_periods * period));
    half = std::max<std::size_t>(half, 1);
    auto crossings = PositiveCrossings(ZeroFrequencyFilter(in, half));
    std::vector<Crossing> kept;
    for (const auto &c : crossings) {
      if (local_rms(c.index) < floor_rms) continue;
      if (!kept.empty() && static_cast<double>(c.index - kept.back().index) < min_period) {
        if (c.slope > kept.back().slope) kept.back() = c;
        continue;
      }
      kept.push_back(c);
    }
    return kept;
  };

  std::vector<double> emphasized(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    emphasized[i] = in[i] - (i > 0 ? 0.97 * in[i - 1] : 0.0);
  const auto residual = LpResidual(emphasized, fs);
  const double period = EstimatePeriod(residual, fs, min_period, max_period,
                                       opts.initial_period_ms * fs / 1000.0);
  const auto final_pass = detect(period);

  // The zero-frequency crossing lags behind the excitation by a few
  // samples; snap each instant to the strongest negative residual sample
  // nearby.
  const auto reach = static_cast<std::size_t>(std::lround(opts.snap_ms * fs / 1000.0));
  for (const auto &c : final_pass) {
    std::size_t lo = c.index >= reach ? c.index - reach : 0;
    std::size_t hi = std::min(in.size(), c.index + reach + 1);
    std::size_t best = c.index;
    for (std::size_t n = lo; n < hi; ++n)
      if (residual[n] < residual[best]) best = n;
    if (result.instants.empty() || best > result.instants.back())
      result.instants.push_back(best);
  }
  return result;
}

GciList ReadGciFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open GCI file " + path);
  GciList gcis;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long v = -1;
    if (!(ss >> v) || v < 0)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected a non-negative sample index");
    gcis.instants.push_back(static_cast<std::size_t>(v));
  }
  for (std::size_t i = 1; i < gcis.instants.size(); ++i)
    if (gcis.instants[i] <= gcis.instants[i - 1])
      throw std::runtime_error(path + ": GCIs must be strictly increasing");
  return gcis;
}

void WriteGciFile(const GciList &gcis, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  for (auto g : gcis.instants) os << g << '\n';
}

}  // namespace lpformant
