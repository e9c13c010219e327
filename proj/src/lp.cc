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

#include "lpformant/lp.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lpformant {

namespace {

void CheckFrame(std::span<const double> frame, int order) {
  if (order < 1) throw std::invalid_argument("LP order must be positive");
  if (frame.size() <= 2 * static_cast<std::size_t>(order))
    throw std::invalid_argument("frame too short: " + std::to_string(frame.size()) +
                                " samples for order " + std::to_string(order));
}

void CheckWeights(std::span<const double> frame, std::span<const double> weights) {
  if (weights.empty()) return;
  if (weights.size() != frame.size())
    throw std::invalid_argument("weight vector length " +
                                std::to_string(weights.size()) +
                                " does not match frame length " +
                                std::to_string(frame.size()));
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("negative LP weight");
}

double Energy(std::span<const double> frame) {
  double e = 0.0;
  for (double v : frame) e += v * v;
  return e;
}

LpModel ZeroModel(std::span<const double> frame, int order,
                  std::span<const double> weights, bool forward_only) {
  LpModel m;
  m.order = order;
  m.coefficients.assign(order, 0.0);
  m.degenerate = true;
  m.residual_energy = forward_only ? ForwardError(frame, m.coefficients)
                                   : FbError(frame, m.coefficients, weights);
  return m;
}

}  // namespace

NormalSystem BuildForwardSystem(std::span<const double> frame, int order) {
  CheckFrame(frame, order);
  const int n_total = static_cast<int>(frame.size());
  NormalSystem sys;
  sys.order = order;
  sys.matrix.assign(static_cast<std::size_t>(order) * order, 0.0);
  sys.rhs.assign(order, 0.0);
  for (int i = 1; i <= order; ++i) {
    for (int k = i; k <= order; ++k) {
      double s = 0.0;
      for (int n = order; n < n_total; ++n) s += frame[n - i] * frame[n - k];
      sys.at(i - 1, k - 1) = s;
      sys.at(k - 1, i - 1) = s;
    }
    double r = 0.0;
    for (int n = order; n < n_total; ++n) r += frame[n - i] * frame[n];
    sys.rhs[i - 1] = -r;
  }
  return sys;
}

NormalSystem BuildFbSystem(std::span<const double> frame, int order,
                           std::span<const double> weights) {
  CheckFrame(frame, order);
  const int n_total = static_cast<int>(frame.size());
  CheckWeights(frame, weights);
  const bool weighted = !weights.empty();
  auto w = [&](int n) { return weighted ? weights[n] : 1.0; };

  NormalSystem sys;
  sys.order = order;
  sys.matrix.assign(static_cast<std::size_t>(order) * order, 0.0);
  sys.rhs.assign(order, 0.0);
  for (int i = 1; i <= order; ++i) {
    for (int k = i; k <= order; ++k) {
      double fwd = 0.0;
      for (int n = order; n < n_total; ++n)
        fwd += w(n) * frame[n - i] * frame[n - k];
      double bwd = 0.0;
      for (int n = 0; n < n_total - order; ++n)
        bwd += w(n) * frame[n + i] * frame[n + k];
      sys.at(i - 1, k - 1) = fwd + bwd;
      sys.at(k - 1, i - 1) = fwd + bwd;
    }
    double fwd = 0.0;
    for (int n = order; n < n_total; ++n) fwd += w(n) * frame[n - i] * frame[n];
    double bwd = 0.0;
    for (int n = 0; n < n_total - order; ++n) bwd += w(n) * frame[n + i] * frame[n];
    sys.rhs[i - 1] = -(fwd + bwd);
  }
  return sys;
}

Solution SolveNormalSystem(const NormalSystem &sys) {
  const int p = sys.order;
  Solution sol;
  if (p == 0) return sol;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      m(sys.matrix.data(), p, p);
  Eigen::Map<const Eigen::VectorXd> b(sys.rhs.data(), p);

  auto finite = [](const Eigen::VectorXd &v) { return v.allFinite(); };

  Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
  // LDLT pseudo-inverts exact zero pivots, which hides them from rcond().
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  const bool well_posed = ldlt.info() == Eigen::Success && ldlt.rcond() >= 1e-12 &&
                          pivots.minCoeff() > 1e-12 * pivots.maxCoeff();
  if (well_posed) {
    Eigen::VectorXd a = ldlt.solve(b);
    if (finite(a)) {
      sol.coefficients.assign(a.data(), a.data() + p);
      return sol;
    }
  }

  sol.degenerate = true;
  double ridge = 1e-9 * m.trace() / p;
  Eigen::MatrixXd reg = m;
  if (ridge > 0.0) reg.diagonal().array() += ridge;
  Eigen::LDLT<Eigen::MatrixXd> ridged(reg);
  Eigen::VectorXd a = ridged.solve(b);
  if (ridged.info() != Eigen::Success || !finite(a)) a.setZero();
  sol.coefficients.assign(a.data(), a.data() + p);
  return sol;
}

double ForwardError(std::span<const double> frame,
                    std::span<const double> coefficients) {
  const int p = static_cast<int>(coefficients.size());
  const int n_total = static_cast<int>(frame.size());
  double err = 0.0;
  for (int n = p; n < n_total; ++n) {
    double e = frame[n];
    for (int k = 1; k <= p; ++k) e += coefficients[k - 1] * frame[n - k];
    err += e * e;
  }
  return err;
}

double FbError(std::span<const double> frame, std::span<const double> coefficients,
               std::span<const double> weights) {
  const int p = static_cast<int>(coefficients.size());
  const int n_total = static_cast<int>(frame.size());
  auto w = [&](int n) { return weights.empty() ? 1.0 : weights[n]; };
  double err = 0.0;
  for (int n = p; n < n_total; ++n) {
    double e = frame[n];
    for (int k = 1; k <= p; ++k) e += coefficients[k - 1] * frame[n - k];
    err += w(n) * e * e;
  }
  for (int n = 0; n < n_total - p; ++n) {
    double e = frame[n];
    for (int k = 1; k <= p; ++k) e += coefficients[k - 1] * frame[n + k];
    err += w(n) * e * e;
  }
  return err;
}

LpModel LpCov(std::span<const double> frame, int order) {
  CheckFrame(frame, order);
  if (Energy(frame) < kDegenerateEnergy) return ZeroModel(frame, order, {}, true);
  Solution sol = SolveNormalSystem(BuildForwardSystem(frame, order));
  LpModel m;
  m.order = order;
  m.coefficients = std::move(sol.coefficients);
  m.degenerate = sol.degenerate;
  m.residual_energy = ForwardError(frame, m.coefficients);
  return m;
}

LpModel WeightedLpFb(std::span<const double> frame, int order,
                     std::span<const double> weights) {
  CheckFrame(frame, order);
  CheckWeights(frame, weights);
  if (Energy(frame) < kDegenerateEnergy)
    return ZeroModel(frame, order, weights, false);
  Solution sol = SolveNormalSystem(BuildFbSystem(frame, order, weights));
  LpModel m;
  m.order = order;
  m.coefficients = std::move(sol.coefficients);
  m.degenerate = sol.degenerate;
  m.residual_energy = FbError(frame, m.coefficients, weights);
  return m;
}

LpModel LpFb(std::span<const double> frame, int order) {
  return WeightedLpFb(frame, order, {});
}

}  // namespace lpformant
