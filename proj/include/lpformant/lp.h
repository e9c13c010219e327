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

#ifndef LPFORMANT_LP_H_
#define LPFORMANT_LP_H_

#include <span>
#include <vector>

namespace lpformant {

// All solvers in this header use the covariance convention: the forward
// error runs over n in [p, N) and the backward error over n in [0, N - p),
// so no sample outside the frame is ever referenced.

/// Inverse filter A(z) = 1 + sum_k coefficients[k-1] z^-k.
struct LpModel {
  int order = 0;
  std::vector<double> coefficients;
  double residual_energy = 0.0;
  /// Set when the frame had no energy or the normal matrix needed a ridge.
  bool degenerate = false;
};

/// p x p normal matrix (row-major) and right-hand side.
struct NormalSystem {
  int order = 0;
  std::vector<double> matrix;
  std::vector<double> rhs;

  double &at(int i, int k) { return matrix[static_cast<std::size_t>(i) * order + k]; }
  double at(int i, int k) const {
    return matrix[static_cast<std::size_t>(i) * order + k];
  }
};

struct Solution {
  std::vector<double> coefficients;
  bool degenerate = false;
};

/// Frames whose energy falls below this are treated as silence.
inline constexpr double kDegenerateEnergy = 1e-12;

/// Forward-only normal equations over n in [p, N).
NormalSystem BuildForwardSystem(std::span<const double> frame, int order);

/// Forward plus backward normal equations. With `weights` empty every term
/// has unit weight; otherwise weights[n] scales both the forward and the
/// backward error term at sample n, so it must hold one value per frame
/// sample. Throws on negative weights or N <= 2p.
NormalSystem BuildFbSystem(std::span<const double> frame, int order,
                           std::span<const double> weights = {});

/// Solves matrix * a = rhs with a pivoted LDL^T factorization. When the
/// factorization fails or the reciprocal condition estimate drops below
/// 1e-12, retries with a ridge of 1e-9 * trace / p and flags the result.
Solution SolveNormalSystem(const NormalSystem &sys);

/// Covariance-method LP. Throws std::invalid_argument("frame too short")
/// when N <= 2p.
LpModel LpCov(std::span<const double> frame, int order);

/// Unweighted forward-backward covariance LP.
LpModel LpFb(std::span<const double> frame, int order);

/// Weighted forward-backward covariance LP; `weights` as in BuildFbSystem.
LpModel WeightedLpFb(std::span<const double> frame, int order,
                     std::span<const double> weights);

/// Sum over n in [p, N) of (x_n + sum_k a_k x_{n-k})^2.
double ForwardError(std::span<const double> frame,
                    std::span<const double> coefficients);

/// Forward plus backward error, each term scaled by weights[n] when given.
double FbError(std::span<const double> frame, std::span<const double> coefficients,
               std::span<const double> weights = {});

}  // namespace lpformant

#endif  // LPFORMANT_LP_H_
