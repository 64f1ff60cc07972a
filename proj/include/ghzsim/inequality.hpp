// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ghzsim/observable.hpp"
#include "ghzsim/qstate.hpp"

namespace ghzsim {

inline constexpr double kNchvBound = 2.0;
inline constexpr double kQuantumBound = 4.0;

struct ExpectationEstimate {
  Observable observable = Observable::xxx;
  double value = 0.0;
  double std_error = 0.0;
  std::array<PhaseSetting, 8> settings{};
};

/// E = Σ sᵢNᵢ / Σ Nᵢ over the eight settings of `settings_for(o)`, with errors
/// propagated to first order. `counts` and `errors` follow that ordering.
ExpectationEstimate expectation_from_counts(Observable o,
                                            std::span<const double, 8> counts,
                                            std::span<const double, 8> errors);

/// Same, with a full 8×8 covariance of the counts (intensities read from one
/// fitted curve are correlated).
ExpectationEstimate expectation_from_counts(
    Observable o, std::span<const double, 8> counts,
    const Eigen::Matrix<double, 8, 8>& covariance);

struct MerminResult {
  /// Ordered as kObservables.
  std::array<ExpectationEstimate, 4> expectations{};
  double M = 0.0;
  double sigma_M = 0.0;  // total: statistical ⊕ systematic
  double sigma_M_stat = 0.0;
  double sigma_M_sys = 0.0;
  double nchv_bound = kNchvBound;
  double quantum_bound = kQuantumBound;
  double significance_k = 3.0;
  bool violates_nchv = false;  // M − 2 > k·σ_M

  const ExpectationEstimate& expectation(Observable o) const {
    return expectations[index_of(o)];
  }
};

/// M = E_xxx − E_xyy − E_yxy − E_yyx with σ_M the quadrature sum of the four
/// errors. Each observable must appear exactly once.
MerminResult mermin_M(std::span<const ExpectationEstimate> estimates,
                      double significance_k = 3.0);

/// Adds a systematic error to σ_M in quadrature and re-evaluates the verdict.
MerminResult with_systematic(MerminResult result, double sigma_sys);

struct Measurement {
  double value = 0.0;
  double std_error = 0.0;
};

/// Inverse-variance weighted mean; error 1/√(Σ 1/σᵢ²).
Measurement weighted_average(std::span<const Measurement> entries);
/// Entries must share one observable.
ExpectationEstimate weighted_average(std::span<const ExpectationEstimate> entries);
/// Averages each expectation across entries, then rebuilds M from them.
MerminResult weighted_average(std::span<const MerminResult> entries);

/// ±1 values assigned in advance to σx and σy of every subsystem.
struct HiddenAssignment {
  std::array<int, 2> path{};    // {x, y}
  std::array<int, 2> spin{};
  std::array<int, 2> energy{};

  int mermin_value() const;
};

struct NchvBoundResult {
  int max_M = 0;
  int assignments_checked = 0;
  std::vector<int> values;  // M for each assignment, in enumeration order
  std::vector<HiddenAssignment> maximizers;
};

/// Exhaustive search over all 2⁶ deterministic assignments. Mixtures of
/// assignments are convex combinations and cannot exceed this maximum.
NchvBoundResult nchv_bound_oracle();

/// σxσxσx − σxσyσy − σyσxσy − σyσyσx, factors in (path, spin, energy) order.
Operator8 mermin_operator();

struct QuantumBoundResult {
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
  Eigen::Matrix<double, 8, 1> spectrum;  // ascending
  Ket8 eigenstate;                       // for max_eigenvalue
};

QuantumBoundResult quantum_bound_oracle();

}  // namespace ghzsim
