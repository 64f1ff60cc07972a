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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghzsim/acquisition.hpp"

namespace ghzsim {

/// Weighted least-squares fit of counts to A + B·cos(χ + φ₀) at fixed unit
/// frequency.
struct FitResult {
  double offset = 0.0;     // A
  double amplitude = 0.0;  // B ≥ 0
  double phase = 0.0;      // φ₀ in [0, 2π)
  double visibility = 0.0; // B / A
  /// Covariance of (A, B, φ₀). The φ₀ entries are infinite when B = 0.
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
  /// Covariance of the linear parameters (A, c, s) with
  /// A + B·cos(χ+φ₀) = A + c·cos χ + s·sin χ. Always finite.
  Eigen::Matrix3d linear_covariance = Eigen::Matrix3d::Zero();
  double chi_squared_reduced = 0.0;
  bool degenerate = false;  // all counts equal: B forced to 0
  int iterations = 0;

  double offset_error() const;
  double amplitude_error() const;
  double phase_error() const;
  double visibility_error() const;
};

FitResult fit_sinusoid(std::span<const double> chi, std::span<const double> counts);
FitResult fit_sinusoid(const OscillationDataset& data);

struct Intensity {
  double value = 0.0;
  double std_error = 0.0;
};

/// Fitted curve at `chi` with first-order error from the fit covariance.
Intensity intensity_at(const FitResult& fit, double chi);

/// Covariance between the fitted intensities at two phases of the same fit.
double intensity_covariance(const FitResult& fit, double chi1, double chi2);

/// Per-scan χ offsets read off the flipper-off companion fringes, ordered by
/// acquisition index.
struct DriftEstimate {
  bool available = false;
  std::string warning;
  std::vector<int> scan_index;
  std::vector<double> offsets;  // unwrapped along acquisition order
  std::vector<double> errors;
  double slope = 0.0;           // weighted linear trend, rad per scan
  double slope_error = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;    // scatter about the linear trend
};

DriftEstimate estimate_drift(const ExperimentRecord& record);

/// Shifts every scan's χ grid (and its companion's) by the offset estimated
/// from its companion. Without companions the record is returned unchanged
/// apart from a warning.
ExperimentRecord correct_drift(const ExperimentRecord& record);
ExperimentRecord correct_drift(const ExperimentRecord& record,
                               const DriftEstimate& estimate);

/// Wraps into [0, 2π).
double wrap_phase(double phi);

}  // namespace ghzsim
