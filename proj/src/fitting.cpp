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

#include "ghzsim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

constexpr double kGradientTol = 1e-9;
constexpr int kMaxIterations = 50;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Phase in (−π, π].
double centered_phase(double phi) {
  const double w = wrap_phase(phi);
  return w > kPi ? w - 2.0 * kPi : w;
}

void check_input(std::span<const double> chi, std::span<const double> counts) {
  if (chi.size() != counts.size()) {
    throw ContractError(fmt::format(
        "fit_sinusoid: {} phases but {} counts", chi.size(), counts.size()));
  }
  if (chi.size() < 4) {
    throw ContractError(fmt::format(
        "fit_sinusoid: need at least 4 points, got {}", chi.size()));
  }
  bool any_nonzero = false;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (!std::isfinite(chi[i]) || !std::isfinite(counts[i]) || counts[i] < 0.0) {
      throw ContractError(fmt::format(
          "fit_sinusoid: invalid point {} (chi={}, counts={})", i, chi[i], counts[i]));
    }
    any_nonzero = any_nonzero || counts[i] != 0.0;
  }
  if (!any_nonzero) throw ContractError("fit_sinusoid: all counts are zero");
}

}  // namespace

double wrap_phase(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

double FitResult::offset_error() const { return std::sqrt(covariance(0, 0)); }
double FitResult::amplitude_error() const { return std::sqrt(covariance(1, 1)); }
double FitResult::phase_error() const { return std::sqrt(covariance(2, 2)); }

double FitResult::visibility_error() const {
  const Eigen::Vector2d grad(-amplitude / (offset * offset), 1.0 / offset);
  const Eigen::Matrix2d cov = covariance.topLeftCorner<2, 2>();
  return std::sqrt(grad.dot(cov * grad));
}

FitResult fit_sinusoid(std::span<const double> chi, std::span<const double> counts) {
  check_input(chi, counts);
  const auto n = static_cast<Eigen::Index>(chi.size());

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n), weight(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(chi[i]);
    design(i, 2) = std::sin(chi[i]);
    y(i) = counts[i];
    weight(i) = 1.0 / std::max(counts[i], 1.0);
  }

  const Eigen::Matrix3d normal = design.transpose() * weight.asDiagonal() * design;
  const Eigen::LDLT<Eigen::Matrix3d> solver(normal);
  if (solver.info() != Eigen::Success || !solver.isPositive() ||
      solver.rcond() < 1e-12) {
    throw FitError(fmt::format(
        "fit_sinusoid: singular normal equations (rcond {:.3g}); the chi grid "
        "does not resolve a unit-frequency sinusoid",
        solver.rcond()));
  }

  // Start from the discrete Fourier component at the unit frequency.
  Eigen::Vector3d theta(y.mean(), 2.0 * design.col(1).dot(y) / n,
                        2.0 * design.col(2).dot(y) / n);
  const double scale =
      std::max((design.transpose() * weight.asDiagonal() * y).norm(),
               std::numeric_limits<double>::min());

  FitResult fit;
  double gradient_norm = kInf;
  for (fit.iterations = 0; fit.iterations <= kMaxIterations; ++fit.iterations) {
    const Eigen::VectorXd residual = y - design * theta;
    const Eigen::Vector3d gradient =
        design.transpose() * weight.asDiagonal() * residual;
    gradient_norm = gradient.norm();
    if (!std::isfinite(gradient_norm)) break;
    if (gradient_norm <= kGradientTol * scale) break;
    theta += solver.solve(gradient);
  }
  if (!(gradient_norm <= kGradientTol * scale)) {
    throw FitError(fmt::format(
        "fit_sinusoid: no convergence after {} iterations (relative gradient "
        "{:.3g}, A={:.6g}, c={:.6g}, s={:.6g})",
        fit.iterations, gradient_norm / scale, theta(0), theta(1), theta(2)));
  }

  const Eigen::VectorXd residual = y - design * theta;
  fit.chi_squared_reduced =
      residual.cwiseProduct(residual).dot(weight) / static_cast<double>(n - 3);
  fit.linear_covariance = solver.solve(Eigen::Matrix3d::Identity());
  fit.offset = theta(0);

  const bool all_equal = std::all_of(counts.begin(), counts.end(),
                                     [&](double c) { return c == counts[0]; });
  const double c = theta(1);
  const double s = theta(2);
  const double amplitude = std::hypot(c, s);
  fit.covariance(0, 0) = fit.linear_covariance(0, 0);
  if (all_equal || amplitude == 0.0) {
    fit.degenerate = all_equal;
    fit.offset = all_equal ? counts[0] : fit.offset;
    fit.amplitude = 0.0;
    fit.phase = 0.0;
    // With no fringe the amplitude error is the radial spread of (c, s).
    fit.covariance(1, 1) =
        0.5 * (fit.linear_covariance(1, 1) + fit.linear_covariance(2, 2));
    fit.covariance(0, 1) = fit.covariance(1, 0) = 0.0;
    fit.covariance(2, 2) = kInf;
  } else {
    fit.amplitude = amplitude;
    fit.phase = wrap_phase(std::atan2(-s, c));
    Eigen::Matrix3d jacobian;
    jacobian << 1.0, 0.0, 0.0,
        0.0, c / amplitude, s / amplitude,
        0.0, s / (amplitude * amplitude), -c / (amplitude * amplitude);
    fit.covariance = jacobian * fit.linear_covariance * jacobian.transpose();
  }
  fit.visibility = fit.amplitude / fit.offset;
  return fit;
}

FitResult fit_sinusoid(const OscillationDataset& data) {
  return fit_sinusoid(data.chi_grid, data.counts);
}

Intensity intensity_at(const FitResult& fit, double chi) {
  const Eigen::Vector3d grad(1.0, std::cos(chi), std::sin(chi));
  return {fit.offset + fit.amplitude * std::cos(chi + fit.phase),
          std::sqrt(grad.dot(fit.linear_covariance * grad))};
}

double intensity_covariance(const FitResult& fit, double chi1, double chi2) {
  const Eigen::Vector3d g1(1.0, std::cos(chi1), std::sin(chi1));
  const Eigen::Vector3d g2(1.0, std::cos(chi2), std::sin(chi2));
  return g1.dot(fit.linear_covariance * g2);
}

DriftEstimate estimate_drift(const ExperimentRecord& record) {
  DriftEstimate estimate;
  if (!record.has_companions()) {
    estimate.warning = "no flipper-off companion scans; drift not corrected";
    return estimate;
  }

  // Companions carry cos(χ + δ), so the fitted phase is the offset δ.
  std::map<int, std::pair<double, double>> by_index;
  for (const auto& set : record.sets) {
    for (const auto& companion : set.companions) {
      const FitResult fit = fit_sinusoid(companion);
      if (fit.degenerate || !std::isfinite(fit.phase_error())) {
        estimate.warning = fmt::format(
            "companion scan {} shows no fringe; drift not corrected",
            companion.scan_index);
        return estimate;
      }
      by_index[companion.scan_index] = {centered_phase(fit.phase),
                                        fit.phase_error()};
    }
  }

  double previous = 0.0;
  for (const auto& [index, value] : by_index) {
    double offset = value.first;
    // Unwrap along acquisition order.
    offset += 2.0 * kPi * std::round((previous - offset) / (2.0 * kPi));
    estimate.scan_index.push_back(index);
    estimate.offsets.push_back(offset);
    estimate.errors.push_back(value.second);
    previous = offset;
  }
  estimate.available = true;

  const auto m = static_cast<Eigen::Index>(estimate.offsets.size());
  if (m >= 2) {
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd y(m), weight(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      design(i, 0) = 1.0;
      design(i, 1) = estimate.scan_index[i];
      y(i) = estimate.offsets[i];
      weight(i) = 1.0 / std::max(estimate.errors[i] * estimate.errors[i],
                                 std::numeric_limits<double>::min());
    }
    const Eigen::Matrix2d normal =
        design.transpose() * weight.asDiagonal() * design;
    const Eigen::Matrix2d cov = normal.inverse();
    const Eigen::Vector2d beta =
        cov * (design.transpose() * weight.asDiagonal() * y);
    estimate.intercept = beta(0);
    estimate.slope = beta(1);
    estimate.slope_error = std::sqrt(cov(1, 1));
    const Eigen::VectorXd residual = y - design * beta;
    estimate.residual_rms = std::sqrt(residual.squaredNorm() / m);
  } else {
    estimate.intercept = estimate.offsets.front();
    estimate.slope_error = kInf;
  }
  return estimate;
}

ExperimentRecord correct_drift(const ExperimentRecord& record,
                               const DriftEstimate& estimate) {
  ExperimentRecord out = record;
  if (!estimate.available) {
    out.warnings.push_back(estimate.warning);
    return out;
  }
  std::map<int, double> offset_of;
  for (std::size_t i = 0; i < estimate.scan_index.size(); ++i) {
    offset_of[estimate.scan_index[i]] = estimate.offsets[i];
  }
  const auto shift = [&](OscillationDataset& data) {
    const auto it = offset_of.find(data.scan_index);
    if (it == offset_of.end()) {
      throw DataError(fmt::format("no drift estimate for scan {}", data.scan_index));
    }
    for (double& chi : data.chi_grid) chi += it->second;
  };
  for (auto& set : out.sets) {
    for (auto& scan : set.scans) shift(scan);
    for (auto& companion : set.companions) shift(companion);
  }
  out.drift_corrected = true;
  return out;
}

ExperimentRecord correct_drift(const ExperimentRecord& record) {
  return correct_drift(record, estimate_drift(record));
}

}  // namespace ghzsim
