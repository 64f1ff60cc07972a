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

#include "ghzsim/inequality.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

std::array<PhaseSetting, 8> phase_settings(Observable o) {
  std::array<PhaseSetting, 8> out{};
  const auto signed_settings = settings_for(o);
  for (std::size_t i = 0; i < 8; ++i) out[i] = signed_settings[i].phases();
  return out;
}

Operator2 axis_operator(Axis a) { return pauli(a); }

}  // namespace

ExpectationEstimate expectation_from_counts(
    Observable o, std::span<const double, 8> counts,
    const Eigen::Matrix<double, 8, 8>& covariance) {
  const auto settings = settings_for(o);
  double total = 0.0;
  double signed_sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    if (!(counts[i] >= 0.0) || !std::isfinite(counts[i])) {
      throw ContractError(fmt::format(
          "expectation_from_counts: count {} is {} (must be finite and >= 0)",
          i, counts[i]));
    }
    total += counts[i];
    signed_sum += settings[i].sign * counts[i];
  }
  if (total <= 0.0) {
    throw UndefinedExpectationError(fmt::format(
        "expectation_from_counts: total count for {} is zero", to_string(o)));
  }

  ExpectationEstimate est;
  est.observable = o;
  est.value = signed_sum / total;
  est.settings = phase_settings(o);

  // ∂E/∂Nᵢ = (sᵢ − E) / ΣN.
  Eigen::Matrix<double, 8, 1> grad;
  for (std::size_t i = 0; i < 8; ++i) {
    grad(static_cast<Eigen::Index>(i)) = (settings[i].sign - est.value) / total;
  }
  est.std_error = std::sqrt(std::max(0.0, grad.dot(covariance * grad)));
  return est;
}

ExpectationEstimate expectation_from_counts(Observable o,
                                            std::span<const double, 8> counts,
                                            std::span<const double, 8> errors) {
  Eigen::Matrix<double, 8, 8> covariance = Eigen::Matrix<double, 8, 8>::Zero();
  for (int i = 0; i < 8; ++i) {
    if (!(errors[i] >= 0.0) || !std::isfinite(errors[i])) {
      throw ContractError(fmt::format(
          "expectation_from_counts: error {} is {}", i, errors[i]));
    }
    covariance(i, i) = errors[i] * errors[i];
  }
  return expectation_from_counts(o, counts, covariance);
}

MerminResult mermin_M(std::span<const ExpectationEstimate> estimates,
                      double significance_k) {
  if (estimates.size() != 4) {
    throw ContractError(fmt::format(
        "mermin_M: expected 4 expectation values, got {}", estimates.size()));
  }
  MerminResult result;
  std::array<bool, 4> seen{};
  for (const auto& e : estimates) {
    const int idx = index_of(e.observable);
    if (seen[idx]) {
      throw ContractError(fmt::format("mermin_M: observable {} given twice",
                                      to_string(e.observable)));
    }
    seen[idx] = true;
    result.expectations[idx] = e;
  }

  const auto& xxx = result.expectation(Observable::xxx);
  const auto& xyy = result.expectation(Observable::xyy);
  const auto& yxy = result.expectation(Observable::yxy);
  const auto& yyx = result.expectation(Observable::yyx);
  result.M = xxx.value - xyy.value - yxy.value - yyx.value;
  result.sigma_M_stat =
      std::sqrt(xxx.std_error * xxx.std_error + xyy.std_error * xyy.std_error +
                yxy.std_error * yxy.std_error + yyx.std_error * yyx.std_error);
  result.significance_k = significance_k;
  return with_systematic(result, 0.0);
}

MerminResult with_systematic(MerminResult result, double sigma_sys) {
  if (!(sigma_sys >= 0.0)) {
    throw ContractError("with_systematic: systematic error must be >= 0");
  }
  result.sigma_M_sys = sigma_sys;
  result.sigma_M = std::hypot(result.sigma_M_stat, sigma_sys);
  result.violates_nchv =
      result.M - result.nchv_bound > result.significance_k * result.sigma_M;
  return result;
}

Measurement weighted_average(std::span<const Measurement> entries) {
  if (entries.empty()) throw ContractError("weighted_average: no entries");
  double weight_sum = 0.0;
  double weighted = 0.0;
  for (const auto& m : entries) {
    if (!(m.std_error > 0.0) || !std::isfinite(m.std_error) ||
        !std::isfinite(m.value)) {
      throw ContractError(fmt::format(
          "weighted_average: entry ({}, {}) needs a finite value and a "
          "positive finite error",
          m.value, m.std_error));
    }
    const double w = 1.0 / (m.std_error * m.std_error);
    weight_sum += w;
    weighted += w * m.value;
  }
  return {weighted / weight_sum, 1.0 / std::sqrt(weight_sum)};
}

ExpectationEstimate weighted_average(std::span<const ExpectationEstimate> entries) {
  if (entries.empty()) throw ContractError("weighted_average: no entries");
  std::vector<Measurement> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.observable != entries.front().observable) {
      throw ContractError("weighted_average: mixed observables");
    }
    values.push_back({e.value, e.std_error});
  }
  const Measurement combined = weighted_average(values);
  ExpectationEstimate out = entries.front();
  out.value = combined.value;
  out.std_error = combined.std_error;
  return out;
}

MerminResult weighted_average(std::span<const MerminResult> entries) {
  if (entries.empty()) throw ContractError("weighted_average: no entries");
  std::array<ExpectationEstimate, 4> combined{};
  for (Observable o : kObservables) {
    std::vector<ExpectationEstimate> per_entry;
    per_entry.reserve(entries.size());
    for (const auto& r : entries) per_entry.push_back(r.expectation(o));
    combined[index_of(o)] = weighted_average(per_entry);
  }
  return mermin_M(combined, entries.front().significance_k);
}

int HiddenAssignment::mermin_value() const {
  constexpr int x = 0;
  constexpr int y = 1;
  return path[x] * spin[x] * energy[x] - path[x] * spin[y] * energy[y] -
         path[y] * spin[x] * energy[y] - path[y] * spin[y] * energy[x];
}

NchvBoundResult nchv_bound_oracle() {
  NchvBoundResult result;
  result.max_M = -5;
  const auto value = [](int mask, int bit) { return (mask >> bit) & 1 ? -1 : 1; };
  for (int mask = 0; mask < 64; ++mask) {
    const HiddenAssignment a{
        .path = {value(mask, 5), value(mask, 4)},
        .spin = {value(mask, 3), value(mask, 2)},
        .energy = {value(mask, 1), value(mask, 0)},
    };
    const int m = a.mermin_value();
    result.values.push_back(m);
    ++result.assignments_checked;
    if (m > result.max_M) {
      result.max_M = m;
      result.maximizers.clear();
    }
    if (m == result.max_M) result.maximizers.push_back(a);
  }
  return result;
}

Operator8 mermin_operator() {
  Operator8 total = Operator8::Zero();
  for (Observable o : kObservables) {
    const auto axes = axes_of(o);
    const double sign = o == Observable::xxx ? 1.0 : -1.0;
    total += sign * tensor3(axis_operator(axes.spin), axis_operator(axes.path),
                            axis_operator(axes.energy));
  }
  return total;
}

QuantumBoundResult quantum_bound_oracle() {
  const Eigen::SelfAdjointEigenSolver<Operator8> solver(mermin_operator());
  QuantumBoundResult result;
  result.spectrum = solver.eigenvalues();
  result.min_eigenvalue = result.spectrum(0);
  result.max_eigenvalue = result.spectrum(7);
  result.eigenstate = solver.eigenvectors().col(7);
  return result;
}

}  // namespace ghzsim
