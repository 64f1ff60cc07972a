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

#include "ghzsim/analysis.hpp"

#include <algorithm>

#include <cmath>

#include <fmt/format.h>

#include "ghzsim/errors.hpp"

namespace ghzsim {

MerminResult analyze_set(const ScanSet& set, double significance_k,
                         std::vector<ScanFit>* fits) {
  if (set.scans.size() != kScansPerSet) {
    throw DataError(fmt::format("scan set holds {} scans, expected {}",
                                set.scans.size(), kScansPerSet));
  }
  std::array<const OscillationDataset*, kScansPerSet> by_setting{};
  for (const auto& scan : set.scans) {
    const int slot = scan.alpha_step * 4 + scan.gamma_step;
    if (slot < 0 || slot >= kScansPerSet || by_setting[slot] != nullptr) {
      throw DataError(fmt::format(
          "scan set has a missing or duplicate (alpha, gamma) = ({}, {}) scan",
          scan.alpha_step, scan.gamma_step));
    }
    by_setting[slot] = &scan;
  }

  std::array<FitResult, kScansPerSet> fitted;
  for (int slot = 0; slot < kScansPerSet; ++slot) {
    fitted[slot] = fit_sinusoid(*by_setting[slot]);
    if (fits) {
      fits->push_back({by_setting[slot]->set_index, by_setting[slot]->alpha_step,
                       by_setting[slot]->gamma_step, fitted[slot]});
    }
  }

  std::array<ExpectationEstimate, 4> estimates;
  for (Observable o : kObservables) {
    const auto settings = settings_for(o);
    std::array<double, 8> counts{};
    std::array<int, 8> slot_of{};
    Eigen::Matrix<double, 8, 8> covariance = Eigen::Matrix<double, 8, 8>::Zero();
    for (int i = 0; i < 8; ++i) {
      slot_of[i] = settings[i].alpha_step * 4 + settings[i].gamma_step;
      // A fitted curve may dip a hair below zero at a dark fringe.
      counts[i] = std::max(0.0, intensity_at(fitted[slot_of[i]],
                                             quarter_turns(settings[i].chi_step)).value);
    }
    // Intensities read off the same curve share its fit covariance.
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (slot_of[i] != slot_of[j]) continue;
        covariance(i, j) = intensity_covariance(
            fitted[slot_of[i]], quarter_turns(settings[i].chi_step),
            quarter_turns(settings[j].chi_step));
      }
    }
    estimates[index_of(o)] = expectation_from_counts(o, counts, covariance);
  }
  return mermin_M(estimates, significance_k);
}

AnalysisReport analyze(const ExperimentRecord& record,
                       const AnalysisOptions& options) {
  if (record.sets.empty()) throw DataError("experiment record has no scan sets");

  AnalysisReport report;
  report.analyzed = record;
  if (options.drift_correction) {
    report.drift = estimate_drift(record);
    report.analyzed = correct_drift(record, report.drift);
    if (!report.drift.available) report.warnings.push_back(report.drift.warning);
  }

  for (const auto& set : report.analyzed.sets) {
    report.per_set.push_back(
        analyze_set(set, options.significance_k, &report.fits));
  }
  report.combined = weighted_average(report.per_set);

  if (report.analyzed.drift_corrected) {
    const double loss = 1.0 - std::cos(report.drift.residual_rms);
    double sys2 = 0.0;
    for (const auto& e : report.combined.expectations) {
      const double sys = std::abs(e.value) * loss;
      sys2 += sys * sys;
    }
    report.combined = with_systematic(report.combined, std::sqrt(sys2));
  }
  return report;
}

}  // namespace ghzsim
