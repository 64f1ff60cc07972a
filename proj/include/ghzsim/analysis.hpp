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

#include <string>
#include <vector>

#include "ghzsim/acquisition.hpp"
#include "ghzsim/fitting.hpp"
#include "ghzsim/inequality.hpp"

namespace ghzsim {

struct AnalysisOptions {
  bool drift_correction = true;
  double significance_k = 3.0;
};

struct ScanFit {
  int set_index = 0;
  int alpha_step = 0;
  int gamma_step = 0;
  FitResult fit;
};

struct AnalysisReport {
  std::vector<MerminResult> per_set;
  MerminResult combined;
  std::vector<ScanFit> fits;  // main scans in record order
  DriftEstimate drift;
  ExperimentRecord analyzed;  // the record after drift correction
  std::vector<std::string> warnings;
};

/// Fits the 16 scans of one set and reads each correlator off the fitted
/// curves at its four χ lines.
MerminResult analyze_set(const ScanSet& set, double significance_k = 3.0,
                         std::vector<ScanFit>* fits = nullptr);

/// Drift correction (optional), per-set evaluation, then inverse-variance
/// averaging of the expectations across sets. A residual χ jitter σ left after
/// correction scales each |E| by cos σ, which enters as a systematic error.
AnalysisReport analyze(const ExperimentRecord& record,
                       const AnalysisOptions& options = {});

}  // namespace ghzsim
