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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "ghzsim/acquisition.hpp"
#include "ghzsim/analysis.hpp"
#include "ghzsim/inequality.hpp"

namespace ghzsim {

/// Everything a simulate run is parameterized by.
struct RunConfig {
  ExperimentConfig experiment;
  double significance_k = 3.0;

  bool operator==(const RunConfig&) const = default;
};

/// Keys: contrast (number or {xxx, xyy, yxy, yyx}), mean_counts, chi_points,
/// n_sets, seed, drift_rate, background, significance_k, noiseless,
/// companions. Unknown keys are rejected. Throws ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

/// `chi_rad,counts` header, one row per point, numbers in shortest
/// round-trip form.
std::string scan_csv(const OscillationDataset& data);
void write_scan_csv(const std::filesystem::path& path, const OscillationDataset& data);

struct ScanColumns {
  std::vector<double> chi;
  std::vector<double> counts;
};
ScanColumns read_scan_csv(const std::filesystem::path& path);

/// `set{s}_alpha{a}_gamma{g}.csv`, with a `_flipoff` suffix for companions.
std::string scan_file_name(const OscillationDataset& data);

/// Writes every scan CSV and `manifest.json` into `dir`; returns the manifest
/// path.
std::filesystem::path write_record(const ExperimentRecord& record,
                                   const RunConfig& config,
                                   const std::filesystem::path& dir);

struct LoadedRecord {
  RunConfig config;
  ExperimentRecord record;
};
/// Throws DataError naming the offending file.
LoadedRecord read_record(const std::filesystem::path& manifest_path);

nlohmann::json result_to_json(const MerminResult& result);
nlohmann::json report_to_json(const AnalysisReport& report);
/// Four rows mirroring the published correlator table, then M ± σ and the
/// verdict against the noncontextual bound.
std::string format_table(const MerminResult& result);

nlohmann::json bounds_to_json(const NchvBoundResult& nchv,
                              const QuantumBoundResult& quantum);

/// Fitted fringe for plotting: `chi_rad,counts,fit`.
std::string fringe_csv(const OscillationDataset& data, const FitResult& fit);

}  // namespace ghzsim
