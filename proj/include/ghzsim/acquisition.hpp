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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghzsim/apparatus.hpp"
#include "ghzsim/observable.hpp"

namespace ghzsim {

inline constexpr int kScansPerSet = 16;

/// Imperfections applied to the ideal count-rate law.
struct NoiseModel {
  double contrast = 1.0;      // C ∈ [0, 1], damps the interference term
  double mean_counts = 1000;  // N0 > 0
  double drift_rate = 0.0;    // rad of χ offset added per scan index
  double background = 0.0;    // b ≥ 0 counts per point

  void validate() const;
  bool operator==(const NoiseModel&) const = default;
};

/// Expected counts N0·½·(1 + C·cos(χ+α+γ+δ)) + b for the GHZ state, where δ is
/// `chi_offset`. Evaluated from the quantum projection probability.
double mean_count_rate(const PhaseSetting& s, const NoiseModel& noise,
                       double chi_offset = 0.0);

/// Same law for an arbitrary prepared state: its projection probability
/// about the χ-average 1/8 is damped by C and rescaled so the mean is N0/2+b.
double mean_count_rate(const Ket8& state, const PhaseSetting& s,
                       const NoiseModel& noise, double chi_offset = 0.0);

/// One χ scan at fixed (α, γ).
struct OscillationDataset {
  double alpha = 0.0;
  double gamma = 0.0;
  int alpha_step = 0;
  int gamma_step = 0;
  int set_index = 0;
  int scan_index = 0;  // global order of acquisition, drives the drift
  std::vector<double> chi_grid;
  std::vector<double> counts;  // integers unless acquired noiseless
  std::uint64_t seed = 0;
  NoiseModel noise;
  bool flipper_on = true;

  bool operator==(const OscillationDataset&) const = default;
};

struct ScanOptions {
  double chi_offset = 0.0;
  bool flipper_on = true;
  bool noiseless = false;  // record the exact means instead of sampling
};

/// `count` equally spaced phases over [0, 2π).
std::vector<double> default_chi_grid(int count);

/// Samples counts[i] ~ Poisson(mean_count_rate(χᵢ, α, γ)). Deterministic in
/// `seed`.
OscillationDataset run_scan(double alpha, double gamma,
                            std::span<const double> chi_grid,
                            const NoiseModel& noise, std::uint64_t seed,
                            const ScanOptions& options = {});

/// Independent per-stream seed derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

struct ExperimentConfig {
  NoiseModel noise;
  /// Overrides `noise.contrast` per correlator, ordered as kObservables.
  std::optional<std::array<double, 4>> contrast_by_observable;
  int n_sets = 4;
  int points_per_scan = 16;
  std::uint64_t seed = 20090101;
  bool noiseless = false;
  bool companions = true;  // also record flipper-off scans for drift tracking

  void validate() const;
  double contrast_for(Observable o) const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// The 16 (α, γ) scans of one set in the order alpha_step·4 + gamma_step,
/// plus the flipper-off companions in the same order (empty if not taken).
struct ScanSet {
  std::vector<OscillationDataset> scans;
  std::vector<OscillationDataset> companions;

  bool operator==(const ScanSet&) const = default;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::vector<ScanSet> sets;
  bool drift_corrected = false;
  std::vector<std::string> warnings;

  std::size_t dataset_count() const;
  bool has_companions() const;
  bool operator==(const ExperimentRecord&) const = default;
};

ExperimentRecord run_experiment(const ExperimentConfig& config);
ExperimentRecord run_experiment(const NoiseModel& noise, int n_sets,
                                int points_per_scan, std::uint64_t seed);

}  // namespace ghzsim
