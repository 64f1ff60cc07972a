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

#include "ghzsim/acquisition.hpp"

#include <cmath>
#include <random>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

// χ-average of the joint projection probability for both prepared states.
constexpr double kMeanProbability = 1.0 / 8.0;

const Ket8& ghz_state() {
  static const Ket8 state = prepare_ghz();
  return state;
}

const Ket8& flipper_off_state() {
  static const Ket8 state = prepare_flipper_off();
  return state;
}

// Nearest multiple of π/2, reduced to {0, 1, 2, 3}.
int nearest_step(double phase) {
  const long step = std::lround(phase / (kPi / 2.0));
  return static_cast<int>(((step % 4) + 4) % 4);
}

}  // namespace

void NoiseModel::validate() const {
  if (!std::isfinite(contrast) || contrast < 0.0 || contrast > 1.0) {
    throw ConfigError("contrast", "must lie in [0, 1]");
  }
  if (!std::isfinite(mean_counts) || mean_counts <= 0.0) {
    throw ConfigError("mean_counts", "must be positive");
  }
  if (!std::isfinite(drift_rate)) {
    throw ConfigError("drift_rate", "must be finite");
  }
  if (!std::isfinite(background) || background < 0.0) {
    throw ConfigError("background", "must be nonnegative");
  }
}

double mean_count_rate(const Ket8& state, const PhaseSetting& s,
                       const NoiseModel& noise, double chi_offset) {
  const PhaseSetting shifted{s.chi + chi_offset, s.alpha, s.gamma};
  const double p = joint_projection_probability(state, shifted);
  const double damped = kMeanProbability + noise.contrast * (p - kMeanProbability);
  return noise.mean_counts * damped / (2.0 * kMeanProbability) + noise.background;
}

double mean_count_rate(const PhaseSetting& s, const NoiseModel& noise,
                       double chi_offset) {
  return mean_count_rate(ghz_state(), s, noise, chi_offset);
}

std::vector<double> default_chi_grid(int count) {
  if (count <= 0) throw ContractError("default_chi_grid: count must be positive");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = 2.0 * kPi * i / count;
  return grid;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over a stream-dependent increment.
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

OscillationDataset run_scan(double alpha, double gamma,
                            std::span<const double> chi_grid,
                            const NoiseModel& noise, std::uint64_t seed,
                            const ScanOptions& options) {
  if (chi_grid.empty()) throw ContractError("run_scan: empty chi grid");
  noise.validate();

  OscillationDataset data;
  data.alpha = alpha;
  data.gamma = gamma;
  data.alpha_step = nearest_step(alpha);
  data.gamma_step = nearest_step(gamma);
  data.chi_grid.assign(chi_grid.begin(), chi_grid.end());
  data.seed = seed;
  data.noise = noise;
  data.flipper_on = options.flipper_on;
  data.counts.reserve(chi_grid.size());

  const Ket8& state = options.flipper_on ? ghz_state() : flipper_off_state();
  std::mt19937_64 rng(seed);
  for (double chi : chi_grid) {
    const double mean =
        mean_count_rate(state, {chi, alpha, gamma}, noise, options.chi_offset);
    if (options.noiseless) {
      data.counts.push_back(mean);
    } else if (mean <= 0.0) {
      data.counts.push_back(0.0);
    } else {
      std::poisson_distribution<long long> poisson(mean);
      data.counts.push_back(static_cast<double>(poisson(rng)));
    }
  }
  return data;
}

void ExperimentConfig::validate() const {
  noise.validate();
  if (contrast_by_observable) {
    for (Observable o : kObservables) {
      const double c = (*contrast_by_observable)[index_of(o)];
      if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
        throw ConfigError("contrast." + std::string(to_string(o)),
                          "must lie in [0, 1]");
      }
    }
  }
  if (n_sets < 1) throw ConfigError("n_sets", "must be at least 1");
  if (points_per_scan < 4) {
    throw ConfigError("chi_points", "must be at least 4");
  }
}

double ExperimentConfig::contrast_for(Observable o) const {
  return contrast_by_observable ? (*contrast_by_observable)[index_of(o)]
                                : noise.contrast;
}

std::size_t ExperimentRecord::dataset_count() const {
  std::size_t n = 0;
  for (const auto& set : sets) n += set.scans.size();
  return n;
}

bool ExperimentRecord::has_companions() const {
  if (sets.empty()) return false;
  for (const auto& set : sets) {
    if (set.companions.size() != set.scans.size()) return false;
  }
  return true;
}

ExperimentRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentRecord record;
  record.config = config;
  const auto grid = default_chi_grid(config.points_per_scan);

  for (int s = 0; s < config.n_sets; ++s) {
    ScanSet set;
    for (int a = 0; a < 4; ++a) {
      for (int g = 0; g < 4; ++g) {
        const int k = s * kScansPerSet + a * 4 + g;
        NoiseModel noise = config.noise;
        noise.contrast = config.contrast_for(observable_for_scan(a, g));
        const ScanOptions options{.chi_offset = config.noise.drift_rate * k,
                                  .flipper_on = true,
                                  .noiseless = config.noiseless};
        auto scan = run_scan(quarter_turns(a), quarter_turns(g), grid, noise,
                             derive_seed(config.seed, 2 * k), options);
        scan.set_index = s;
        scan.scan_index = k;
        set.scans.push_back(std::move(scan));

        if (config.companions) {
          // Flipper off: a pure path fringe carrying the same χ offset.
          NoiseModel companion_noise = config.noise;
          companion_noise.contrast = noise.contrast;
          auto companion = run_scan(
              quarter_turns(a), quarter_turns(g), grid, companion_noise,
              derive_seed(config.seed, 2 * k + 1),
              {.chi_offset = options.chi_offset,
               .flipper_on = false,
               .noiseless = config.noiseless});
          companion.set_index = s;
          companion.scan_index = k;
          set.companions.push_back(std::move(companion));
        }
      }
    }
    record.sets.push_back(std::move(set));
  }
  return record;
}

ExperimentRecord run_experiment(const NoiseModel& noise, int n_sets,
                                int points_per_scan, std::uint64_t seed) {
  ExperimentConfig config;
  config.noise = noise;
  config.n_sets = n_sets;
  config.points_per_scan = points_per_scan;
  config.seed = seed;
  return run_experiment(config);
}

}  // namespace ghzsim
