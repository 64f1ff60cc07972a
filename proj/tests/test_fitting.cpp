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

#include <gtest/gtest.h>

#include <random>

#include "ghzsim/errors.hpp"
#include "support.hpp"

using namespace ghzsim;

namespace {

std::vector<double> model_counts(const std::vector<double>& chi, double a, double b,
                                 double phi) {
  std::vector<double> out;
  for (double x : chi) out.push_back(a + b * std::cos(x + phi));
  return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

TEST(FitSinusoid, RecoversNoiselessModel) {
  const auto chi = default_chi_grid(16);
  const FitResult fit = fit_sinusoid(chi, model_counts(chi, 500.0, 350.0, 0.3));
  EXPECT_NEAR(fit.offset, 500.0, 1e-9 * 500.0);
  EXPECT_NEAR(fit.amplitude, 350.0, 1e-9 * 350.0);
  EXPECT_NEAR(fit.phase, 0.3, 1e-9);
  EXPECT_NEAR(fit.visibility, 0.7, 1e-9);
  EXPECT_NEAR(fit.chi_squared_reduced, 0.0, 1e-12);
  EXPECT_FALSE(fit.degenerate);
}

TEST(FitSinusoid, NoiselessResidualsVanishAcrossParameterSpace) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int points = 4 + static_cast<int>(u(rng) * 40);
    std::vector<double> chi;
    for (int i = 0; i < points; ++i) chi.push_back(2 * kPi * u(rng));
    const double a = 1.0 + 1e5 * u(rng);
    const double b = a * u(rng);
    const double phi = 2 * kPi * u(rng);
    const auto counts = model_counts(chi, a, b, phi);
    FitResult fit;
    try {
      fit = fit_sinusoid(chi, counts);
    } catch (const FitError&) {
      continue;  // random grids can be ill-conditioned
    }
    for (std::size_t i = 0; i < chi.size(); ++i) {
      EXPECT_LE(std::abs(intensity_at(fit, chi[i]).value - counts[i]), 1e-9 * a);
    }
  }
}

TEST(FitSinusoid, NullFringe) {
  const auto data = run_scan(0, 0, default_chi_grid(16), {0.0, 4000.0, 0.0, 0.0}, 31);
  const FitResult fit = fit_sinusoid(data);
  EXPECT_LT(fit.visibility, 0.02);
  EXPECT_LT(fit.amplitude, 3.0 * fit.amplitude_error());
}

TEST(FitSinusoid, DegenerateFlatData) {
  const auto chi = default_chi_grid(8);
  const std::vector<double> flat(8, 250.0);
  const FitResult fit = fit_sinusoid(chi, flat);
  EXPECT_TRUE(fit.degenerate);
  EXPECT_EQ(fit.amplitude, 0.0);
  EXPECT_EQ(fit.visibility, 0.0);
  EXPECT_NEAR(fit.offset, 250.0, 1e-12);
  EXPECT_TRUE(std::isinf(fit.phase_error()));
  EXPECT_GT(fit.amplitude_error(), 0.0);
}

TEST(FitSinusoid, ContractViolations) {
  const auto chi = default_chi_grid(3);
  EXPECT_THROW(fit_sinusoid(chi, std::vector<double>{1, 2, 3}), ContractError);
  const auto chi8 = default_chi_grid(8);
  EXPECT_THROW(fit_sinusoid(chi8, std::vector<double>(8, 0.0)), ContractError);
  EXPECT_THROW(fit_sinusoid(chi8, std::vector<double>(7, 1.0)), ContractError);
  std::vector<double> negative(8, 5.0);
  negative[3] = -1.0;
  EXPECT_THROW(fit_sinusoid(chi8, negative), ContractError);
}

TEST(FitSinusoid, UnresolvableGridReportsDiagnostics) {
  const std::vector<double> chi(8, 0.4);
  const std::vector<double> counts = {10, 11, 9, 10, 12, 8, 10, 10};
  try {
    fit_sinusoid(chi, counts);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    EXPECT_NE(std::string(e.what()).find("rcond"), std::string::npos);
  }
}

TEST(FitSinusoid, MonteCarloVisibilityAndCoverage) {
  const auto grid = default_chi_grid(16);
  const NoiseModel noise{0.7, 4000.0, 0.0, 0.0};
  constexpr int kTrials = 500;
  double sum = 0, sum2 = 0;
  int covered = 0;
  for (int t = 0; t < kTrials; ++t) {
    const FitResult fit = fit_sinusoid(run_scan(0.0, 0.0, grid, noise, derive_seed(77, t)));
    sum += fit.visibility;
    sum2 += fit.visibility * fit.visibility;
    if (std::abs(fit.visibility - 0.7) <= fit.visibility_error()) ++covered;
  }
  const double mean = sum / kTrials;
  const double sd = std::sqrt(sum2 / kTrials - mean * mean);
  EXPECT_LE(std::abs(mean - 0.7), 3.0 * sd / std::sqrt(kTrials));
  const double coverage = covered / static_cast<double>(kTrials);
  EXPECT_GE(coverage, 0.62);
  EXPECT_LE(coverage, 0.75);
}

TEST(FitSinusoid, ErrorsScaleAsInverseRootCounts) {
  const auto grid = default_chi_grid(16);
  const std::vector<double> n0 = {1e2, 1e3, 1e4, 1e5};
  std::vector<double> empirical, reported;
  for (double n : n0) {
    double sum = 0, sum2 = 0, err = 0;
    constexpr int kTrials = 400;
    for (int t = 0; t < kTrials; ++t) {
      const FitResult fit = fit_sinusoid(
          run_scan(0.0, 0.0, grid, {0.7, n, 0.0, 0.0}, derive_seed(static_cast<std::uint64_t>(n), t)));
      sum += fit.visibility;
      sum2 += fit.visibility * fit.visibility;
      err += fit.visibility_error();
    }
    const double mean = sum / kTrials;
    empirical.push_back(std::sqrt(sum2 / kTrials - mean * mean));
    reported.push_back(err / kTrials);
  }
  EXPECT_NEAR(log_log_slope(n0, empirical), -0.5, 0.05);
  EXPECT_NEAR(log_log_slope(n0, reported), -0.5, 0.05);
}

TEST(IntensityAt, Examples) {
  FitResult flat;
  flat.offset = 100.0;
  flat.linear_covariance = Eigen::Vector3d(4.0, 0.0, 0.0).asDiagonal();
  flat.covariance = flat.linear_covariance;
  for (double chi : {0.0, 1.0, 4.0}) {
    const Intensity i = intensity_at(flat, chi);
    EXPECT_DOUBLE_EQ(i.value, 100.0);
    EXPECT_DOUBLE_EQ(i.std_error, flat.offset_error());
  }
  FitResult fringe;
  fringe.offset = 100.0;
  fringe.amplitude = 70.0;
  fringe.phase = 0.0;
  EXPECT_DOUBLE_EQ(intensity_at(fringe, 0.0).value, 170.0);
}

TEST(IntensityAt, ErrorMatchesDirectPropagationFromData) {
  // The fitted intensity is linear in the counts; propagate Var(yᵢ) = 1/wᵢ
  // through finite differences of the fit itself.
  // Noiseless data: zero residuals, so the count-dependent weights do not feed
  // back into the first-order response.
  const auto data = run_scan(0.0, 0.0, default_chi_grid(16), {0.7, 4000.0, 0.0, 0.0}, 5,
                             {.noiseless = true});
  const FitResult fit = fit_sinusoid(data);
  for (double chi : {0.0, 0.8, kPi / 2, kPi}) {
    double var = 0.0;
    for (std::size_t i = 0; i < data.counts.size(); ++i) {
      auto bumped = data.counts;
      const double h = 1e-3;
      bumped[i] += h;
      const double up = intensity_at(fit_sinusoid(data.chi_grid, bumped), chi).value;
      const double base = intensity_at(fit, chi).value;
      const double d = (up - base) / h;
      var += d * d * std::max(data.counts[i], 1.0);
    }
    EXPECT_NEAR(intensity_at(fit, chi).std_error, std::sqrt(var),
                1e-3 * std::sqrt(var));
  }
}

TEST(IntensityAt, ExtremaInsensitiveToPhaseError) {
  const auto data = run_scan(0.0, 0.0, default_chi_grid(16), {0.7, 4000.0, 0.0, 0.0}, 6,
                             {.noiseless = true});
  const FitResult fit = fit_sinusoid(data);
  const auto phase_part = [&](double chi) {
    return std::abs(fit.amplitude * std::sin(chi + fit.phase)) * fit.phase_error();
  };
  const double maximum = -fit.phase, minimum = kPi - fit.phase;
  const double steep1 = kPi / 2 - fit.phase, steep2 = -kPi / 2 - fit.phase;
  EXPECT_NEAR(phase_part(maximum), 0.0, 1e-9);
  EXPECT_NEAR(phase_part(minimum), 0.0, 1e-9);
  EXPECT_NEAR(phase_part(steep1), fit.amplitude * fit.phase_error(), 1e-9);

  // Total error at the dark fringe stays below the steep-slope error. At the
  // bright fringe Poisson weighting makes the offset term dominate instead.
  const double steep = std::min(intensity_at(fit, steep1).std_error,
                                intensity_at(fit, steep2).std_error);
  EXPECT_LE(intensity_at(fit, minimum).std_error, steep);
}

TEST(CorrectDrift, DriftFreeCorrectionsAreNull) {
  const auto record = run_experiment({0.7, 4000.0, 0.0, 0.0}, 2, 16, 300);
  const DriftEstimate est = estimate_drift(record);
  ASSERT_TRUE(est.available);
  for (std::size_t i = 0; i < est.offsets.size(); ++i) {
    EXPECT_LE(std::abs(est.offsets[i]), 3.0 * est.errors[i]) << i;
  }
  EXPECT_LE(std::abs(est.slope), 3.0 * est.slope_error);
}

TEST(CorrectDrift, RecoversInjectedLinearDrift) {
  const auto record = run_experiment({0.7, 4000.0, 0.02, 0.0}, 4, 16, 301);
  const DriftEstimate est = estimate_drift(record);
  ASSERT_TRUE(est.available);
  EXPECT_LE(std::abs(est.slope - 0.02), 3.0 * est.slope_error);
  EXPECT_LE(std::abs(est.intercept), 3.0 * std::max(est.errors.front(), 1e-12) + 0.01);
}

TEST(CorrectDrift, SecondPassFindsNothing) {
  const auto record = run_experiment({0.7, 4000.0, 0.02, 0.0}, 2, 16, 302);
  const auto once = correct_drift(record);
  EXPECT_TRUE(once.drift_corrected);
  const DriftEstimate again = estimate_drift(once);
  ASSERT_TRUE(again.available);
  for (std::size_t i = 0; i < again.offsets.size(); ++i) {
    EXPECT_LE(std::abs(again.offsets[i]), 3.0 * again.errors[i]);
  }
}

TEST(CorrectDrift, LargeAccumulatedDriftIsUnwrapped) {
  ExperimentConfig config;
  config.noise = {0.9, 1000.0, 0.15, 0.0};
  config.n_sets = 4;
  config.noiseless = true;
  const DriftEstimate est = estimate_drift(run_experiment(config));
  ASSERT_TRUE(est.available);
  EXPECT_NEAR(est.offsets.back(), 0.15 * 63, 1e-9);
  EXPECT_NEAR(est.slope, 0.15, 1e-9);
}

TEST(CorrectDrift, MissingCompanionsIsNoOpWithWarning) {
  ExperimentConfig config;
  config.companions = false;
  config.n_sets = 1;
  const auto record = run_experiment(config);
  const auto out = correct_drift(record);
  EXPECT_FALSE(out.drift_corrected);
  ASSERT_EQ(out.warnings.size(), 1u);
  EXPECT_EQ(out.sets, record.sets);
}
