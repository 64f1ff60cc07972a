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

#include <gtest/gtest.h>

#include <set>

#include "ghzsim/analysis.hpp"
#include "ghzsim/errors.hpp"
#include "support.hpp"

using namespace ghzsim;

namespace {

ExpectationEstimate estimate(Observable o, double v, double e = 0.002) {
  ExpectationEstimate out;
  out.observable = o;
  out.value = v;
  out.std_error = e;
  return out;
}

std::array<ExpectationEstimate, 4> table(double xxx, double xyy, double yxy, double yyx) {
  return {estimate(Observable::xxx, xxx), estimate(Observable::xyy, xyy),
          estimate(Observable::yxy, yxy), estimate(Observable::yyx, yyx)};
}

double axis_base(Axis a) { return a == Axis::x ? 0.0 : kPi / 2; }

}  // namespace

TEST(Settings, FollowAxisPatternOfEachCorrelator) {
  for (Observable o : kObservables) {
    const auto axes = axes_of(o);
    const auto settings = settings_for(o);
    int positive = 0;
    for (const auto& s : settings) {
      const PhaseSetting p = s.phases();
      EXPECT_TRUE(p.chi == axis_base(axes.path) || p.chi == axis_base(axes.path) + kPi);
      EXPECT_TRUE(p.alpha == axis_base(axes.spin) || p.alpha == axis_base(axes.spin) + kPi);
      EXPECT_TRUE(p.gamma == axis_base(axes.energy) || p.gamma == axis_base(axes.energy) + kPi);
      positive += s.sign > 0;
    }
    EXPECT_EQ(positive, 4);
  }
}

TEST(Settings, ScanToObservableMapUsesEachScanOnce) {
  std::array<int, 4> uses{};
  for (int a = 0; a < 4; ++a)
    for (int g = 0; g < 4; ++g) ++uses[index_of(observable_for_scan(a, g))];
  for (int n : uses) EXPECT_EQ(n, 4);
  for (Observable o : kObservables) {
    for (const auto& s : settings_for(o)) {
      EXPECT_EQ(observable_for_scan(s.alpha_step, s.gamma_step), o);
    }
  }
}

TEST(ExpectationFromCounts, Examples) {
  const std::array<double, 8> equal = {5, 5, 5, 5, 5, 5, 5, 5};
  const std::array<double, 8> errors = {1, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(expectation_from_counts(Observable::xxx, equal, errors).value, 0.0);

  const auto settings = settings_for(Observable::xyy);
  std::array<double, 8> perfect{};
  for (int i = 0; i < 8; ++i) perfect[i] = settings[i].sign > 0 ? 100.0 : 0.0;
  const auto est = expectation_from_counts(Observable::xyy, perfect, errors);
  EXPECT_DOUBLE_EQ(est.value, 1.0);
  EXPECT_EQ(est.settings[0], settings[0].phases());
}

TEST(ExpectationFromCounts, ErrorPropagationMatchesFiniteDifferences) {
  const std::array<double, 8> counts = {820, 180, 170, 830, 160, 840, 810, 190};
  const std::array<double, 8> errors = {28, 13, 13, 29, 12, 29, 28, 14};
  const auto est = expectation_from_counts(Observable::xxx, counts, errors);
  double var = 0.0;
  for (int i = 0; i < 8; ++i) {
    auto bumped = counts;
    bumped[i] += 1e-4;
    const double d =
        (expectation_from_counts(Observable::xxx, bumped, errors).value - est.value) / 1e-4;
    var += d * d * errors[i] * errors[i];
  }
  EXPECT_NEAR(est.std_error, std::sqrt(var), 1e-6);
}

TEST(ExpectationFromCounts, ZeroTotalIsUndefined) {
  const std::array<double, 8> zeros{};
  EXPECT_THROW(expectation_from_counts(Observable::xxx, zeros, zeros),
               UndefinedExpectationError);
  std::array<double, 8> negative{};
  negative[0] = -1;
  EXPECT_THROW(expectation_from_counts(Observable::xxx, negative, zeros), ContractError);
}

TEST(ExpectationFromCounts, LowContrastCorrelatorFromSimulatedScans) {
  // Only the xyy scans matter here; give them C = 0.603.
  ExperimentConfig config;
  config.contrast_by_observable = std::array<double, 4>{1.0, 0.603, 1.0, 1.0};
  config.noise.mean_counts = 3000;
  config.n_sets = 1;
  config.noiseless = true;
  const auto exact = analyze_set(run_experiment(config).sets[0]);
  EXPECT_NEAR(exact.expectation(Observable::xyy).value, -0.603, 1e-9);

  config.noiseless = false;
  config.seed = 17;
  const auto noisy = analyze_set(run_experiment(config).sets[0]);
  const auto& e = noisy.expectation(Observable::xyy);
  EXPECT_LE(std::abs(e.value + 0.603), 3.0 * e.std_error);
}

TEST(MerminM, Examples) {
  EXPECT_NEAR(mermin_M(table(0.659, -0.603, -0.632, -0.664)).M, 2.558, 1e-12);
  EXPECT_DOUBLE_EQ(mermin_M(table(1, -1, -1, -1)).M, 4.0);
  EXPECT_DOUBLE_EQ(mermin_M(table(0, 0, 0, 0)).M, 0.0);
}

TEST(MerminM, PropagatesErrorsAndVerdict) {
  const auto r = mermin_M(table(0.659, -0.603, -0.632, -0.664));
  EXPECT_NEAR(r.sigma_M, 0.004, 1e-12);
  EXPECT_EQ(r.nchv_bound, 2.0);
  EXPECT_EQ(r.quantum_bound, 4.0);
  EXPECT_TRUE(r.violates_nchv);

  const auto weak = mermin_M(table(0.51, -0.5, -0.5, -0.5), 3.0);
  EXPECT_FALSE(weak.violates_nchv);  // 2.01 − 2 < 3·0.004
  const auto sys = with_systematic(r, 0.003);
  EXPECT_NEAR(sys.sigma_M, 0.005, 1e-12);
}

TEST(MerminM, RejectsMissingOrDuplicateObservables) {
  auto entries = table(1, -1, -1, -1);
  entries[3].observable = Observable::xxx;
  EXPECT_THROW(mermin_M(entries), ContractError);
  EXPECT_THROW(mermin_M(std::span(entries).first(3)), ContractError);
}

TEST(WeightedAverage, Examples) {
  const std::vector<Measurement> same(4, {0.66, 0.004});
  const Measurement four = weighted_average(same);
  EXPECT_NEAR(four.value, 0.66, 1e-15);
  EXPECT_NEAR(four.std_error, 0.002, 1e-15);

  const std::vector<Measurement> two = {{1.0, 0.1}, {3.0, 0.1}};
  const Measurement combined = weighted_average(two);
  EXPECT_NEAR(combined.value, 2.0, 1e-15);
  EXPECT_NEAR(combined.std_error, 0.1 / std::sqrt(2.0), 1e-15);

  const std::vector<Measurement> one = {{0.3, 0.05}};
  EXPECT_EQ(weighted_average(one).value, 0.3);
  EXPECT_EQ(weighted_average(one).std_error, 0.05);
}

TEST(WeightedAverage, RejectsNonPositiveErrors) {
  const std::vector<Measurement> zero = {{1.0, 0.0}};
  EXPECT_THROW(weighted_average(zero), ContractError);
  EXPECT_THROW(weighted_average(std::vector<Measurement>{}), ContractError);
  const std::vector<ExpectationEstimate> mixed = {estimate(Observable::xxx, 1),
                                                  estimate(Observable::xyy, 1)};
  EXPECT_THROW(weighted_average(mixed), ContractError);
}

TEST(WeightedAverage, MerminResultsHalveErrorOverFourSets) {
  const auto r = mermin_M(table(0.659, -0.603, -0.632, -0.664));
  const std::vector<MerminResult> sets(4, r);
  const auto combined = weighted_average(sets);
  EXPECT_NEAR(combined.M, r.M, 1e-12);
  EXPECT_NEAR(combined.sigma_M, r.sigma_M / 2, 1e-15);
}

TEST(NchvOracle, ExhaustiveMaximumIsTwo) {
  const auto result = nchv_bound_oracle();
  EXPECT_EQ(result.assignments_checked, 64);
  EXPECT_EQ(result.values.size(), 64u);
  EXPECT_EQ(result.max_M, 2);
  for (int m : result.values) {
    EXPECT_TRUE(m == -4 || m == -2 || m == 0 || m == 2 || m == 4) << m;
    EXPECT_NE(m, 4);
  }
  for (const auto& a : result.maximizers) EXPECT_EQ(a.mermin_value(), 2);

  const HiddenAssignment all_up{{1, 1}, {1, 1}, {1, 1}};
  EXPECT_EQ(all_up.mermin_value(), -2);
}

TEST(QuantumOracle, SpectrumAndGhzEigenstate) {
  const auto result = quantum_bound_oracle();
  EXPECT_NEAR(result.max_eigenvalue, 4.0, 1e-10);
  EXPECT_NEAR(result.min_eigenvalue, -4.0, 1e-10);
  EXPECT_GE(fidelity(result.eigenstate, ghz_reference()), 1.0 - 1e-10);
}

TEST(QuantumOracle, GhzExpectationByDirectProduct) {
  using ghzsim::testing::kron3;
  const Operator2 x = pauli(Axis::x), y = pauli(Axis::y);
  // kron3 order is (spin, path, energy).
  const Operator8 m = kron3(x, x, x) - kron3(y, x, y) - kron3(x, y, y) - kron3(y, y, x);
  EXPECT_LE(ghzsim::testing::max_abs(m - mermin_operator()), 1e-15);
  const Ket8 ghz = ghz_reference();
  EXPECT_NEAR(ghz.dot(m * ghz).real(), 4.0, 1e-12);
}

TEST(Pipeline, MerminIsFourTimesContrast) {
  for (double c : {0.0, 0.25, 0.6395, 0.9, 1.0}) {
    ExperimentConfig config;
    config.noise = {c, 2000.0, 0.0, 0.0};
    config.n_sets = 1;
    config.noiseless = true;
    const auto report = analyze(run_experiment(config));
    EXPECT_NEAR(report.combined.M, 4.0 * c, 1e-9) << c;
    EXPECT_LE(report.combined.M, 4.0 + 1e-12);
    for (const auto& e : report.combined.expectations) EXPECT_LE(std::abs(e.value), 1.0 + 1e-12);
  }
}

TEST(Pipeline, IdealSignPattern) {
  ExperimentConfig config;
  config.n_sets = 1;
  config.noiseless = true;
  const auto r = analyze(run_experiment(config)).combined;
  EXPECT_NEAR(r.expectation(Observable::xxx).value, 1.0, 1e-9);
  EXPECT_NEAR(r.expectation(Observable::xyy).value, -1.0, 1e-9);
  EXPECT_NEAR(r.expectation(Observable::yxy).value, -1.0, 1e-9);
  EXPECT_NEAR(r.expectation(Observable::yyx).value, -1.0, 1e-9);
}
