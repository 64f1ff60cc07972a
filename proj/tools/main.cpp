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

#include <iostream>

#include "CLI11.hpp"

#include "ghzsim/cli.hpp"

int main(int argc, char** argv) {
  using namespace ghzsim::cli;

  CLI::App app{"Single-neutron GHZ interferometry simulator and Mermin analysis"};
  app.require_subcommand(1);

  SimulateArgs simulate;
  auto* sim = app.add_subcommand("simulate", "Generate scan CSVs and a manifest");
  sim->add_option("--config", simulate.config, "Configuration JSON")->required();
  sim->add_option("--out", simulate.out, "Output directory")->required();
  sim->add_flag("--noiseless", simulate.noiseless,
                "Record exact mean counts instead of Poisson samples");

  AnalyzeArgs analyze;
  bool no_drift = false;
  auto* ana = app.add_subcommand("analyze", "Fit scans and evaluate the inequality");
  ana->add_option("--manifest", analyze.manifest, "manifest.json from simulate")->required();
  ana->add_option("--out", analyze.out, "Output directory")->required();
  ana->add_flag("--no-drift-correction", no_drift, "Skip companion-based chi correction");

  BoundsArgs bounds;
  auto* bnd = app.add_subcommand("bounds", "Evaluate the noncontextual and quantum bounds");
  bnd->add_flag("--json", bounds.json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (sim->parsed()) return cmd_simulate(simulate, std::cout, std::cerr);
  if (ana->parsed()) {
    analyze.drift_correction = !no_drift;
    return cmd_analyze(analyze, std::cout, std::cerr);
  }
  return cmd_bounds(bounds, std::cout, std::cerr);
}
