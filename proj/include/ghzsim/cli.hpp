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
#include <iosfwd>

namespace ghzsim::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,  // bad arguments or configuration
  kDataError = 2,   // unreadable or inconsistent data
};

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  bool noiseless = false;
};

/// Runs the protocol and writes one CSV per scan plus manifest.json. The
/// GHZSIM_SEED environment variable, when set, overrides the config seed.
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

struct AnalyzeArgs {
  std::filesystem::path manifest;
  std::filesystem::path out;
  bool drift_correction = true;
};

/// Writes results.json, table.txt and fringes/*.csv into `out`, and prints
/// the table.
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

struct BoundsArgs {
  bool json = false;
};

int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err);

}  // namespace ghzsim::cli
