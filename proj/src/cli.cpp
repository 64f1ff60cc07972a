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

#include "ghzsim/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

#include "ghzsim/analysis.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/io.hpp"

namespace ghzsim::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSeedEnv = "GHZSIM_SEED";

void apply_seed_override(RunConfig& config) {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr) return;
  const std::string_view text(raw);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(kSeedEnv, fmt::format("'{}' is not a 64-bit unsigned integer", text));
  }
  config.experiment.seed = seed;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError(fmt::format("{}: cannot write file", path.string()));
  file << text;
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(args.config);
    apply_seed_override(config);
    if (args.noiseless) config.experiment.noiseless = true;
    config.experiment.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const ExperimentRecord record = run_experiment(config.experiment);
    const fs::path manifest = write_record(record, config, args.out);
    out << fmt::format("wrote {} scans ({} sets, {} points each{}) to {}\n",
                       record.dataset_count(), config.experiment.n_sets,
                       config.experiment.points_per_scan,
                       record.has_companions() ? ", with flipper-off companions" : "",
                       manifest.string());
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const LoadedRecord loaded = read_record(args.manifest);
    const AnalysisReport report =
        analyze(loaded.record, {.drift_correction = args.drift_correction,
                                .significance_k = loaded.config.significance_k});

    std::error_code ec;
    fs::create_directories(args.out / "fringes", ec);
    if (ec) {
      throw DataError(fmt::format("{}: cannot create directory ({})",
                                  args.out.string(), ec.message()));
    }
    const std::string table = format_table(report.combined);
    write_text(args.out / "results.json", report_to_json(report).dump(2) + "\n");
    write_text(args.out / "table.txt", table);

    std::size_t fit_index = 0;
    for (const auto& set : report.analyzed.sets) {
      for (const auto& scan : set.scans) {
        const auto& fit = report.fits.at(fit_index++).fit;
        write_text(args.out / "fringes" / ("fringe_" + scan_file_name(scan)),
                   fringe_csv(scan, fit));
      }
    }

    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    out << table;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kDataError;
  } catch (const ContractError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const UndefinedExpectationError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream&) {
  const auto nchv = nchv_bound_oracle();
  const auto quantum = quantum_bound_oracle();
  if (args.json) {
    out << bounds_to_json(nchv, quantum).dump(2) << '\n';
    return kSuccess;
  }
  out << fmt::format("noncontextual maximum: {} ({} assignments, {} maximizers)\n",
                     nchv.max_M, nchv.assignments_checked, nchv.maximizers.size());
  out << fmt::format("quantum maximum:       {:.12f} (minimum {:.12f})\n",
                     quantum.max_eigenvalue, quantum.min_eigenvalue);
  out << fmt::format("eigenstate fidelity with GHZ: {:.12f}\n",
                     fidelity(quantum.eigenstate, ghz_reference()));
  return kSuccess;
}

}  // namespace ghzsim::cli
