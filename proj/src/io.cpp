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

#include "ghzsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCsvHeader = "chi_rad,counts";
constexpr const char* kManifestFormat = "ghzsim-manifest";
constexpr int kManifestVersion = 1;

double number_field(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "must be a number");
  return j.get<double>();
}

int integer_field(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError(key, "must be an integer");
  const auto value = j.get<std::int64_t>();
  if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
    throw ConfigError(key, "out of range");
  }
  return static_cast<int>(value);
}

bool bool_field(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError(key, "must be true or false");
  return j.get<bool>();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("{}: cannot write file", path.string()));
  out << content;
  if (!out) throw DataError(fmt::format("{}: write failed", path.string()));
}

double parse_double(std::string_view text, const fs::path& path, int line) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DataError(fmt::format("{}:{}: cannot parse number '{}'",
                                path.string(), line, text));
  }
  return value;
}

json noise_to_json(const NoiseModel& noise) {
  return {{"contrast", noise.contrast},
          {"mean_counts", noise.mean_counts},
          {"drift_rate", noise.drift_rate},
          {"background", noise.background}};
}

NoiseModel noise_from_json(const json& j) {
  NoiseModel noise;
  noise.contrast = j.at("contrast").get<double>();
  noise.mean_counts = j.at("mean_counts").get<double>();
  noise.drift_rate = j.at("drift_rate").get<double>();
  noise.background = j.at("background").get<double>();
  return noise;
}

json dataset_entry(const OscillationDataset& data) {
  return {{"file", scan_file_name(data)},
          {"set", data.set_index},
          {"scan_index", data.scan_index},
          {"alpha", data.alpha},
          {"gamma", data.gamma},
          {"alpha_step", data.alpha_step},
          {"gamma_step", data.gamma_step},
          {"seed", data.seed},
          {"flipper_on", data.flipper_on},
          {"points", data.chi_grid.size()},
          {"noise", noise_to_json(data.noise)}};
}

OscillationDataset dataset_from_entry(const json& entry, const fs::path& dir) {
  const fs::path file = dir / entry.at("file").get<std::string>();
  OscillationDataset data;
  data.set_index = entry.at("set").get<int>();
  data.scan_index = entry.at("scan_index").get<int>();
  data.alpha = entry.at("alpha").get<double>();
  data.gamma = entry.at("gamma").get<double>();
  data.alpha_step = entry.at("alpha_step").get<int>();
  data.gamma_step = entry.at("gamma_step").get<int>();
  data.seed = entry.at("seed").get<std::uint64_t>();
  data.flipper_on = entry.at("flipper_on").get<bool>();
  data.noise = noise_from_json(entry.at("noise"));
  auto columns = read_scan_csv(file);
  const auto expected = entry.at("points").get<std::size_t>();
  if (columns.chi.size() != expected) {
    throw DataError(fmt::format("{}: {} rows, manifest says {}", file.string(),
                                columns.chi.size(), expected));
  }
  data.chi_grid = std::move(columns.chi);
  data.counts = std::move(columns.counts);
  return data;
}

std::string signed_fixed(double v) { return fmt::format("{:+.4f}", v); }

}  // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "must be a JSON object");
  RunConfig config;
  auto& exp = config.experiment;
  for (const auto& [key, value] : j.items()) {
    if (key == "contrast") {
      if (value.is_object()) {
        std::array<double, 4> map{};
        std::set<std::string> seen;
        for (const auto& [name, c] : value.items()) {
          const auto o = parse_observable(name);
          if (!o) {
            throw ConfigError("contrast." + name,
                              "unknown observable (expected xxx, xyy, yxy, yyx)");
          }
          map[index_of(*o)] = number_field(c, "contrast." + name);
          seen.insert(name);
        }
        if (seen.size() != 4) {
          throw ConfigError("contrast",
                            "per-observable map must cover xxx, xyy, yxy, yyx");
        }
        exp.contrast_by_observable = map;
      } else {
        exp.noise.contrast = number_field(value, key);
      }
    } else if (key == "mean_counts") {
      exp.noise.mean_counts = number_field(value, key);
    } else if (key == "chi_points") {
      exp.points_per_scan = integer_field(value, key);
    } else if (key == "n_sets") {
      exp.n_sets = integer_field(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned() &&
          !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw ConfigError(key, "must be a nonnegative 64-bit integer");
      }
      exp.seed = value.get<std::uint64_t>();
    } else if (key == "drift_rate") {
      exp.noise.drift_rate = number_field(value, key);
    } else if (key == "background") {
      exp.noise.background = number_field(value, key);
    } else if (key == "significance_k") {
      config.significance_k = number_field(value, key);
      if (!(config.significance_k > 0.0) || !std::isfinite(config.significance_k)) {
        throw ConfigError(key, "must be positive");
      }
    } else if (key == "noiseless") {
      exp.noiseless = bool_field(value, key);
    } else if (key == "companions") {
      exp.companions = bool_field(value, key);
    } else {
      throw ConfigError(key, "unknown configuration key");
    }
  }
  exp.validate();
  return config;
}

json config_to_json(const RunConfig& config) {
  const auto& exp = config.experiment;
  json j;
  if (exp.contrast_by_observable) {
    json map = json::object();
    for (Observable o : kObservables) {
      map[std::string(to_string(o))] = (*exp.contrast_by_observable)[index_of(o)];
    }
    j["contrast"] = map;
  } else {
    j["contrast"] = exp.noise.contrast;
  }
  j["mean_counts"] = exp.noise.mean_counts;
  j["chi_points"] = exp.points_per_scan;
  j["n_sets"] = exp.n_sets;
  j["seed"] = exp.seed;
  j["drift_rate"] = exp.noise.drift_rate;
  j["background"] = exp.noise.background;
  j["significance_k"] = config.significance_k;
  j["noiseless"] = exp.noiseless;
  j["companions"] = exp.companions;
  return j;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", fmt::format("cannot open {}", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config", fmt::format("{}: invalid JSON ({})", path.string(), e.what()));
  }
  return config_from_json(j);
}

std::string scan_csv(const OscillationDataset& data) {
  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < data.chi_grid.size(); ++i) {
    out += fmt::format("{},{}\n", data.chi_grid[i], data.counts[i]);
  }
  return out;
}

void write_scan_csv(const fs::path& path, const OscillationDataset& data) {
  write_file(path, scan_csv(data));
}

ScanColumns read_scan_csv(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DataError(fmt::format("{}: missing '{}' header", path.string(), kCsvHeader));
  }
  ScanColumns columns;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DataError(fmt::format("{}:{}: expected two columns", path.string(), line_no));
    }
    const std::string_view view(line);
    const double chi = parse_double(view.substr(0, comma), path, line_no);
    const double counts = parse_double(view.substr(comma + 1), path, line_no);
    if (!std::isfinite(chi) || !std::isfinite(counts) || counts < 0.0) {
      throw DataError(fmt::format("{}:{}: invalid values", path.string(), line_no));
    }
    columns.chi.push_back(chi);
    columns.counts.push_back(counts);
  }
  if (columns.chi.empty()) throw DataError(fmt::format("{}: no data rows", path.string()));
  return columns;
}

std::string scan_file_name(const OscillationDataset& data) {
  return fmt::format("set{}_alpha{}_gamma{}{}.csv", data.set_index, data.alpha_step,
                     data.gamma_step, data.flipper_on ? "" : "_flipoff");
}

fs::path write_record(const ExperimentRecord& record, const RunConfig& config,
                      const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(fmt::format("{}: cannot create directory ({})", dir.string(), ec.message()));

  json manifest;
  manifest["format"] = kManifestFormat;
  manifest["version"] = kManifestVersion;
  manifest["config"] = config_to_json(config);
  manifest["scans"] = json::array();
  manifest["companions"] = json::array();
  for (const auto& set : record.sets) {
    for (const auto& scan : set.scans) {
      write_scan_csv(dir / scan_file_name(scan), scan);
      manifest["scans"].push_back(dataset_entry(scan));
    }
    for (const auto& companion : set.companions) {
      write_scan_csv(dir / scan_file_name(companion), companion);
      manifest["companions"].push_back(dataset_entry(companion));
    }
  }
  const fs::path path = dir / "manifest.json";
  write_file(path, manifest.dump(2) + "\n");
  return path;
}

LoadedRecord read_record(const fs::path& manifest_path) {
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: invalid JSON ({})", manifest_path.string(), e.what()));
  }

  LoadedRecord loaded;
  try {
    if (manifest.value("format", "") != kManifestFormat) {
      throw DataError(fmt::format("{}: not a ghzsim manifest", manifest_path.string()));
    }
    loaded.config = config_from_json(manifest.at("config"));
  } catch (const ConfigError& e) {
    throw DataError(fmt::format("{}: bad config ({})", manifest_path.string(), e.what()));
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }

  const fs::path dir = manifest_path.parent_path();
  auto& record = loaded.record;
  record.config = loaded.config.experiment;
  record.sets.resize(static_cast<std::size_t>(record.config.n_sets));

  const auto load_list = [&](const char* key, bool companions) {
    for (const auto& entry : manifest.at(key)) {
      OscillationDataset data;
      try {
        data = dataset_from_entry(entry, dir);
      } catch (const json::exception& e) {
        throw DataError(fmt::format("{}: bad {} entry ({})", manifest_path.string(), key, e.what()));
      }
      if (data.set_index < 0 || data.set_index >= record.config.n_sets) {
        throw DataError(fmt::format("{}: set index {} out of range",
                                    (dir / scan_file_name(data)).string(), data.set_index));
      }
      auto& set = record.sets[static_cast<std::size_t>(data.set_index)];
      (companions ? set.companions : set.scans).push_back(std::move(data));
    }
  };
  try {
    load_list("scans", false);
    load_list("companions", true);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }

  for (std::size_t s = 0; s < record.sets.size(); ++s) {
    const auto& set = record.sets[s];
    if (set.scans.size() != kScansPerSet) {
      throw DataError(fmt::format("{}: set {} lists {} scans, expected {}",
                                  manifest_path.string(), s, set.scans.size(), kScansPerSet));
    }
    if (!set.companions.empty() && set.companions.size() != kScansPerSet) {
      throw DataError(fmt::format("{}: set {} lists {} companion scans",
                                  manifest_path.string(), s, set.companions.size()));
    }
  }
  return loaded;
}

json result_to_json(const MerminResult& result) {
  json expectations = json::array();
  for (const auto& e : result.expectations) {
    expectations.push_back({{"observable", std::string(to_string(e.observable))},
                            {"value", e.value},
                            {"std_error", e.std_error}});
  }
  return {{"expectations", expectations},
          {"M", result.M},
          {"sigma_M", result.sigma_M},
          {"sigma_M_stat", result.sigma_M_stat},
          {"sigma_M_sys", result.sigma_M_sys},
          {"nchv_bound", result.nchv_bound},
          {"quantum_bound", result.quantum_bound},
          {"significance_k", result.significance_k},
          {"violates", result.violates_nchv}};
}

json report_to_json(const AnalysisReport& report) {
  json j = result_to_json(report.combined);
  json per_set = json::array();
  for (const auto& r : report.per_set) per_set.push_back(result_to_json(r));
  j["per_set"] = per_set;
  j["drift"] = {{"corrected", report.analyzed.drift_corrected},
                {"slope", report.drift.slope},
                {"slope_error", report.drift.slope_error},
                {"residual_rms", report.drift.residual_rms}};
  j["warnings"] = report.warnings;
  return j;
}

std::string format_table(const MerminResult& result) {
  const auto lines = [](Axis a) { return a == Axis::x ? "0,pi" : "pi/2,3pi/2"; };
  std::string out = fmt::format("{:<12} {:<11} {:<11} {:<11} {:>18}\n",
                                "observable", "chi", "alpha", "gamma", "value");
  for (const auto& e : result.expectations) {
    const auto axes = axes_of(e.observable);
    const std::string name = fmt::format(
        "p{} s{} e{}", axes.path == Axis::x ? 'x' : 'y',
        axes.spin == Axis::x ? 'x' : 'y', axes.energy == Axis::x ? 'x' : 'y');
    out += fmt::format("{:<12} {:<11} {:<11} {:<11} {:>9} +/- {:.4f}\n", name,
                       lines(axes.path), lines(axes.spin), lines(axes.energy),
                       signed_fixed(e.value), e.std_error);
  }
  out += fmt::format("M = {:.4f} +/- {:.4f}  (noncontextual bound {}, quantum bound {})\n",
                     result.M, result.sigma_M, result.nchv_bound, result.quantum_bound);
  const double excess = result.sigma_M > 0.0
                            ? (result.M - result.nchv_bound) / result.sigma_M
                            : std::numeric_limits<double>::infinity();
  out += fmt::format("verdict: {} (M - 2 = {:.1f} sigma, threshold {} sigma)\n",
                     result.violates_nchv ? "violates the noncontextual bound"
                                          : "no significant violation",
                     excess, result.significance_k);
  return out;
}

json bounds_to_json(const NchvBoundResult& nchv, const QuantumBoundResult& quantum) {
  json maximizers = json::array();
  for (const auto& a : nchv.maximizers) {
    maximizers.push_back({{"path", {a.path[0], a.path[1]}},
                          {"spin", {a.spin[0], a.spin[1]}},
                          {"energy", {a.energy[0], a.energy[1]}}});
  }
  return {{"nchv_max", nchv.max_M},
          {"assignments_checked", nchv.assignments_checked},
          {"maximizing_assignments", maximizers},
          {"quantum_max", quantum.max_eigenvalue},
          {"quantum_min", quantum.min_eigenvalue},
          {"ghz_fidelity", fidelity(quantum.eigenstate, ghz_reference())}};
}

std::string fringe_csv(const OscillationDataset& data, const FitResult& fit) {
  std::string out = "chi_rad,counts,fit\n";
  for (std::size_t i = 0; i < data.chi_grid.size(); ++i) {
    out += fmt::format("{},{},{}\n", data.chi_grid[i], data.counts[i],
                       intensity_at(fit, data.chi_grid[i]).value);
  }
  return out;
}

}  // namespace ghzsim
