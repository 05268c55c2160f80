// Copyright 2026 The Plaquette Authors
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

// Experiment orchestration: raw, readout-mitigated and readout+ZNE estimates
// of gauge-model observables with an exact reference, plus CSV/SVG output.

#ifndef PLAQUETTE_HARNESS_HPP
#define PLAQUETTE_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "plaquette/circuit.hpp"
#include "plaquette/mitigation.hpp"
#include "plaquette/models.hpp"
#include "plaquette/simulator.hpp"

namespace plaquette {

enum class ObservableKind { kLoschmidt, kGauss, kGaussSqSum, kWinding };

/// One of "loschmidt:<label>", "gauss:<site>", "gauss_sq_sum",
/// "winding:<x|y|y13|y56>".
struct ObservableSpec {
  ObservableKind kind = ObservableKind::kLoschmidt;
  std::string argument;

  static ObservableSpec parse(std::string_view text);
  std::string name() const;
  bool is_probability() const { return kind == ObservableKind::kLoschmidt; }
};

struct ExperimentConfig {
  GaugeGroup model = GaugeGroup::kZ2;
  GeometryKind geometry = GeometryKind::kSquare1;
  double g = 1.0;
  Convention convention = Convention::kPauli;
  std::vector<double> times;
  std::uint64_t shots = 8192;
  int repetitions = 5;
  std::vector<double> scale_factors{1, 2, 3, 4, 5, 6, 7, 8};
  ZneMethod zne_method = ZneMethod::kQuadratic;
  NoiseModel noise = NoiseModel::uniform(0.02, 0.02, 0.02);
  /// "none" or a built-in topology name.
  std::string topology = "none";
  std::string initial_label;
  Basis initial_basis = Basis::kX;
  std::vector<ObservableSpec> observables;
  std::uint64_t master_seed = 0;

  GaugeModel gauge_model() const { return GaugeModel{model, g, 0.0, convention}; }
  Geometry lattice() const { return Geometry::of(geometry); }
};

/// Defaults for a (model, geometry) pair: 20 times on [0, 2 pi], all-zero
/// initial label, observables loschmidt:<label> and the first Gauss site.
ExperimentConfig default_config(GaugeGroup model, GeometryKind geometry);

/// Parses a JSON config. Missing fields take default_config values; unknown
/// keys and invalid values raise ConfigError.
ExperimentConfig parse_config(std::string_view json);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  double time = 0.0;
  std::string observable;
  double raw_mean = 0.0;
  double raw_err = 0.0;
  double ro_mean = 0.0;
  double ro_err = 0.0;
  double zne_mean = 0.0;
  double zne_err = 0.0;
  double exact = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

using ResultTable = std::vector<ResultRow>;

struct RunLog {
  std::uint64_t circuits_executed = 0;
  std::uint64_t calibration_circuits = 0;
  std::uint64_t shots_executed = 0;
  int evolution_cnots = 0;
  int max_folded_cnots = 0;
  std::vector<double> achieved_scale_factors;
  /// Repetitions whose ZNE estimate was clamped into [0, 1].
  std::uint64_t clamped_estimates = 0;
  std::uint64_t unconverged_mitigations = 0;

  std::string to_json() const;
};

struct ExperimentResult {
  ResultTable table;
  RunLog log;
  ResponseMatrix calibration;
};

/// Time x scale x repetition grid: build, optionally route, fold, run noisy,
/// unfold readout, extrapolate per repetition, then aggregate mean and
/// sample std over repetitions.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Observable operator in the model's measured basis.
PauliSum observable_operator(const ExperimentConfig& cfg, const ObservableSpec& obs);

/// Exact value of an observable at time t.
double exact_value(const ExperimentConfig& cfg, const ObservableSpec& obs, double t);

struct ExactCurve {
  std::string observable;
  std::vector<double> times;
  std::vector<double> values;
};

/// Dense exact curves over [min(times), max(times)].
std::vector<ExactCurve> exact_reference(const ExperimentConfig& cfg, int points = 200);

/// Circuit executed at time t and scale factor 1 (after routing, if any).
Circuit experiment_circuit(const ExperimentConfig& cfg, double t);

void write_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);
/// CSV text with the header time,observable,raw_mean,...,exact.
std::string to_csv(const ResultTable& table);
ResultTable parse_csv(std::string_view text);

/// Wide CSV: time followed by one column per curve.
void write_exact_csv(const std::vector<ExactCurve>& curves, const std::filesystem::path& path);

/// One SVG per observable in `dir`; returns the written paths. The dashed
/// exact line uses `dense` when given, the table's exact column otherwise.
std::vector<std::filesystem::path> write_svg(const ResultTable& table,
                                             const std::filesystem::path& dir,
                                             const std::vector<ExactCurve>& dense = {});

/// File-name-safe form of an observable name.
std::string observable_file_stem(std::string_view observable);

}  // namespace plaquette

#endif  // PLAQUETTE_HARNESS_HPP
