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

// plaquette: run, exact, calibrate and inspect subcommands.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 runtime error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/harness.hpp"
#include "plaquette/mitigation.hpp"
#include "plaquette/transpile.hpp"

namespace fs = std::filesystem;
using namespace plaquette;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write '" + path.string() + "'");
}

std::string read_config_file(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot read ") + what + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_volume(const char* label, const VolumeReport& v) {
  std::printf("%s: m=%d d=%d circuit_volume=%d qv_exponent=%d quantum_volume=%lld\n", label, v.m,
              v.d, v.circuit_volume, v.qv_exponent, v.quantum_volume);
}

int cmd_run(const fs::path& config, const fs::path& out, std::optional<std::uint64_t> seed) {
  ExperimentConfig cfg = load_config(config);
  if (seed) cfg.master_seed = *seed;
  ensure_dir(out);
  const ExperimentResult result = run_experiment(cfg);
  write_csv(result.table, out / "results.csv");
  const auto svgs = write_svg(result.table, out, exact_reference(cfg));
  write_file(out / "run_log.json", result.log.to_json() + "\n");
  write_file(out / "calibration.json", result.calibration.to_json() + "\n");
  std::printf("executed %llu circuits (%llu shots); wrote %s and %zu plot(s)\n",
              static_cast<unsigned long long>(result.log.circuits_executed),
              static_cast<unsigned long long>(result.log.shots_executed),
              (out / "results.csv").string().c_str(), svgs.size());
  return 0;
}

int cmd_exact(const fs::path& config, const fs::path& out, int points) {
  const ExperimentConfig cfg = load_config(config);
  ensure_dir(out);
  write_exact_csv(exact_reference(cfg, points), out / "exact.csv");
  std::printf("wrote %s\n", (out / "exact.csv").string().c_str());
  return 0;
}

int cmd_calibrate(int qubits, const fs::path& noise_file, const fs::path& out,
                  std::uint64_t shots, std::uint64_t seed) {
  NoiseModel noise;
  try {
    noise = NoiseModel::from_json(read_config_file(noise_file, "noise file"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (qubits < 1 || qubits > kMaxCalibrationQubits) {
    throw ConfigError("--qubits must be in 1.." + std::to_string(kMaxCalibrationQubits));
  }
  const ResponseMatrix p = calibrate(qubits, noise, shots, seed);
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  write_file(out, p.to_json() + "\n");
  std::printf("wrote %dx%d response matrix to %s\n", 1 << qubits, 1 << qubits,
              out.string().c_str());
  return 0;
}

int cmd_inspect(const fs::path& config, bool dump, double time,
                const std::optional<std::string>& topology_override) {
  ExperimentConfig cfg = load_config(config);
  if (topology_override) cfg.topology = *topology_override;
  const Circuit logical = model_circuit(cfg.gauge_model(), cfg.lattice(), time,
                                        cfg.initial_label, natural_basis(cfg.model));
  const CircuitMetrics m = metrics(logical);
  std::printf("model %s on %s, t=%g\n", to_string(cfg.model).c_str(),
              cfg.lattice().name().c_str(), time);
  std::printf("logical: qubits=%d cnots=%d two_qubit_depth=%d\n", m.qubit_count, m.cnot_count,
              m.two_qubit_depth);
  print_volume("logical volume", volume_report(logical));
  const Circuit* shown = &logical;
  std::optional<TranspileResult> routed;
  if (cfg.topology != "none") {
    Topology topo = [&] {
      try {
        return Topology::builtin(cfg.topology);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }();
    routed = transpile(logical, topo);
    const CircuitMetrics rm = metrics(routed->circuit);
    std::printf("routed on %s: qubits=%d cnots=%d swaps=%d two_qubit_depth=%d\n",
                topo.name().c_str(), rm.qubit_count, rm.cnot_count, routed->swaps,
                rm.two_qubit_depth);
    const VolumeReport v = volume_report(routed->circuit);
    print_volume("routed volume", v);
    if (topo.quantum_volume()) {
      std::printf("device V_Q=%d: circuit volume %d %s V_Q\n", *topo.quantum_volume(),
                  v.circuit_volume, v.circuit_volume > *topo.quantum_volume() ? "exceeds" : "fits within");
    }
    shown = &routed->circuit;
  }
  if (dump) std::printf("%s", to_text(*shown).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-plaquette dynamics on simulated noisy hardware"};
  app.require_subcommand(1);

  fs::path config, out, noise_file;
  std::optional<std::uint64_t> seed;
  int points = 200;
  int qubits = 0;
  std::uint64_t shots = 8192, calib_seed = 0;
  bool dump = false;
  double time = 1.0;
  std::optional<std::string> topology;

  auto* run = app.add_subcommand("run", "Noisy experiment with readout mitigation and ZNE");
  run->add_option("--config", config, "JSON experiment config")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Override master_seed");

  auto* exact = app.add_subcommand("exact", "Exact reference curves");
  exact->add_option("--config", config, "JSON experiment config")->required();
  exact->add_option("--out", out, "Output directory")->required();
  exact->add_option("--points", points, "Samples on the time range")->check(CLI::Range(2, 100000));

  auto* calib = app.add_subcommand("calibrate", "Measure a readout response matrix");
  calib->add_option("--qubits", qubits, "Number of measured qubits")->required();
  calib->add_option("--noise", noise_file, "Noise JSON {p2, eps01, eps10}")->required();
  calib->add_option("--out", out, "Response matrix JSON")->required();
  calib->add_option("--shots", shots, "Shots per basis state")->check(CLI::PositiveNumber);
  calib->add_option("--seed", calib_seed, "Seed");

  auto* inspect = app.add_subcommand("inspect", "Circuit metrics and volume accounting");
  inspect->add_option("--config", config, "JSON experiment config")->required();
  inspect->add_flag("--circuit-dump", dump, "Print the gate listing");
  inspect->add_option("--time", time, "Evolution time of the inspected circuit");
  inspect->add_option("--topology", topology, "Override the config topology");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(config, out, seed);
    if (*exact) return cmd_exact(config, out, points);
    if (*calib) return cmd_calibrate(qubits, noise_file, out, shots, calib_seed);
    if (*inspect) return cmd_inspect(config, dump, time, topology);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
