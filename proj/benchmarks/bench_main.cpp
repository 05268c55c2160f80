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

#include <benchmark/benchmark.h>

#include <string>

#include "plaquette/circuit.hpp"
#include "plaquette/exact.hpp"
#include "plaquette/harness.hpp"
#include "plaquette/mitigation.hpp"
#include "plaquette/simulator.hpp"
#include "plaquette/transpile.hpp"

namespace {

using namespace plaquette;

Circuit z2_square(double t) {
  return model_circuit(GaugeModel{}, Geometry::square1(), t, "0000", Basis::kX);
}

void BM_CompileModelCircuit(benchmark::State& state) {
  const auto group = state.range(0) ? GaugeGroup::kU1 : GaugeGroup::kZ2;
  const Geometry geom = Geometry::square1();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model_circuit(GaugeModel{group}, geom, 0.7, "0011", natural_basis(group)));
  }
}
BENCHMARK(BM_CompileModelCircuit)->Arg(0)->Arg(1);

void BM_ExactEvolveCached(benchmark::State& state) {
  const Geometry geom = Geometry::two_square_pbc();
  const PauliSum h = build_hamiltonian(GaugeModel{}, geom);
  const StateVector psi = initial_state(geom, "000000", Basis::kX);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_evolve(h, psi, t));
    t += 0.01;
  }
}
BENCHMARK(BM_ExactEvolveCached);

void BM_Transpile(benchmark::State& state) {
  const Circuit c = model_circuit(GaugeModel{}, Geometry::two_square_pbc(), 0.5, "000000",
                                  Basis::kX);
  const Topology topo = Topology::h7();
  for (auto _ : state) benchmark::DoNotOptimize(transpile(c, topo));
}
BENCHMARK(BM_Transpile);

void BM_RunDensity(benchmark::State& state) {
  const FoldResult f = fold(z2_square(0.9), static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(noisy_distribution(f.circuit, NoiseModel::uniform(0.02, 0.02, 0.02)));
}
BENCHMARK(BM_RunDensity)->Arg(1)->Arg(8);

void BM_RunNoisy(benchmark::State& state) {
  const Circuit c = fold(z2_square(0.9), 4.0).circuit;
  const NoiseModel noise = NoiseModel::uniform(0.02, 0.02, 0.02);
  const auto engine = state.range(0) ? NoisyEngine::kTrajectory : NoisyEngine::kDensityMatrix;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_noisy(c, noise, 8192, ++seed, engine));
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_RunNoisy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MitigateReadout(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ResponseMatrix p = ResponseMatrix::from_noise(n, NoiseModel::uniform(0, 0.02, 0.02));
  const Eigen::VectorXd t = Eigen::VectorXd::Constant(1 << n, 1.0 / (1 << n));
  const Eigen::VectorXd m = p.values() * t;
  for (auto _ : state) benchmark::DoNotOptimize(mitigate_readout(m, p));
}
BENCHMARK(BM_MitigateReadout)->Arg(4)->Arg(6);

void BM_RunExperimentSlice(benchmark::State& state) {
  ExperimentConfig cfg = default_config(GaugeGroup::kZ2, GeometryKind::kSquare1);
  cfg.times = {0.7};
  cfg.observables = {ObservableSpec::parse("loschmidt:0000")};
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_RunExperimentSlice)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
