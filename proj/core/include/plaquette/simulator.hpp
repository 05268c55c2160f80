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

// Statevector execution, shot sampling, two-qubit depolarizing noise and
// readout bit flips.
//
// Noise model: after every two-qubit gate, with probability p2 one of the 15
// non-identity two-qubit Paulis is applied uniformly at random. Single-qubit
// gates are noiseless. At readout, a true 0 is reported as 1 with
// probability eps01 and a true 1 as 0 with probability eps10, independently
// per bit and per shot.
//
// Two engines realize the same outcome law. kTrajectory samples error
// patterns per shot and groups shots sharing a pattern; kDensityMatrix
// evolves the mixed state through the depolarizing channel and samples the
// exact distribution. kAuto picks the density matrix up to
// kMaxDensityQubits.

#ifndef PLAQUETTE_SIMULATOR_HPP
#define PLAQUETTE_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plaquette/circuit.hpp"

namespace plaquette {

inline constexpr int kMaxStatevectorQubits = 20;
inline constexpr int kMaxDensityQubits = 10;

struct ReadoutError {
  double eps01 = 0.0;  // P(read 1 | true 0)
  double eps10 = 0.0;  // P(read 0 | true 1)
};

struct NoiseModel {
  double p2 = 0.0;
  /// Applies to every classical bit without an entry in `per_bit`.
  ReadoutError readout;
  std::vector<ReadoutError> per_bit;

  static NoiseModel uniform(double p2, double eps01, double eps10) {
    return NoiseModel{p2, {eps01, eps10}, {}};
  }
  /// Same readout, no gate noise (calibration runs).
  NoiseModel readout_only() const { return NoiseModel{0.0, readout, per_bit}; }

  const ReadoutError& readout_for(int bit) const;
  bool has_readout_error() const;
  /// Throws InvalidArgument unless every probability lies in [0, 1].
  void validate() const;

  /// {"p2": .., "eps01": .., "eps10": ..}; unknown keys are rejected.
  static NoiseModel from_json(std::string_view text);
  std::string to_json() const;
};

/// Outcome histogram. Keys are bitstrings of num_bits characters written
/// highest classical bit first.
class Counts {
 public:
  explicit Counts(int num_bits = 1);

  int num_bits() const { return num_bits_; }
  std::uint64_t shots() const { return shots_; }
  const std::map<std::string, std::uint64_t>& histogram() const { return histogram_; }

  void add(std::string_view bitstring, std::uint64_t count = 1);
  void add_index(std::uint64_t outcome, std::uint64_t count = 1);
  std::uint64_t count(std::string_view bitstring) const;
  double frequency(std::string_view bitstring) const;

  /// Associative and commutative.
  Counts& merge(const Counts& other);

  /// Frequencies as a dense vector indexed by the outcome's binary value.
  Eigen::VectorXd distribution() const;

  /// JSON object {bitstring: count}.
  std::string to_json() const;
  static Counts from_json(std::string_view text);

  friend bool operator==(const Counts&, const Counts&) = default;

 private:
  int num_bits_;
  std::uint64_t shots_ = 0;
  std::map<std::string, std::uint64_t> histogram_;
};

/// Final state from |0...0>; measurements are ignored.
StateVector run_ideal(const Circuit& c);
StateVector run_ideal(const Circuit& c, const StateVector& initial);

/// i.i.d. draws from |amplitude|^2 over every qubit of the state.
Counts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Draws from the state and reports only the measured qubits of `c`, each
/// in its classical bit. With no measurements every qubit is reported.
Counts sample(const Circuit& c, const StateVector& state, std::uint64_t shots,
              std::uint64_t seed);

enum class NoisyEngine { kAuto, kTrajectory, kDensityMatrix };

/// Noisy shots. With p2 == 0 and no readout error the result equals
/// sample(c, run_ideal(c), shots, seed) exactly.
Counts run_noisy(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                 std::uint64_t seed, NoisyEngine engine = NoisyEngine::kAuto);

/// run_noisy split into a one-off preparation and repeated draws. With the
/// density-matrix engine the mixed state is computed once, so repeated
/// run() calls only sample. run(shots, seed) equals run_noisy with the same
/// arguments.
class NoisyExecutor {
 public:
  NoisyExecutor(Circuit c, NoiseModel noise, NoisyEngine engine = NoisyEngine::kAuto);

  Counts run(std::uint64_t shots, std::uint64_t seed) const;
  const Circuit& circuit() const { return circuit_; }

 private:
  Circuit circuit_;
  NoiseModel noise_;
  NoisyEngine engine_;
  bool gate_noise_ = false;
  /// Outcome weights over the register when no trajectories are needed.
  Eigen::VectorXd weights_;
};

/// Exact outcome distribution over the classical bits, gate noise and
/// readout flips included. Density-matrix evolution; n <= kMaxDensityQubits.
Eigen::VectorXd noisy_distribution(const Circuit& c, const NoiseModel& noise);

/// Mixed state after the circuit with gate noise only.
DenseOperator run_density(const Circuit& c, double p2);

/// Expectation of an observable that is diagonal in the measured basis:
/// only I/Z letters for Basis::kZ, only I/X letters for Basis::kX (the
/// bitstrings are then x-basis labels). Letter q reads classical bit q.
/// Throws NonDiagonalObservable otherwise.
double expectation_diagonal(const Counts& counts, const PauliSum& observable, Basis measured);

/// Same evaluation on a probability vector indexed by outcome value.
double expectation_diagonal(const Eigen::VectorXd& distribution, const PauliSum& observable,
                            Basis measured);

}  // namespace plaquette

#endif  // PLAQUETTE_SIMULATOR_HPP
