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

// Readout unfolding through a calibrated response matrix, and zero-noise
// extrapolation over CNOT-folded circuits.

#ifndef PLAQUETTE_MITIGATION_HPP
#define PLAQUETTE_MITIGATION_HPP

#include <string>
#include <string_view>
#include <vector>

#include "plaquette/circuit.hpp"
#include "plaquette/simulator.hpp"

namespace plaquette {

struct FoldResult {
  Circuit circuit;
  double achieved_lambda = 1.0;
  int inserted_pairs = 0;
};

/// Scales the CNOT count to round(lambda * N) by inserting CNOT.CNOT pairs
/// right after existing CNOTs. Pairs are dealt round-robin in gate order, so
/// lambda = 3 triples every CNOT. The unitary is unchanged.
FoldResult fold(const Circuit& c, double lambda);

/// Column-stochastic matrix with column j the measured distribution when
/// basis state j was prepared.
class ResponseMatrix {
 public:
  ResponseMatrix(int num_qubits, Eigen::MatrixXd values);

  /// Tensor product of independent per-bit flip matrices.
  static ResponseMatrix from_noise(int num_qubits, const NoiseModel& noise);

  int num_qubits() const { return num_qubits_; }
  const Eigen::MatrixXd& values() const { return values_; }

  /// {"n": n, "values": [row-major entries]}.
  std::string to_json() const;
  static ResponseMatrix from_json(std::string_view text);

 private:
  int num_qubits_;
  Eigen::MatrixXd values_;
};

inline constexpr int kMaxCalibrationQubits = 6;

/// Prepares each of the 2^n basis states, measures it under the readout part
/// of `noise`, and normalizes the counts into columns.
ResponseMatrix calibrate(int num_qubits, const NoiseModel& noise, std::uint64_t shots,
                         std::uint64_t seed);

struct ReadoutMitigation {
  Eigen::VectorXd distribution;
  int iterations = 0;
  bool converged = false;
  /// ||m - P t||_2 at the returned t.
  double residual = 0.0;
};

/// Minimizes ||m - P t||^2 over the probability simplex. Accelerated
/// projected gradient with a monotone restart; stops once an iteration moves
/// t by at most 1e-13 in every entry, or after `max_iterations`.
ReadoutMitigation mitigate_readout(const Eigen::VectorXd& measured, const ResponseMatrix& p,
                                   int max_iterations = 10000);

/// Euclidean projection onto {t : t_i >= 0, sum t_i = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

struct ZnePoint {
  double requested_lambda = 1.0;
  double achieved_lambda = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
};

enum class ZneMethod { kQuadratic, kRichardson };

ZneMethod parse_zne_method(std::string_view text);
std::string to_string(ZneMethod method);

struct ZneResult {
  ZneMethod method = ZneMethod::kQuadratic;
  double estimate = 0.0;
  double std_error = 0.0;
  /// Set when the estimate was pulled back into [0, 1].
  bool clamped = false;
  /// Quadratic: (a, b, c) of a + b x + c x^2. Richardson: empty.
  std::vector<double> coefficients;
  /// Input points sorted by achieved lambda.
  std::vector<ZnePoint> points;

  /// Fitted curve at lambda (before clamping).
  double evaluate(double lambda) const;
};

/// Extrapolates to lambda = 0 in the achieved scale factors. Quadratic is an
/// ordinary least-squares fit (>= 3 distinct lambdas); its standard error
/// propagates the points' std errors, or uses the fit residuals when none
/// are given. Richardson is the Lagrange interpolant through every point.
ZneResult zne(std::vector<ZnePoint> points, ZneMethod method, bool probability = false);

}  // namespace plaquette

#endif  // PLAQUETTE_MITIGATION_HPP
