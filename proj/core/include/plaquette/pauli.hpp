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

// Pauli-string algebra and its dense-matrix realization.
//
// Qubit ordering conventions used throughout the library:
//
//  * A computational basis index i encodes qubit q in bit q, i.e. qubit 0 is
//    the least significant bit and the RIGHTMOST Kronecker factor:
//        M = P_{n-1} (x) ... (x) P_1 (x) P_0.
//  * Pauli letter strings are written in qubit order, letters[q] acts on
//    qubit q. "XXYY" is X_0 X_1 Y_2 Y_3, which reads like the link-numbered
//    products sigma_1 sigma_2 sigma_3 sigma_4.
//  * Bitstring labels (basis states, measurement outcomes) are written with
//    the HIGHEST qubit first, so the label read as a binary number is the
//    basis index. "001111" has qubits 0..3 set.

#ifndef PLAQUETTE_PAULI_HPP
#define PLAQUETTE_PAULI_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plaquette {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest register for which dense operators are built.
inline constexpr int kMaxDenseQubits = 14;

/// Real coefficient times a tensor product of I/X/Y/Z letters.
class PauliTerm {
 public:
  PauliTerm() = default;
  PauliTerm(double coefficient, std::string letters);

  double coefficient() const { return coefficient_; }
  const std::string& letters() const { return letters_; }
  int num_qubits() const { return static_cast<int>(letters_.size()); }
  char letter(int qubit) const { return letters_[static_cast<size_t>(qubit)]; }

  /// Number of non-identity letters.
  int weight() const;
  /// Qubits carrying a non-identity letter, ascending.
  std::vector<int> support() const;
  bool is_identity() const { return weight() == 0; }

  /// Bit masks of the X-type (X or Y) and Z-type (Z or Y) letters.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  PauliTerm scaled(double factor) const {
    return PauliTerm(coefficient_ * factor, letters_);
  }

  std::string to_string() const;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;

 private:
  double coefficient_ = 0.0;
  std::string letters_;
};

/// Sum of Pauli terms on a fixed register; duplicate strings are merged and
/// first-insertion order is kept.
class PauliSum {
 public:
  explicit PauliSum(int num_qubits = 1);
  PauliSum(int num_qubits, const std::vector<PauliTerm>& terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Adds a term, merging with an existing one of equal letters. Terms whose
  /// merged coefficient vanishes are dropped.
  void add(const PauliTerm& term);
  void add(double coefficient, std::string letters) {
    add(PauliTerm(coefficient, std::move(letters)));
  }

  PauliSum scaled(double factor) const;

  /// Canonical text: terms sorted by letters, coefficients at full precision.
  /// Two sums with equal keys are the same operator.
  std::string canonical_key() const;

  std::string to_string() const;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);

  /// Operator product. The result must have real coefficients (true whenever
  /// a and b commute); otherwise InvalidArgument is thrown.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Product of two Pauli strings as (phase, letters), phase in {±1, ±i}.
std::pair<Complex, std::string> multiply(std::string_view a, std::string_view b);

/// True iff the strings commute: the number of positions where both letters
/// are non-identity and different is even.
bool commutes(const PauliTerm& a, const PauliTerm& b);

/// True iff every pair of terms commutes.
bool all_commute(const PauliSum& sum);

/// Dense 2^n x 2^n matrix of coefficient * P_{n-1} (x) ... (x) P_0.
DenseOperator term_to_matrix(const PauliTerm& term);
DenseOperator to_matrix(const PauliSum& sum);

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const DenseOperator& a);

/// Basis index of a bitstring label (highest qubit first).
std::uint64_t label_to_index(std::string_view label);
/// Inverse of label_to_index for a register of num_qubits.
std::string index_to_label(std::uint64_t index, int num_qubits);

}  // namespace plaquette

#endif  // PLAQUETTE_PAULI_HPP
