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

// Gate-level circuit IR and the ancilla-mediated compiler for commuting
// Pauli Hamiltonians.
//
// A weight-N Pauli rotation exp(-i c t P) is realized as
//
//     B^dagger . E^dagger . RX_A(theta) . E . B
//
// (rightmost first) where B rotates every non-identity letter of P to Z,
// E = exp(-i pi/4 Z_A sum_j Z_j) entangles the ancilla A with the support,
// and theta = 2 c t s_N with s_N = +1 for N mod 4 in {0, 3}, -1 otherwise.
// Conjugating X_A through E yields s_N X_A Z...Z for even N and
// s_N Y_A Z...Z for odd N, so the ancilla must sit in the +1 eigenstate of
// X (|+>) or Y (|+i>) respectively and is left there afterwards.

#ifndef PLAQUETTE_CIRCUIT_HPP
#define PLAQUETTE_CIRCUIT_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plaquette/models.hpp"
#include "plaquette/pauli.hpp"

namespace plaquette {

enum class GateKind { kH, kX, kS, kSdg, kRX, kRZ, kCNOT, kCP, kMeasure };

struct Gate {
  GateKind kind = GateKind::kH;
  int q0 = 0;
  /// Second qubit for CNOT (target) and CP; -1 otherwise.
  int q1 = -1;
  /// Radians for RX, RZ and CP.
  double angle = 0.0;
  /// Classical bit written by kMeasure; -1 otherwise.
  int clbit = -1;

  bool is_two_qubit() const { return kind == GateKind::kCNOT || kind == GateKind::kCP; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string gate_name(GateKind kind);

class Circuit {
 public:
  explicit Circuit(int num_qubits = 1);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<int>& ancillas() const { return ancillas_; }
  size_t size() const { return gates_.size(); }

  void mark_ancilla(int qubit);

  Circuit& h(int q) { return add({GateKind::kH, q}); }
  Circuit& x(int q) { return add({GateKind::kX, q}); }
  Circuit& s(int q) { return add({GateKind::kS, q}); }
  Circuit& sdg(int q) { return add({GateKind::kSdg, q}); }
  Circuit& rx(int q, double theta) { return add({GateKind::kRX, q, -1, theta}); }
  Circuit& rz(int q, double theta) { return add({GateKind::kRZ, q, -1, theta}); }
  Circuit& cnot(int control, int target) {
    return add({GateKind::kCNOT, control, target});
  }
  Circuit& cp(int a, int b, double lambda) { return add({GateKind::kCP, a, b, lambda}); }
  Circuit& measure(int q, int clbit) { return add({GateKind::kMeasure, q, -1, 0.0, clbit}); }

  /// Appends a gate after validating indices, angles, and that no gate
  /// follows a measurement on the same qubit.
  Circuit& add(const Gate& gate);
  /// Appends every gate of another circuit on the same register.
  Circuit& append(const Circuit& other);

  bool has_measurements() const;
  /// Gate-reversed adjoint; throws InvalidArgument if measurements exist.
  Circuit inverse() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_;
  int num_clbits_ = 0;
  std::vector<Gate> gates_;
  std::vector<int> ancillas_;
  std::vector<bool> measured_;
};

/// How each exp(-i (phi/2) Z_A Z_j) factor becomes gates.
enum class ZZDecomposition {
  /// CNOT(j->A) RZ_A(phi) CNOT(j->A); exact for any phi.
  kCnotPair,
  /// RZ_A(phi) RZ_j(phi) CP(-2 phi); exact up to the global phase e^{i phi/2}.
  kControlledPhase,
  /// H_A CNOT(j->A) H_A with RZ_j(phi) RZ_A(phi); a single CNOT per link but
  /// only valid for phi = ±pi/2, exact up to a global phase.
  kSingleCnot,
};

enum class AncillaState { kPlus, kPlusI };

/// |+> for even weight, |+i> for odd weight.
AncillaState ancilla_state_for(int weight);

/// exp(-i (phi/2) Z_A sum_j Z_j) on a register of num_qubits.
Circuit entangler(int num_qubits, int ancilla, std::span<const int> system, double phi,
                  ZZDecomposition decomposition = ZZDecomposition::kCnotPair);

/// Layer rotating each X letter to Z (H) and each Y letter to Z (RX(pi/2)).
Circuit basis_change(const PauliTerm& term, int num_qubits);

struct CompileOptions {
  ZZDecomposition decomposition = ZZDecomposition::kSingleCnot;
};

/// Gates for exp(-i c t P) on the term's support, given the ancilla is in
/// the `prepared` eigenstate. The ancilla is returned to that state.
Circuit term_evolution(const PauliTerm& term, double t, int ancilla, int num_qubits,
                       AncillaState prepared, const CompileOptions& options = {});

/// Ancilla-mediated e^{-iHt} on qubits 0..n-1 with the ancilla at qubit n.
/// The ancilla starts and ends in |0>; it is rotated into its eigenstate and
/// back inside the circuit. Throws NonCommutingTerms if any pair of terms
/// fails to commute.
Circuit evolution_circuit(const PauliSum& h, double t, const CompileOptions& options = {});

/// Full experiment circuit: prepare `initial_label` in the model's natural
/// basis, evolve for time t, rotate into `measure_basis`, and measure system
/// qubit q into classical bit q.
Circuit model_circuit(const GaugeModel& model, const Geometry& geom, double t,
                      std::string_view initial_label, Basis measure_basis,
                      const CompileOptions& options = {});

/// Largest register accepted by circuit_unitary.
inline constexpr int kMaxUnitaryQubits = 12;

/// Product of the gate matrices, in the library's bit order.
DenseOperator circuit_unitary(const Circuit& c);

/// Block <0|_A U |0>_A acting on the remaining qubits.
DenseOperator restricted_unitary(const DenseOperator& u, int num_qubits, int ancilla);

struct CircuitMetrics {
  int cnot_count = 0;
  int two_qubit_count = 0;
  /// Depth counting only two-qubit gate layers.
  int two_qubit_depth = 0;
  int qubit_count = 0;
};

CircuitMetrics metrics(const Circuit& c);

/// Line-oriented text form:
///
///   qubits 5
///   clbits 4
///   ancilla 4
///   H 0
///   RZ 4 1.5707963267948966
///   CNOT 0 4
///   CP 0 4 -3.1415926535897931
///   MEASURE 0 0
///
/// Angles use 17 significant digits, so parse(to_text(c)) == c. Lines
/// starting with '#' are comments.
std::string to_text(const Circuit& c);
Circuit parse_circuit(std::string_view text);

}  // namespace plaquette

#endif  // PLAQUETTE_CIRCUIT_HPP
