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

// Hardware coupling graphs, greedy SWAP routing and volume accounting.

#ifndef PLAQUETTE_TRANSPILE_HPP
#define PLAQUETTE_TRANSPILE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plaquette/circuit.hpp"

namespace plaquette {

/// Undirected, connected coupling graph.
class Topology {
 public:
  Topology(std::string name, int num_qubits, std::vector<std::pair<int, int>> edges,
           std::optional<int> quantum_volume = std::nullopt);

  /// 0-1-2-3-4.
  static Topology linear5();
  /// 0-1-2 with 1-3-4: node 1 has degree 3.
  static Topology t5();
  /// Two three-node rows (0-1-2, 4-5-6) bridged by 1-3-5.
  static Topology h7();
  /// "linear-5", "t-5" or "h-7"; throws InvalidArgument otherwise.
  static Topology builtin(std::string_view name);

  /// JSON object {"name", "n", "edges": [[a, b], ...], "quantum_volume"?}.
  static Topology from_json(std::string_view text);
  std::string to_json() const;

  const std::string& name() const { return name_; }
  int num_qubits() const { return num_qubits_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::optional<int> quantum_volume() const { return quantum_volume_; }

  bool connected(int a, int b) const;
  int degree(int q) const;
  const std::vector<int>& neighbors(int q) const { return adjacency_[static_cast<size_t>(q)]; }
  /// Hop distance between physical qubits.
  int distance(int a, int b) const;
  /// Shortest path a..b, preferring lower-index nodes at each step.
  std::vector<int> shortest_path(int a, int b) const;

 private:
  std::string name_;
  int num_qubits_;
  std::vector<std::pair<int, int>> edges_;
  std::optional<int> quantum_volume_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> dist_;
};

/// Logical-to-physical assignment. Always a full permutation of the
/// physical qubits; logical indices past the circuit width are spares.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<int> logical_to_physical);

  static Layout identity(int num_physical);

  int physical(int logical) const { return l2p_[static_cast<size_t>(logical)]; }
  int logical(int physical) const { return p2l_[static_cast<size_t>(physical)]; }
  int size() const { return static_cast<int>(l2p_.size()); }
  const std::vector<int>& logical_to_physical() const { return l2p_; }

  /// Exchanges whatever sits on two physical qubits.
  void swap_physical(int a, int b);

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<int> l2p_;
  std::vector<int> p2l_;
};

struct TranspileResult {
  Circuit circuit;
  Layout initial_layout;
  Layout final_layout;
  int swaps = 0;
};

/// Ancilla on a maximum-degree node (ties: smallest eccentricity, then lowest
/// index); remaining logical qubits by descending two-qubit interaction count
/// onto nodes in BFS order from the ancilla.
Layout default_layout(const Circuit& c, const Topology& topo);

/// Routes every two-qubit gate onto a coupling edge. When the operands are
/// not adjacent, the first operand is walked along the shortest path with
/// SWAPs (three CNOTs each). Measurements keep their classical bits.
TranspileResult transpile(const Circuit& c, const Topology& topo,
                          const std::optional<Layout>& initial_layout = std::nullopt);

/// Permutation matrix sending logical basis state |i> to the physical basis
/// state that holds the same bits under `layout`. For a routed circuit,
/// U_routed * P(initial) == P(final) * U_original on the padded register.
DenseOperator layout_permutation(const Layout& layout);

struct VolumeReport {
  int m = 0;
  int d = 0;
  int circuit_volume = 0;
  int qv_exponent = 0;
  long long quantum_volume = 1;
};

/// m = qubit count, d = two-qubit depth, V_Q = 2^min(d, m).
VolumeReport volume_report(const Circuit& c);
VolumeReport volume_report(int m, int d);

}  // namespace plaquette

#endif  // PLAQUETTE_TRANSPILE_HPP
