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

// Reference implementations used only by the tests. Everything here is built
// from textbook definitions (Kronecker products, the Pade matrix exponential,
// brute-force commutators, hand-written operator lists) and shares no code
// with the library apart from the Circuit data structure it reads.

#ifndef PLAQUETTE_TESTS_ORACLE_HPP
#define PLAQUETTE_TESTS_ORACLE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>
#include <vector>

#include "plaquette/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using TermList = std::vector<std::pair<double, std::string>>;

inline Mat pauli(char c) {
  Mat m(2, 2);
  const cd i(0, 1);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// letters[q] acts on qubit q; qubit 0 is the rightmost Kronecker factor.
inline Mat kron_string(std::string_view letters) {
  Mat m = Mat::Identity(1, 1);
  for (char c : letters) {
    Mat next = Eigen::kroneckerProduct(pauli(c), m);
    m = next;
  }
  return m;
}

inline Mat operator_of(int n, const TermList& terms) {
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (const auto& [c, s] : terms) h += c * kron_string(s);
  return h;
}

inline Mat expm(const Mat& h, double t) {
  Mat a = cd(0.0, -t) * h;
  return a.exp();
}

inline bool commute(const Mat& a, const Mat& b) { return (a * b - b * a).norm() < 1e-10; }

inline double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

/// Minimizes max |a - e^{i phase} b| over the global phase.
inline double phase_distance(const Mat& a, const Mat& b) {
  const cd overlap = (b.adjoint() * a).trace();
  const cd phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cd(1.0);
  return max_abs(a - phase * b);
}

/// Product state, label written highest qubit first. '0'/'1' in the z basis
/// map to |0>/|1>; in the x basis to |+>/|-> with |-> = (|0> - |1>)/sqrt(2).
inline Vec product_state(std::string_view label, bool x_basis) {
  const double r = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Ones(1);
  for (char c : label) {
    Vec ket(2);
    if (!x_basis) {
      ket << (c == '0' ? 1.0 : 0.0), (c == '1' ? 1.0 : 0.0);
    } else {
      ket << r, (c == '0' ? r : -r);
    }
    Vec next = Eigen::kroneckerProduct(v, ket);
    v = next;
  }
  return v;
}

/// Embeds u (on `qubits`, qubits[0] the most significant local bit) into n.
inline Mat embed(const Mat& u, const std::vector<int>& qubits, int n) {
  const int dim = 1 << n;
  const int k = static_cast<int>(qubits.size());
  int mask = 0;
  for (int q : qubits) mask |= 1 << q;
  auto local = [&](int idx) {
    int l = 0;
    for (int j = 0; j < k; ++j) l |= ((idx >> qubits[j]) & 1) << (k - 1 - j);
    return l;
  };
  Mat m = Mat::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      m(r, c) = u(local(r), local(c));
    }
  }
  return m;
}

inline Mat gate_matrix(const plaquette::Gate& g, int n) {
  using plaquette::GateKind;
  const cd i(0, 1);
  const double r = 1.0 / std::sqrt(2.0);
  Mat u;
  switch (g.kind) {
    case GateKind::kH: u = Mat(2, 2); u << r, r, r, -r; break;
    case GateKind::kX: u = pauli('X'); break;
    case GateKind::kS: u = Mat(2, 2); u << 1, 0, 0, i; break;
    case GateKind::kSdg: u = Mat(2, 2); u << 1, 0, 0, -i; break;
    case GateKind::kRX: u = expm(pauli('X'), g.angle / 2); break;
    case GateKind::kRZ: u = expm(pauli('Z'), g.angle / 2); break;
    case GateKind::kCNOT:
      u = Mat::Zero(4, 4);
      u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1;
      return embed(u, {g.q0, g.q1}, n);
    case GateKind::kCP:
      u = Mat::Identity(4, 4);
      u(3, 3) = std::exp(i * g.angle);
      return embed(u, {g.q0, g.q1}, n);
    case GateKind::kMeasure: return Mat::Identity(1 << n, 1 << n);
  }
  return embed(u, {g.q0}, n);
}

inline Mat circuit_unitary(const plaquette::Circuit& c) {
  const int n = c.num_qubits();
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (const auto& g : c.gates()) u = (gate_matrix(g, n) * u).eval();
  return u;
}

/// <0|_A U |0>_A with the ancilla on the highest qubit.
inline Mat ancilla_block(const Mat& u) {
  const Eigen::Index half = u.rows() / 2;
  return u.topLeftCorner(half, half);
}

// Reference Hamiltonians in Pauli form, letters in link order 1..n, g = 1.
inline TermList z2_square() { return {{-1.0, "ZZZZ"}}; }
inline TermList z2_triangle() { return {{-1.0, "ZZZ"}}; }
inline TermList z2_two_square() { return {{-1.0, "ZZZZII"}, {-1.0, "IZIZZZ"}}; }
inline TermList u1_square() {
  const double c = -0.5;
  return {{c, "XXXX"},  {c, "YYYY"}, {-c, "XXYY"}, {-c, "YYXX"},
          {c, "YXYX"},  {c, "YXXY"}, {c, "XYYX"},  {c, "XYXY"}};
}
inline TermList u1_triangle() {
  const double c = -1.0 / std::sqrt(2.0);
  return {{c, "XXX"}, {-c, "YYX"}, {-c, "YXY"}, {-c, "XYY"}};
}

/// Gauss-sector basis of the periodic two-plaquette lattice, e1..e8.
inline std::vector<std::string> two_square_sector_states() {
  return {"000000", "001111", "010001", "011110", "100100", "101011", "110101", "111010"};
}

inline Eigen::MatrixXd two_square_sector_matrix() {
  Eigen::MatrixXd m(8, 8);
  m << 0, -1, 0, 0, 0, 0, 0, -1,
      -1, 0, 0, 0, 0, 0, -1, 0,
       0, 0, 0, -1, 0, -1, 0, 0,
       0, 0, -1, 0, -1, 0, 0, 0,
       0, 0, 0, -1, 0, -1, 0, 0,
       0, 0, -1, 0, -1, 0, 0, 0,
       0, -1, 0, 0, 0, 0, 0, -1,
      -1, 0, 0, 0, 0, 0, -1, 0;
  return m;
}

}  // namespace oracle

#endif  // PLAQUETTE_TESTS_ORACLE_HPP
