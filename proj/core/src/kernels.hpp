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

// In-place statevector gate kernels shared by circuit_unitary and the
// simulators.

#ifndef PLAQUETTE_SRC_KERNELS_HPP
#define PLAQUETTE_SRC_KERNELS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "plaquette/circuit.hpp"

namespace plaquette::detail {

using Mat2 = std::array<Complex, 4>;  // row-major

inline void apply_1q(Complex* amp, std::uint64_t dim, int q, const Mat2& m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a0 = amp[i];
    const Complex a1 = amp[i | bit];
    amp[i] = m[0] * a0 + m[1] * a1;
    amp[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

inline void apply_diag(Complex* amp, std::uint64_t dim, int q, Complex d0, Complex d1) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) amp[i] *= (i & bit) ? d1 : d0;
}

inline void apply_x(Complex* amp, std::uint64_t dim, int q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (!(i & bit)) std::swap(amp[i], amp[i | bit]);
  }
}

inline void apply_cnot(Complex* amp, std::uint64_t dim, int control, int target) {
  const std::uint64_t cb = std::uint64_t{1} << control;
  const std::uint64_t tb = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cb) && !(i & tb)) std::swap(amp[i], amp[i | tb]);
  }
}

inline void apply_cp(Complex* amp, std::uint64_t dim, int a, int b, double lambda) {
  const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  const Complex phase = std::polar(1.0, lambda);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) amp[i] *= phase;
  }
}

/// Applies a single Pauli letter (X, Y or Z) to qubit q.
inline void apply_pauli(Complex* amp, std::uint64_t dim, int q, char letter) {
  const Complex i(0.0, 1.0);
  switch (letter) {
    case 'X':
      apply_x(amp, dim, q);
      break;
    case 'Y':
      apply_1q(amp, dim, q, {0.0, -i, i, 0.0});
      break;
    case 'Z':
      apply_diag(amp, dim, q, 1.0, -1.0);
      break;
    default:
      break;
  }
}

/// Applies a unitary gate; measurement gates are ignored.
inline void apply_gate(Complex* amp, std::uint64_t dim, const Gate& g) {
  const Complex i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::kH: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_1q(amp, dim, g.q0, {r, r, r, -r});
      break;
    }
    case GateKind::kX:
      apply_x(amp, dim, g.q0);
      break;
    case GateKind::kS:
      apply_diag(amp, dim, g.q0, 1.0, i);
      break;
    case GateKind::kSdg:
      apply_diag(amp, dim, g.q0, 1.0, -i);
      break;
    case GateKind::kRX: {
      const double c = std::cos(0.5 * g.angle), s = std::sin(0.5 * g.angle);
      apply_1q(amp, dim, g.q0, {c, -i * s, -i * s, c});
      break;
    }
    case GateKind::kRZ:
      apply_diag(amp, dim, g.q0, std::polar(1.0, -0.5 * g.angle),
                 std::polar(1.0, 0.5 * g.angle));
      break;
    case GateKind::kCNOT:
      apply_cnot(amp, dim, g.q0, g.q1);
      break;
    case GateKind::kCP:
      apply_cp(amp, dim, g.q0, g.q1, g.angle);
      break;
    case GateKind::kMeasure:
      break;
  }
}

}  // namespace plaquette::detail

#endif  // PLAQUETTE_SRC_KERNELS_HPP
