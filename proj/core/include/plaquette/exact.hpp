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

// Exact-diagonalization reference dynamics. Every circuit and sampling result
// in the library is checked against these functions.

#ifndef PLAQUETTE_EXACT_HPP
#define PLAQUETTE_EXACT_HPP

#include <memory>

#include "plaquette/pauli.hpp"

namespace plaquette {

/// Eigen-decomposition H = V diag(E) V^dagger.
struct Spectrum {
  Eigen::VectorXd energies;
  DenseOperator vectors;
};

/// Diagonalizes a Pauli-sum Hamiltonian. Results are cached per operator
/// (keyed by PauliSum::canonical_key) and the cache is safe for concurrent use.
std::shared_ptr<const Spectrum> diagonalize(const PauliSum& h);

/// Uncached diagonalization of a dense Hermitian matrix; throws NonHermitian
/// when max |H - H^dagger| >= 1e-12.
Spectrum diagonalize(const DenseOperator& h);

/// e^{-iHt} |psi0>, computed as sum_n e^{-i E_n t} c_n |n>.
StateVector exact_evolve(const PauliSum& h, const StateVector& psi0, double t);
StateVector exact_evolve(const Spectrum& spectrum, const StateVector& psi0, double t);

/// Dense propagator e^{-iHt}.
DenseOperator exact_propagator(const PauliSum& h, double t);

/// |<psi0|psit>|^2, clamped into [0, 1] against rounding.
double loschmidt(const StateVector& psi0, const StateVector& psit);

/// <psi|O|psi> for a Hermitian Pauli sum.
double expectation(const PauliSum& observable, const StateVector& psi);

/// Number of spectra currently cached (diagnostics and tests).
size_t spectrum_cache_size();
void clear_spectrum_cache();

}  // namespace plaquette

#endif  // PLAQUETTE_EXACT_HPP
