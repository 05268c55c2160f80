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

#include "plaquette/exact.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "plaquette/errors.hpp"

namespace plaquette {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kOrthonormalTolerance = 1e-10;

struct SpectrumCache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, std::shared_ptr<const Spectrum>> entries;
};

SpectrumCache& cache() {
  static SpectrumCache instance;
  return instance;
}

}  // namespace

Spectrum diagonalize(const DenseOperator& h) {
  if (h.rows() != h.cols() || h.rows() == 0 || (h.rows() & (h.rows() - 1)) != 0) {
    throw InvalidArgument("Hamiltonian must be square with power-of-two dimension");
  }
  if (h.rows() > (Eigen::Index{1} << kMaxDenseQubits)) {
    throw DimensionError("Hamiltonian exceeds the dense qubit cap");
  }
  const double defect = hermiticity_defect(h);
  if (defect >= kHermitianTolerance) {
    throw NonHermitian("Hamiltonian is not Hermitian (max |H - H^dagger| = " +
                       std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("eigen-decomposition failed");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  const auto gram = s.vectors.adjoint() * s.vectors;
  const double ortho =
      (gram - DenseOperator::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
  if (ortho > kOrthonormalTolerance) {
    throw Error("eigenvectors are not orthonormal within tolerance");
  }
  return s;
}

std::shared_ptr<const Spectrum> diagonalize(const PauliSum& h) {
  const std::string key = h.canonical_key();
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.entries.find(key);
    if (it != c.entries.end()) return it->second;
  }
  auto spectrum = std::make_shared<const Spectrum>(diagonalize(to_matrix(h)));
  std::unique_lock lock(c.mutex);
  auto [it, inserted] = c.entries.try_emplace(key, std::move(spectrum));
  return it->second;
}

StateVector exact_evolve(const Spectrum& spectrum, const StateVector& psi0, double t) {
  if (psi0.size() != spectrum.vectors.rows()) {
    throw InvalidArgument("state dimension does not match Hamiltonian");
  }
  StateVector coeffs = spectrum.vectors.adjoint() * psi0;
  for (Eigen::Index n = 0; n < coeffs.size(); ++n) {
    coeffs(n) *= std::polar(1.0, -spectrum.energies(n) * t);
  }
  return spectrum.vectors * coeffs;
}

StateVector exact_evolve(const PauliSum& h, const StateVector& psi0, double t) {
  if (h.num_qubits() > kMaxDenseQubits) {
    throw DimensionError("exact_evolve is capped at " + std::to_string(kMaxDenseQubits) +
                         " qubits");
  }
  return exact_evolve(*diagonalize(h), psi0, t);
}

DenseOperator exact_propagator(const PauliSum& h, double t) {
  const auto s = diagonalize(h);
  Eigen::VectorXcd phases(s->energies.size());
  for (Eigen::Index n = 0; n < phases.size(); ++n) {
    phases(n) = std::polar(1.0, -s->energies(n) * t);
  }
  return s->vectors * phases.asDiagonal() * s->vectors.adjoint();
}

double loschmidt(const StateVector& psi0, const StateVector& psit) {
  if (psi0.size() != psit.size()) {
    throw InvalidArgument("loschmidt: state dimensions differ");
  }
  return std::clamp(std::norm(psi0.dot(psit)), 0.0, 1.0);
}

double expectation(const PauliSum& observable, const StateVector& psi) {
  const DenseOperator o = to_matrix(observable);
  if (o.rows() != psi.size()) {
    throw InvalidArgument("expectation: observable and state dimensions differ");
  }
  return psi.dot(o * psi).real();
}

size_t spectrum_cache_size() {
  std::shared_lock lock(cache().mutex);
  return cache().entries.size();
}

void clear_spectrum_cache() {
  std::unique_lock lock(cache().mutex);
  cache().entries.clear();
}

}  // namespace plaquette
