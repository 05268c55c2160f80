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

#include "plaquette/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "plaquette/errors.hpp"

namespace plaquette {

namespace {

constexpr double kMergeZero = 1e-15;

bool is_pauli_letter(char c) {
  return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

std::string format_coefficient(double c) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}

// Single-qubit product table: a*b = phase * letter.
std::pair<Complex, char> multiply_letter(char a, char b) {
  const Complex i(0.0, 1.0);
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  if (a == 'X' && b == 'Y') return {i, 'Z'};
  if (a == 'Y' && b == 'X') return {-i, 'Z'};
  if (a == 'Y' && b == 'Z') return {i, 'X'};
  if (a == 'Z' && b == 'Y') return {-i, 'X'};
  if (a == 'Z' && b == 'X') return {i, 'Y'};
  return {-i, 'Y'};  // X*Z
}

}  // namespace

PauliTerm::PauliTerm(double coefficient, std::string letters)
    : coefficient_(coefficient), letters_(std::move(letters)) {
  if (letters_.empty()) {
    throw InvalidArgument("Pauli string must act on at least one qubit");
  }
  if (letters_.size() > 64) {
    throw InvalidArgument("Pauli strings are limited to 64 qubits");
  }
  for (char c : letters_) {
    if (!is_pauli_letter(c)) {
      throw InvalidArgument(std::string("invalid Pauli letter '") + c + "' in " +
                            letters_);
    }
  }
  if (!std::isfinite(coefficient_)) {
    throw InvalidArgument("Pauli coefficient must be finite");
  }
}

int PauliTerm::weight() const {
  return static_cast<int>(
      std::count_if(letters_.begin(), letters_.end(), [](char c) { return c != 'I'; }));
}

std::vector<int> PauliTerm::support() const {
  std::vector<int> out;
  for (int q = 0; q < num_qubits(); ++q) {
    if (letter(q) != 'I') out.push_back(q);
  }
  return out;
}

std::uint64_t PauliTerm::x_mask() const {
  std::uint64_t m = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    if (letter(q) == 'X' || letter(q) == 'Y') m |= std::uint64_t{1} << q;
  }
  return m;
}

std::uint64_t PauliTerm::z_mask() const {
  std::uint64_t m = 0;
  for (int q = 0; q < num_qubits(); ++q) {
    if (letter(q) == 'Z' || letter(q) == 'Y') m |= std::uint64_t{1} << q;
  }
  return m;
}

std::string PauliTerm::to_string() const {
  return format_coefficient(coefficient_) + "*" + letters_;
}

PauliSum::PauliSum(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("PauliSum needs at least one qubit");
}

PauliSum::PauliSum(int num_qubits, const std::vector<PauliTerm>& terms)
    : PauliSum(num_qubits) {
  for (const auto& t : terms) add(t);
}

void PauliSum::add(const PauliTerm& term) {
  if (term.num_qubits() != num_qubits_) {
    throw InvalidArgument("term " + term.letters() + " has " +
                          std::to_string(term.num_qubits()) + " qubits, sum has " +
                          std::to_string(num_qubits_));
  }
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const PauliTerm& t) {
    return t.letters() == term.letters();
  });
  if (it == terms_.end()) {
    if (std::abs(term.coefficient()) > kMergeZero) terms_.push_back(term);
    return;
  }
  const double c = it->coefficient() + term.coefficient();
  if (std::abs(c) <= kMergeZero) {
    terms_.erase(it);
  } else {
    *it = PauliTerm(c, term.letters());
  }
}

PauliSum PauliSum::scaled(double factor) const {
  PauliSum out(num_qubits_);
  for (const auto& t : terms_) out.add(t.scaled(factor));
  return out;
}

std::string PauliSum::canonical_key() const {
  std::vector<PauliTerm> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const PauliTerm& a, const PauliTerm& b) {
    return a.letters() < b.letters();
  });
  std::string key = std::to_string(num_qubits_) + ":";
  for (const auto& t : sorted) key += t.to_string() + ";";
  return key;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (size_t k = 0; k < terms_.size(); ++k) {
    if (k) os << " + ";
    os << terms_[k].to_string();
  }
  return os.str();
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidArgument("cannot add PauliSums on different registers");
  }
  PauliSum out = a;
  for (const auto& t : b.terms()) out.add(t);
  return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidArgument("cannot multiply PauliSums on different registers");
  }
  std::map<std::string, Complex> acc;
  std::vector<std::string> order;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [phase, letters] = multiply(ta.letters(), tb.letters());
      auto [it, inserted] = acc.try_emplace(letters, 0.0);
      if (inserted) order.push_back(letters);
      it->second += phase * ta.coefficient() * tb.coefficient();
    }
  }
  PauliSum out(a.num_qubits());
  for (const auto& letters : order) {
    const Complex c = acc[letters];
    if (std::abs(c.imag()) > 1e-12) {
      throw InvalidArgument("product has an imaginary coefficient on " + letters);
    }
    out.add(c.real(), letters);
  }
  return out;
}

std::pair<Complex, std::string> multiply(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) throw InvalidArgument("Pauli string length mismatch");
  Complex phase = 1.0;
  std::string out(a.size(), 'I');
  for (size_t q = 0; q < a.size(); ++q) {
    auto [p, l] = multiply_letter(a[q], b[q]);
    phase *= p;
    out[q] = l;
  }
  return {phase, out};
}

bool commutes(const PauliTerm& a, const PauliTerm& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidArgument("commutes: strings " + a.letters() + " and " + b.letters() +
                          " have different lengths");
  }
  int clashes = 0;
  for (int q = 0; q < a.num_qubits(); ++q) {
    const char x = a.letter(q), y = b.letter(q);
    if (x != 'I' && y != 'I' && x != y) ++clashes;
  }
  return clashes % 2 == 0;
}

bool all_commute(const PauliSum& sum) {
  const auto& t = sum.terms();
  for (size_t i = 0; i < t.size(); ++i) {
    for (size_t j = i + 1; j < t.size(); ++j) {
      if (!commutes(t[i], t[j])) return false;
    }
  }
  return true;
}

DenseOperator term_to_matrix(const PauliTerm& term) {
  const int n = term.num_qubits();
  if (n > kMaxDenseQubits) {
    throw DimensionError("dense matrix requested for " + std::to_string(n) +
                         " qubits (cap " + std::to_string(kMaxDenseQubits) + ")");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t xm = term.x_mask();
  const std::uint64_t zm = term.z_mask();
  const int num_y = std::popcount(xm & zm);
  // Y|b> = i (-1)^b |1-b>, so each column is a single entry.
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = term.coefficient() * kIPow[num_y % 4];
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double sign = (std::popcount(col & zm) % 2) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col)) = base * sign;
  }
  return m;
}

DenseOperator to_matrix(const PauliSum& sum) {
  const int n = sum.num_qubits();
  if (n > kMaxDenseQubits) {
    throw DimensionError("dense matrix requested for " + std::to_string(n) +
                         " qubits (cap " + std::to_string(kMaxDenseQubits) + ")");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& t : sum.terms()) m += term_to_matrix(t);
  return m;
}

double hermiticity_defect(const DenseOperator& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("operator is not square");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

std::uint64_t label_to_index(std::string_view label) {
  if (label.empty() || label.size() > 64) {
    throw InvalidArgument("bitstring label must have 1..64 characters");
  }
  std::uint64_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("bitstring label '" + std::string(label) +
                            "' contains characters other than 0/1");
    }
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

std::string index_to_label(std::uint64_t index, int num_qubits) {
  std::string out(static_cast<size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> q) & 1U) out[static_cast<size_t>(num_qubits - 1 - q)] = '1';
  }
  return out;
}

}  // namespace plaquette
