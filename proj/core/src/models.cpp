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

#include "plaquette/models.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "plaquette/errors.hpp"

namespace plaquette {

namespace {

constexpr double kChargeTolerance = 1e-9;

std::string letters_on(int num_links, const std::vector<int>& links, char letter) {
  std::string s(static_cast<size_t>(num_links), 'I');
  for (int l : links) s[static_cast<size_t>(l - 1)] = letter;
  return s;
}

// Expands -g (prod_k S^{s_k}_{l_k} + h.c.) with S^± = (X ± iY) * norm into
// Pauli strings. Only strings with an even number of Y survive the
// Hermitian sum, each with coefficient -g * 2 Re(prod phases) * norm^N.
void add_u1_plaquette(PauliSum& h, int num_links, const Plaquette& p, double g,
                      double norm) {
  const int n = static_cast<int>(p.links.size());
  const double scale = -g * 2.0 * std::pow(norm, n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Complex phase = 1.0;
    std::string letters(static_cast<size_t>(num_links), 'I');
    for (int k = 0; k < n; ++k) {
      const bool y = (mask >> k) & 1;
      letters[static_cast<size_t>(p.links[static_cast<size_t>(k)] - 1)] = y ? 'Y' : 'X';
      if (y) phase *= Complex(0.0, static_cast<double>(p.raise[static_cast<size_t>(k)]));
    }
    const double c = scale * phase.real();
    if (std::abs(c) > 1e-15) h.add(c, letters);
  }
}

void require_sector_size(const Geometry& geom, const SectorSpec& sector) {
  if (sector.charges.size() != geom.sites().size()) {
    throw InvalidArgument("sector needs one Gauss value per site (" +
                          std::to_string(geom.sites().size()) + "), got " +
                          std::to_string(sector.charges.size()));
  }
}

}  // namespace

Geometry Geometry::square1() {
  Geometry g;
  g.kind_ = GeometryKind::kSquare1;
  g.name_ = "square-1";
  g.num_links_ = 4;
  g.sites_ = {{"A", {{1, +1}, {4, +1}}},
              {"B", {{2, +1}, {1, -1}}},
              {"C", {{3, -1}, {2, -1}}},
              {"D", {{3, +1}, {4, -1}}}};
  // bottom, right, top, left: U = S+_1 S+_2 S-_3 S-_4
  g.plaquettes_ = {{{1, 2, 3, 4}, {+1, +1, -1, -1}}};
  return g;
}

Geometry Geometry::triangle1() {
  Geometry g;
  g.kind_ = GeometryKind::kTriangle1;
  g.name_ = "triangle-1";
  g.num_links_ = 3;
  g.sites_ = {{"A", {{2, +1}, {1, -1}}},
              {"B", {{3, +1}, {2, -1}}},
              {"C", {{1, +1}, {3, -1}}}};
  g.plaquettes_ = {{{1, 2, 3}, {+1, +1, +1}}};
  return g;
}

Geometry Geometry::two_square_pbc() {
  Geometry g;
  g.kind_ = GeometryKind::kTwoSquarePbc;
  g.name_ = "two-square-pbc";
  g.num_links_ = 6;
  g.sites_ = {{"A", {{1, +1}, {4, +1}, {5, -1}}},
              {"B", {{5, +1}, {2, +1}, {1, -1}}},
              {"C", {{6, +1}, {3, -1}, {2, -1}}},
              {"D", {{3, +1}, {4, -1}, {6, -1}}}};
  g.plaquettes_ = {{{1, 2, 3, 4}, {+1, +1, -1, -1}},
                   {{5, 4, 6, 2}, {+1, +1, -1, -1}}};
  return g;
}

Geometry Geometry::of(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::kSquare1:
      return square1();
    case GeometryKind::kTriangle1:
      return triangle1();
    case GeometryKind::kTwoSquarePbc:
      return two_square_pbc();
  }
  throw UnsupportedModel("unknown geometry");
}

int Geometry::site_index(std::string_view name) const {
  for (size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i].name == name) return static_cast<int>(i);
  }
  throw InvalidArgument("geometry " + name_ + " has no site '" + std::string(name) + "'");
}

PauliSum build_hamiltonian(const GaugeModel& model, const Geometry& geom) {
  const int n = geom.num_links();
  PauliSum h(n);
  if (model.group == GaugeGroup::kZ2) {
    for (const auto& p : geom.plaquettes()) {
      const double scale = model.convention == Convention::kSpinHalf
                               ? std::pow(0.5, static_cast<double>(p.links.size()))
                               : 1.0;
      h.add(-model.g * scale, letters_on(n, p.links, 'Z'));
    }
    if (model.gamma != 0.0) {
      const double scale = model.convention == Convention::kSpinHalf ? 0.5 : 1.0;
      for (int l = 1; l <= n; ++l) h.add(-model.gamma * scale, letters_on(n, {l}, 'X'));
    }
    return h;
  }
  if (model.gamma != 0.0) {
    throw UnsupportedModel("the transverse-field term exists only for the Z2 model");
  }
  const double norm =
      model.convention == Convention::kSpinHalf ? 0.5 : 1.0 / std::sqrt(2.0);
  for (const auto& p : geom.plaquettes()) add_u1_plaquette(h, n, p, model.g, norm);
  return h;
}

std::vector<PauliSum> gauss_operators(const GaugeModel& model, const Geometry& geom) {
  const int n = geom.num_links();
  std::vector<PauliSum> out;
  for (const auto& site : geom.sites()) {
    PauliSum op(n);
    if (model.group == GaugeGroup::kZ2) {
      std::vector<int> links;
      for (const auto& il : site.links) links.push_back(il.link);
      op.add(1.0, letters_on(n, links, 'X'));
    } else {
      for (const auto& il : site.links) {
        op.add(0.5 * il.orientation, letters_on(n, {il.link}, 'Z'));
      }
    }
    out.push_back(std::move(op));
  }
  return out;
}

WindingOperators winding_operators(const Geometry& geom) {
  if (geom.kind() != GeometryKind::kTwoSquarePbc) {
    throw UnsupportedModel("winding operators are defined only for two-square-pbc");
  }
  const int n = geom.num_links();
  WindingOperators w{PauliSum(n), PauliSum(n), PauliSum(n)};
  w.wx.add(1.0, letters_on(n, {4, 2}, 'X'));
  w.wy13.add(1.0, letters_on(n, {1, 3}, 'X'));
  w.wy56.add(1.0, letters_on(n, {5, 6}, 'X'));
  return w;
}

std::vector<double> gauss_values(const GaugeModel& model, const Geometry& geom,
                                 std::string_view label) {
  if (static_cast<int>(label.size()) != geom.num_links()) {
    throw InvalidArgument("label '" + std::string(label) + "' does not have " +
                          std::to_string(geom.num_links()) + " links");
  }
  const std::uint64_t index = label_to_index(label);
  auto bit = [&](int link) { return static_cast<int>((index >> (link - 1)) & 1U); };
  std::vector<double> out;
  for (const auto& site : geom.sites()) {
    if (model.group == GaugeGroup::kZ2) {
      int parity = 0;
      for (const auto& il : site.links) parity ^= bit(il.link);
      out.push_back(parity ? -1.0 : 1.0);
    } else {
      double charge = 0.0;
      for (const auto& il : site.links) {
        charge += il.orientation * (bit(il.link) ? -0.5 : 0.5);
      }
      out.push_back(charge);
    }
  }
  return out;
}

std::vector<std::string> enumerate_sector(const GaugeModel& model, const Geometry& geom,
                                          const SectorSpec& sector) {
  require_sector_size(geom, sector);
  for (double c : sector.charges) {
    if (model.group == GaugeGroup::kZ2 && c != 1.0 && c != -1.0) {
      throw InvalidArgument("Z2 Gauss eigenvalues must be +1 or -1");
    }
    if (model.group == GaugeGroup::kU1 && std::abs(2.0 * c - std::round(2.0 * c)) > 0.0) {
      throw InvalidArgument("U(1) charges must be multiples of 1/2");
    }
  }
  const bool want_winding = sector.winding_x.has_value() || sector.winding_y.has_value();
  if (want_winding && (geom.kind() != GeometryKind::kTwoSquarePbc ||
                       model.group != GaugeGroup::kZ2)) {
    throw InvalidArgument("winding labels apply only to the Z2 two-square-pbc lattice");
  }
  const int n = geom.num_links();
  std::vector<std::string> out;
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
    const std::string label = index_to_label(index, n);
    const auto values = gauss_values(model, geom, label);
    bool match = true;
    for (size_t s = 0; s < values.size() && match; ++s) {
      match = std::abs(values[s] - sector.charges[s]) < kChargeTolerance;
    }
    if (match && want_winding) {
      auto bit = [&](int link) { return static_cast<int>((index >> (link - 1)) & 1U); };
      const int wx = (bit(4) ^ bit(2)) ? -1 : 1;
      const int wy = (bit(1) ^ bit(3)) ? -1 : 1;
      if (sector.winding_x && *sector.winding_x != wx) match = false;
      if (sector.winding_y && *sector.winding_y != wy) match = false;
    }
    if (match) out.push_back(label);
  }
  return out;
}

StateVector initial_state(const Geometry& geom, std::string_view label, Basis basis) {
  const int n = geom.num_links();
  if (static_cast<int>(label.size()) != n) {
    throw InvalidArgument("initial state label '" + std::string(label) + "' must have " +
                          std::to_string(n) + " characters");
  }
  const std::uint64_t index = label_to_index(label);
  const Eigen::Index dim = Eigen::Index{1} << n;
  StateVector psi = StateVector::Zero(dim);
  if (basis == Basis::kZ) {
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
  }
  // <j|(x)_q H|b_q> = 2^{-n/2} (-1)^{popcount(j & b)}
  const double amp = std::pow(2.0, -0.5 * n);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const int parity = std::popcount(static_cast<std::uint64_t>(j) & index) & 1;
    psi(j) = parity ? -amp : amp;
  }
  return psi;
}

Basis natural_basis(GaugeGroup group) {
  return group == GaugeGroup::kZ2 ? Basis::kX : Basis::kZ;
}

GaugeGroup parse_gauge_group(std::string_view text) {
  if (text == "z2" || text == "Z2") return GaugeGroup::kZ2;
  if (text == "u1" || text == "U1") return GaugeGroup::kU1;
  throw InvalidArgument("unknown gauge group '" + std::string(text) + "' (z2|u1)");
}

GeometryKind parse_geometry(std::string_view text) {
  if (text == "square1" || text == "square-1") return GeometryKind::kSquare1;
  if (text == "triangle1" || text == "triangle-1") return GeometryKind::kTriangle1;
  if (text == "two_square_pbc" || text == "two-square-pbc") {
    return GeometryKind::kTwoSquarePbc;
  }
  throw InvalidArgument("unknown geometry '" + std::string(text) +
                        "' (square1|triangle1|two_square_pbc)");
}

Convention parse_convention(std::string_view text) {
  if (text == "pauli") return Convention::kPauli;
  if (text == "spin-half" || text == "spin_half") return Convention::kSpinHalf;
  throw InvalidArgument("unknown convention '" + std::string(text) + "' (pauli|spin-half)");
}

Basis parse_basis(std::string_view text) {
  if (text == "z") return Basis::kZ;
  if (text == "x") return Basis::kX;
  throw InvalidArgument("unknown basis '" + std::string(text) + "' (x|z)");
}

std::string to_string(GaugeGroup group) { return group == GaugeGroup::kZ2 ? "z2" : "u1"; }

std::string to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::kSquare1:
      return "square1";
    case GeometryKind::kTriangle1:
      return "triangle1";
    case GeometryKind::kTwoSquarePbc:
      return "two_square_pbc";
  }
  return "?";
}

std::string to_string(Convention convention) {
  return convention == Convention::kPauli ? "pauli" : "spin-half";
}

std::string to_string(Basis basis) { return basis == Basis::kX ? "x" : "z"; }

}  // namespace plaquette
