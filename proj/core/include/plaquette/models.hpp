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

// Z2 and U(1) plaquette models: Hamiltonians, Gauss-law and winding
// operators, superselection sectors and initial product states.
//
// Link l (1-based, as numbered in the lattice figures) lives on qubit l-1.
// Basis-state labels therefore read links n..1 from left to right; for the
// periodic two-plaquette lattice "111010" has links 2, 4, 5, 6 at bit 0 and
// links 1, 3 at bit 1.
//
// Lattices:
//
//   square-1         D --3-- C       triangle-1        C
//                    |       |                        / \     (apex C)
//                    4       2                       1   3
//                    |       |                      /     \   (base A-B)
//                    A --1-- B                     A --2-- B
//
//   two-square-pbc   D --3-- C --6-- (D)    links 5 and 6 wrap around the
//                    |       |              periodic x direction; link 4
//                    4       2              is shared by both plaquettes
//                    |       |              on the left/right.
//                    A --1-- B --5-- (A)
//
// U(1) links are oriented along +x and +y (triangle: cyclically A->B->C->A),
// and E = sigma^z / 2 so bit 0 carries E = +1/2 and bit 1 carries E = -1/2.

#ifndef PLAQUETTE_MODELS_HPP
#define PLAQUETTE_MODELS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plaquette/pauli.hpp"

namespace plaquette {

enum class GaugeGroup { kZ2, kU1 };
enum class GeometryKind { kSquare1, kTriangle1, kTwoSquarePbc };

/// Normalization of the spin operators inside the Hamiltonian.
///  kPauli:    couplings multiply full Pauli strings (-g ZZZZ for Z2,
///             S^± = (sigma^x ± i sigma^y)/sqrt(2) for U(1)).
///  kSpinHalf: S = sigma/2 and S^± = (sigma^x ± i sigma^y)/2, which rescales
///             an N-link plaquette by 2^-N (Z2) or 2^-N/2 (U(1)).
enum class Convention { kPauli, kSpinHalf };

/// Single-qubit basis used for state labels and measurement.
enum class Basis { kZ, kX };

/// A link incident on a site, with +1 if the link points away from the site.
struct IncidentLink {
  int link;  // 1-based
  int orientation;
};

struct Site {
  std::string name;
  std::vector<IncidentLink> links;
};

/// Plaquette as an ordered link list plus the raising (+1) / lowering (-1)
/// pattern of its U(1) plaquette operator.
struct Plaquette {
  std::vector<int> links;
  std::vector<int> raise;
};

class Geometry {
 public:
  static Geometry square1();
  static Geometry triangle1();
  static Geometry two_square_pbc();
  static Geometry of(GeometryKind kind);

  GeometryKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int num_links() const { return num_links_; }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  /// Index of a site by name ("A", "B", ...); throws InvalidArgument.
  int site_index(std::string_view name) const;

 private:
  GeometryKind kind_ = GeometryKind::kSquare1;
  std::string name_;
  int num_links_ = 0;
  std::vector<Site> sites_;
  std::vector<Plaquette> plaquettes_;
};

struct GaugeModel {
  GaugeGroup group = GaugeGroup::kZ2;
  double g = 1.0;
  /// Transverse field -gamma * sum_i sigma^x_i, Z2 only. Construction is
  /// allowed; evolution circuits require gamma == 0.
  double gamma = 0.0;
  Convention convention = Convention::kPauli;
};

/// Gauss-law eigenvalue per site (Z2: ±1, U(1): charge) and optional
/// winding labels for the periodic two-plaquette lattice.
struct SectorSpec {
  std::vector<double> charges;
  std::optional<int> winding_x;
  std::optional<int> winding_y;
};

struct WindingOperators {
  PauliSum wx;
  PauliSum wy13;
  PauliSum wy56;
};

PauliSum build_hamiltonian(const GaugeModel& model, const Geometry& geom);

/// One operator per site, in Geometry::sites() order.
std::vector<PauliSum> gauss_operators(const GaugeModel& model, const Geometry& geom);

/// W_x = sigma^x_4 sigma^x_2, W_y = sigma^x_1 sigma^x_3 = sigma^x_5 sigma^x_6.
WindingOperators winding_operators(const Geometry& geom);

/// Computational states of the sector in ascending index order (empty if
/// the sector has no states). Z2 states are x-basis labels, U(1) states are
/// z-basis labels.
std::vector<std::string> enumerate_sector(const GaugeModel& model, const Geometry& geom,
                                          const SectorSpec& sector);

/// Product state for a label. For Basis::kX bit 0 maps to |+> and bit 1 to
/// |-> = (|0> - |1>)/sqrt(2).
StateVector initial_state(const Geometry& geom, std::string_view label, Basis basis);

/// Basis in which the model is naturally quantized: x for Z2, z for U(1).
Basis natural_basis(GaugeGroup group);

/// Gauss eigenvalues of a basis label (label in the natural basis).
std::vector<double> gauss_values(const GaugeModel& model, const Geometry& geom,
                                 std::string_view label);

GaugeGroup parse_gauge_group(std::string_view text);
GeometryKind parse_geometry(std::string_view text);
Convention parse_convention(std::string_view text);
Basis parse_basis(std::string_view text);
std::string to_string(GaugeGroup group);
std::string to_string(GeometryKind kind);
std::string to_string(Convention convention);
std::string to_string(Basis basis);

}  // namespace plaquette

#endif  // PLAQUETTE_MODELS_HPP
