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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "plaquette/circuit.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/models.hpp"

namespace plaquette {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr ZZDecomposition kAllDecompositions[] = {
    ZZDecomposition::kCnotPair, ZZDecomposition::kControlledPhase, ZZDecomposition::kSingleCnot};

Circuit random_circuit(std::mt19937_64& rng, int n, int gates) {
  std::uniform_int_distribution<int> kind(0, 7), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  Circuit c(n);
  for (int k = 0; k < gates; ++k) {
    const int a = qubit(rng);
    int b = qubit(rng);
    while (b == a) b = qubit(rng);
    switch (kind(rng)) {
      case 0: c.h(a); break;
      case 1: c.x(a); break;
      case 2: c.s(a); break;
      case 3: c.sdg(a); break;
      case 4: c.rx(a, angle(rng)); break;
      case 5: c.rz(a, angle(rng)); break;
      case 6: c.cnot(a, b); break;
      default: c.cp(a, b, angle(rng)); break;
    }
  }
  return c;
}

TEST(Circuit, ValidatesGates) {
  Circuit c(3);
  EXPECT_THROW(c.cnot(1, 1), InvalidArgument);
  EXPECT_THROW(c.h(3), InvalidArgument);
  EXPECT_THROW(c.rz(-1, 0.1), InvalidArgument);
  EXPECT_THROW(c.rx(0, std::nan("")), InvalidArgument);
  c.measure(0, 0);
  EXPECT_THROW(c.h(0), InvalidArgument);
  EXPECT_NO_THROW(c.h(1));
  EXPECT_EQ(c.num_clbits(), 1);
  EXPECT_THROW(c.inverse(), InvalidArgument);
  EXPECT_THROW(circuit_unitary(c), InvalidArgument);
  EXPECT_THROW(Circuit(0), InvalidArgument);
}

TEST(Circuit, UnitaryMatchesGateByGateOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Circuit c = random_circuit(rng, 4, 40);
    EXPECT_LT(oracle::max_abs(circuit_unitary(c) - oracle::circuit_unitary(c)), 1e-12);
  }
}

TEST(Circuit, InverseIsAdjoint) {
  std::mt19937_64 rng(22);
  const Circuit c = random_circuit(rng, 3, 30);
  const DenseOperator u = circuit_unitary(c);
  EXPECT_LT(oracle::max_abs(circuit_unitary(c.inverse()) - u.adjoint()), 1e-12);
  Circuit both = c;
  both.append(c.inverse());
  EXPECT_LT(oracle::max_abs(circuit_unitary(both) - DenseOperator::Identity(8, 8)), 1e-12);
}

TEST(Entangler, MatchesZZExponential) {
  const std::vector<int> system{0, 1, 3};
  const int anc = 2, n = 4;
  auto target = [&](double phi) {
    oracle::Mat zsum = oracle::Mat::Zero(16, 16);
    for (int j : system) {
      std::string s(4, 'I');
      s[static_cast<size_t>(anc)] = 'Z';
      s[static_cast<size_t>(j)] = 'Z';
      zsum += oracle::kron_string(s);
    }
    return oracle::expm(zsum, phi / 2);
  };
  for (double phi : {0.37, -1.2, kPi / 2}) {
    const Circuit pair = entangler(n, anc, system, phi, ZZDecomposition::kCnotPair);
    EXPECT_LT(oracle::max_abs(circuit_unitary(pair) - target(phi)), 1e-12);
    const Circuit cp = entangler(n, anc, system, phi, ZZDecomposition::kControlledPhase);
    EXPECT_LT(oracle::phase_distance(circuit_unitary(cp), target(phi)), 1e-12);
  }
  for (double phi : {kPi / 2, -kPi / 2}) {
    const Circuit one = entangler(n, anc, system, phi, ZZDecomposition::kSingleCnot);
    EXPECT_LT(oracle::phase_distance(circuit_unitary(one), target(phi)), 1e-12);
    EXPECT_EQ(metrics(one).cnot_count, 3);
  }
  EXPECT_THROW(entangler(n, anc, system, 0.3, ZZDecomposition::kSingleCnot), InvalidArgument);
  EXPECT_THROW(entangler(n, 1, system, 0.3), InvalidArgument);
  EXPECT_EQ(metrics(entangler(n, anc, system, 0.3)).cnot_count, 6);
}

TEST(Entangler, ConjugatesAncillaXIntoSignedString) {
  // E^dagger X_A E = s_N X_A Z..Z (even N) or s_N Y_A Z..Z (odd N).
  for (int weight = 1; weight <= 6; ++weight) {
    const int n = weight + 1, anc = weight;
    std::vector<int> system;
    for (int j = 0; j < weight; ++j) system.push_back(j);
    const oracle::Mat e = circuit_unitary(entangler(n, anc, system, kPi / 2));
    std::string xa(static_cast<size_t>(n), 'I');
    xa[static_cast<size_t>(anc)] = 'X';
    std::string expect(static_cast<size_t>(weight), 'Z');
    expect += weight % 2 == 0 ? 'X' : 'Y';
    const double s = (weight % 4 == 0 || weight % 4 == 3) ? 1.0 : -1.0;
    EXPECT_LT(oracle::max_abs(e.adjoint() * oracle::kron_string(xa) * e -
                              s * oracle::kron_string(expect)),
              1e-12)
        << "weight " << weight;
    EXPECT_EQ(ancilla_state_for(weight),
              weight % 2 == 0 ? AncillaState::kPlus : AncillaState::kPlusI);
  }
}

TEST(BasisChange, RotatesLettersToZ) {
  const PauliTerm term(1.0, "XYZI");
  const oracle::Mat b = circuit_unitary(basis_change(term, 4));
  EXPECT_LT(oracle::max_abs(b * oracle::kron_string("XYZI") * b.adjoint() -
                            oracle::kron_string("ZZZI")),
            1e-12);
}

// Exact evolution of a commuting sum vs the ancilla block of its circuit.
double identity_error(const PauliSum& h, double t, ZZDecomposition d) {
  const Circuit c = evolution_circuit(h, t, CompileOptions{d});
  const oracle::Mat u = oracle::circuit_unitary(c);
  const oracle::Mat expect = oracle::expm(oracle::Mat(to_matrix(h)), t);
  const Eigen::Index half = u.rows() / 2;
  const double leak = u.bottomLeftCorner(half, half).cwiseAbs().maxCoeff();
  return std::max(oracle::max_abs(oracle::ancilla_block(u) - expect), leak);
}

TEST(EvolutionCircuit, SingleTermsOfEveryWeight) {
  std::mt19937_64 rng(31);
  const char letters[] = {'X', 'Y', 'Z'};
  for (int weight = 1; weight <= 5; ++weight) {
    for (int trial = 0; trial < 3; ++trial) {
      std::string s(5, 'I');
      for (int q = 0; q < weight; ++q) s[static_cast<size_t>(q)] = letters[rng() % 3];
      PauliSum h(5);
      h.add(0.8 - 0.3 * trial, s);
      for (auto d : kAllDecompositions) {
        EXPECT_LT(identity_error(h, 0.9, d), 1e-12) << s;
      }
    }
  }
}

TEST(EvolutionCircuit, MixedParityTermsReuseTheAncilla) {
  PauliSum h(3);
  h.add(0.7, "ZZI");
  h.add(-0.4, "ZZZ");
  h.add(0.25, "IIZ");
  h.add(1.1, "XXI");
  ASSERT_TRUE(all_commute(h));
  for (auto d : kAllDecompositions) {
    for (double t : {0.1, 1.0, 2.6}) EXPECT_LT(identity_error(h, t, d), 1e-12);
  }
}

TEST(EvolutionCircuit, AllModelsAllDecompositions) {
  struct Case {
    GaugeGroup group;
    GeometryKind geom;
  };
  const Case cases[] = {{GaugeGroup::kZ2, GeometryKind::kSquare1},
                        {GaugeGroup::kZ2, GeometryKind::kTriangle1},
                        {GaugeGroup::kZ2, GeometryKind::kTwoSquarePbc},
                        {GaugeGroup::kU1, GeometryKind::kSquare1},
                        {GaugeGroup::kU1, GeometryKind::kTriangle1}};
  for (const auto& k : cases) {
    const PauliSum h = build_hamiltonian(GaugeModel{k.group, 1.3, 0.0, Convention::kPauli},
                                         Geometry::of(k.geom));
    for (auto d : kAllDecompositions) {
      for (double t : {0.05, 0.77, 2.0, 5.5}) {
        EXPECT_LT(identity_error(h, t, d), 1e-10) << to_string(k.group) << to_string(k.geom);
      }
    }
  }
}

TEST(EvolutionCircuit, RejectsNonCommutingSums) {
  const PauliSum h = build_hamiltonian(GaugeModel{GaugeGroup::kU1}, Geometry::two_square_pbc());
  EXPECT_THROW(evolution_circuit(h, 1.0), NonCommutingTerms);
  PauliSum xz(1);
  xz.add(1.0, "X");
  xz.add(1.0, "Z");
  EXPECT_THROW(evolution_circuit(xz, 1.0), NonCommutingTerms);
}

TEST(EvolutionCircuit, IdentityOnlySumIsEmpty) {
  PauliSum h(2);
  h.add(3.0, "II");
  EXPECT_EQ(evolution_circuit(h, 1.0).size(), 0U);
}

TEST(ModelCircuit, CnotCounts) {
  auto count = [](GaugeGroup g, GeometryKind k, ZZDecomposition d) {
    return metrics(model_circuit(GaugeModel{g}, Geometry::of(k), 0.5,
                                 std::string(static_cast<size_t>(Geometry::of(k).num_links()), '0'),
                                 natural_basis(g), CompileOptions{d}))
        .cnot_count;
  };
  EXPECT_EQ(count(GaugeGroup::kZ2, GeometryKind::kSquare1, ZZDecomposition::kSingleCnot), 8);
  EXPECT_EQ(count(GaugeGroup::kZ2, GeometryKind::kSquare1, ZZDecomposition::kCnotPair), 16);
  EXPECT_EQ(count(GaugeGroup::kZ2, GeometryKind::kSquare1, ZZDecomposition::kControlledPhase), 0);
  EXPECT_EQ(count(GaugeGroup::kZ2, GeometryKind::kTriangle1, ZZDecomposition::kSingleCnot), 6);
  EXPECT_EQ(count(GaugeGroup::kZ2, GeometryKind::kTwoSquarePbc, ZZDecomposition::kSingleCnot),
            16);
  EXPECT_EQ(count(GaugeGroup::kU1, GeometryKind::kSquare1, ZZDecomposition::kSingleCnot), 64);
  EXPECT_EQ(count(GaugeGroup::kU1, GeometryKind::kTriangle1, ZZDecomposition::kSingleCnot), 24);
}

TEST(ModelCircuit, LayoutAndMeasurements) {
  const Circuit c = model_circuit(GaugeModel{}, Geometry::square1(), 0.3, "0101", Basis::kX);
  EXPECT_EQ(c.num_qubits(), 5);
  EXPECT_EQ(c.num_clbits(), 4);
  EXPECT_EQ(c.ancillas(), std::vector<int>{4});
  int measures = 0;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::kMeasure) {
      EXPECT_EQ(g.q0, g.clbit);
      ++measures;
    }
  }
  EXPECT_EQ(measures, 4);
  EXPECT_THROW(model_circuit(GaugeModel{}, Geometry::square1(), 0.3, "01", Basis::kX),
               InvalidArgument);
  EXPECT_THROW(model_circuit(GaugeModel{GaugeGroup::kZ2, 1.0, 0.2}, Geometry::square1(), 0.3,
                             "0000", Basis::kX),
               InvalidArgument);
}

TEST(Metrics, TwoQubitDepth) {
  Circuit c(4);
  c.cnot(0, 1).cnot(2, 3).cnot(1, 2).h(0).cp(0, 1, 0.2);
  const CircuitMetrics m = metrics(c);
  EXPECT_EQ(m.cnot_count, 3);
  EXPECT_EQ(m.two_qubit_count, 4);
  EXPECT_EQ(m.two_qubit_depth, 3);
  EXPECT_EQ(m.qubit_count, 4);
}

TEST(RestrictedUnitary, MatchesBlock) {
  std::mt19937_64 rng(41);
  const Circuit c = random_circuit(rng, 3, 20);
  const DenseOperator u = circuit_unitary(c);
  EXPECT_LT(oracle::max_abs(restricted_unitary(u, 3, 2) - oracle::ancilla_block(u)), 1e-15);
  const DenseOperator low = restricted_unitary(u, 3, 0);
  EXPECT_EQ(low.rows(), 4);
  EXPECT_EQ(low(1, 2), u(2, 4));
}

TEST(TextFormat, RoundTrip) {
  const Circuit c = model_circuit(GaugeModel{GaugeGroup::kU1}, Geometry::triangle1(), 0.731,
                                  "010", Basis::kZ);
  EXPECT_EQ(parse_circuit(to_text(c)), c);
  std::mt19937_64 rng(5);
  const Circuit r = random_circuit(rng, 5, 50);
  EXPECT_EQ(parse_circuit(to_text(r)), r);
}

TEST(TextFormat, ParsesDocumentedExample) {
  const Circuit c = parse_circuit(
      "# comment\nqubits 5\nclbits 4\nancilla 4\nH 0\nRZ 4 1.5707963267948966\nCNOT 0 4\n"
      "CP 0 4 -3.1415926535897931\nMEASURE 0 0\n");
  ASSERT_EQ(c.size(), 5U);
  EXPECT_EQ(c.gates()[2], (Gate{GateKind::kCNOT, 0, 4}));
  EXPECT_EQ(c.gates()[3].angle, -3.1415926535897931);
  EXPECT_EQ(c.ancillas(), std::vector<int>{4});
  EXPECT_THROW(parse_circuit("H 0\n"), InvalidArgument);
  EXPECT_THROW(parse_circuit("qubits 2\nFOO 0\n"), InvalidArgument);
  EXPECT_THROW(parse_circuit("qubits 2\nCNOT 0\n"), InvalidArgument);
}

}  // namespace
}  // namespace plaquette
