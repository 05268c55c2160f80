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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracle/oracle.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/transpile.hpp"

namespace plaquette {
namespace {

Circuit strip_measurements(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::kMeasure) out.add(g);
  }
  return out;
}

Circuit pad(const Circuit& c, int width) {
  Circuit out(width);
  for (const auto& g : c.gates()) out.add(g);
  return out;
}

// U_routed P(initial) == P(final) U_original on the padded register.
double routing_defect(const Circuit& logical, const TranspileResult& r) {
  const int p = r.circuit.num_qubits();
  const DenseOperator u = oracle::circuit_unitary(strip_measurements(pad(logical, p)));
  const DenseOperator v = oracle::circuit_unitary(strip_measurements(r.circuit));
  return oracle::max_abs(v * layout_permutation(r.initial_layout) -
                         layout_permutation(r.final_layout) * u);
}

void expect_on_edges(const TranspileResult& r, const Topology& topo) {
  for (const auto& g : r.circuit.gates()) {
    if (g.is_two_qubit()) EXPECT_TRUE(topo.connected(g.q0, g.q1)) << g.q0 << "-" << g.q1;
  }
}

TEST(Topology, BuiltIns) {
  const Topology lin = Topology::linear5(), t = Topology::t5(), h = Topology::h7();
  EXPECT_EQ(lin.num_qubits(), 5);
  EXPECT_EQ(lin.edges().size(), 4U);
  EXPECT_EQ(t.degree(1), 3);
  EXPECT_EQ(t.quantum_volume(), 16);
  EXPECT_EQ(h.num_qubits(), 7);
  EXPECT_EQ(h.edges().size(), 6U);
  EXPECT_EQ(h.degree(1), 3);
  EXPECT_EQ(h.degree(5), 3);
  EXPECT_EQ(Topology::builtin("t-5").edges(), t.edges());
  EXPECT_THROW(Topology::builtin("ring-9"), InvalidArgument);
  EXPECT_EQ(lin.distance(0, 4), 4);
  EXPECT_EQ(h.distance(0, 6), 4);
}

TEST(Topology, ShortestPathsWalkEdges) {
  for (const auto& topo : {Topology::linear5(), Topology::t5(), Topology::h7()}) {
    for (int a = 0; a < topo.num_qubits(); ++a) {
      for (int b = 0; b < topo.num_qubits(); ++b) {
        const auto path = topo.shortest_path(a, b);
        ASSERT_EQ(static_cast<int>(path.size()), topo.distance(a, b) + 1);
        EXPECT_EQ(path.front(), a);
        EXPECT_EQ(path.back(), b);
        for (size_t i = 0; i + 1 < path.size(); ++i) {
          EXPECT_TRUE(topo.connected(path[i], path[i + 1]));
        }
      }
    }
  }
}

TEST(Topology, JsonRoundTripAndValidation) {
  const Topology h = Topology::h7();
  const Topology back = Topology::from_json(h.to_json());
  EXPECT_EQ(back.name(), h.name());
  EXPECT_EQ(back.edges(), h.edges());
  EXPECT_EQ(back.quantum_volume(), h.quantum_volume());
  const Topology custom = Topology::from_json(R"({"name": "pair", "n": 2, "edges": [[0, 1]]})");
  EXPECT_FALSE(custom.quantum_volume().has_value());
  EXPECT_THROW(Topology::from_json(R"({"name": "x", "n": 3, "edges": [[0, 1]]})"),
               InvalidArgument);
  EXPECT_THROW(Topology::from_json(R"({"name": "x", "n": 2, "edges": [[0, 2]]})"),
               InvalidArgument);
  EXPECT_THROW(Topology::from_json(R"({"name": "x", "n": 2, "edges": [[0]]})"), InvalidArgument);
  EXPECT_THROW(Topology::from_json("not json"), InvalidArgument);
}

TEST(Layout, PermutationBookkeeping) {
  Layout l({2, 0, 1});
  EXPECT_EQ(l.physical(0), 2);
  EXPECT_EQ(l.logical(2), 0);
  l.swap_physical(2, 0);
  EXPECT_EQ(l.physical(0), 0);
  EXPECT_EQ(l.physical(1), 2);
  EXPECT_THROW(Layout({0, 0, 1}), InvalidArgument);
  EXPECT_THROW(Layout({0, 3, 1}), InvalidArgument);
  EXPECT_EQ(Layout::identity(3).logical_to_physical(), (std::vector<int>{0, 1, 2}));
}

TEST(Layout, PermutationMatrixMovesBits) {
  const Layout l({1, 2, 0});
  const DenseOperator p = layout_permutation(l);
  // Logical |001> (bit 0 set) lands on physical qubit 1 -> index 2.
  EXPECT_EQ(p(2, 1), Complex(1.0));
  EXPECT_LT(oracle::max_abs(p.transpose() * p - DenseOperator::Identity(8, 8)), 1e-15);
}

TEST(DefaultLayout, AncillaOnBusiestNode) {
  const Circuit c = model_circuit(GaugeModel{}, Geometry::square1(), 0.4, "0000", Basis::kX);
  EXPECT_EQ(default_layout(c, Topology::t5()).physical(4), 1);
  EXPECT_EQ(default_layout(c, Topology::linear5()).physical(4), 2);
  const Circuit two =
      model_circuit(GaugeModel{}, Geometry::two_square_pbc(), 0.4, "000000", Basis::kX);
  EXPECT_EQ(default_layout(two, Topology::h7()).physical(6), 1);
  EXPECT_THROW(default_layout(two, Topology::t5()), InvalidArgument);
}

TEST(Transpile, ModelCircuitsOnEveryDevice) {
  struct Case {
    Geometry geom;
    Topology topo;
  };
  const Case cases[] = {{Geometry::square1(), Topology::linear5()},
                        {Geometry::square1(), Topology::t5()},
                        {Geometry::triangle1(), Topology::linear5()},
                        {Geometry::triangle1(), Topology::t5()},
                        {Geometry::square1(), Topology::h7()},
                        {Geometry::two_square_pbc(), Topology::h7()}};
  for (const auto& k : cases) {
    const std::string label(static_cast<size_t>(k.geom.num_links()), '1');
    const Circuit c = model_circuit(GaugeModel{}, k.geom, 0.83, label, Basis::kX);
    const TranspileResult r = transpile(c, k.topo);
    expect_on_edges(r, k.topo);
    EXPECT_LT(routing_defect(c, r), 1e-10) << k.geom.name() << " on " << k.topo.name();
    EXPECT_EQ(metrics(r.circuit).cnot_count, metrics(c).cnot_count + 3 * r.swaps);
    int measures = 0;
    for (const auto& g : r.circuit.gates()) {
      if (g.kind != GateKind::kMeasure) continue;
      EXPECT_EQ(r.final_layout.physical(g.clbit), g.q0);
      ++measures;
    }
    EXPECT_EQ(measures, k.geom.num_links());
  }
}

TEST(Transpile, StarNeedsSwapsForFourLinks) {
  const Circuit c = model_circuit(GaugeModel{}, Geometry::square1(), 0.4, "0000", Basis::kX);
  EXPECT_GT(transpile(c, Topology::t5()).swaps, 0);
  const Circuit tri = model_circuit(GaugeModel{}, Geometry::triangle1(), 0.4, "000", Basis::kX);
  EXPECT_EQ(transpile(tri, Topology::t5()).swaps, 0);
}

TEST(Transpile, RandomCircuitsAndLayouts) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    Circuit c(5);
    for (int k = 0; k < 25; ++k) {
      const int a = static_cast<int>(rng() % 5);
      int b = static_cast<int>(rng() % 5);
      if (b == a) b = (a + 1) % 5;
      switch (rng() % 4) {
        case 0: c.h(a); break;
        case 1: c.rz(a, 0.3 * k); break;
        case 2: c.cnot(a, b); break;
        default: c.cp(a, b, 0.1 * k); break;
      }
    }
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Topology topo = trial % 2 ? Topology::linear5() : Topology::t5();
    const TranspileResult r = transpile(c, topo, Layout(perm));
    expect_on_edges(r, topo);
    EXPECT_EQ(r.initial_layout, Layout(perm));
    EXPECT_LT(routing_defect(c, r), 1e-10);
  }
}

TEST(Transpile, RejectsOversizedCircuitsAndLayouts) {
  EXPECT_THROW(transpile(Circuit(6), Topology::t5()), InvalidArgument);
  EXPECT_THROW(transpile(Circuit(3), Topology::t5(), Layout::identity(3)), InvalidArgument);
}

TEST(Volume, ReportArithmetic) {
  const VolumeReport a = volume_report(5, 8);
  EXPECT_EQ(a.circuit_volume, 40);
  EXPECT_EQ(a.qv_exponent, 5);
  EXPECT_EQ(a.quantum_volume, 32);
  EXPECT_EQ(volume_report(4, 8).circuit_volume, 32);
  EXPECT_EQ(volume_report(4, 8).quantum_volume, 16);
  EXPECT_THROW(volume_report(-1, 3), InvalidArgument);
  Circuit c(3);
  c.cnot(0, 1).cnot(1, 2);
  const VolumeReport r = volume_report(c);
  EXPECT_EQ(r.m, 3);
  EXPECT_EQ(r.d, 2);
  EXPECT_EQ(r.circuit_volume, 6);
}

}  // namespace
}  // namespace plaquette
