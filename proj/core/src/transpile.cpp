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

#include "plaquette/transpile.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "plaquette/errors.hpp"

namespace plaquette {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), kUnreachable);
  std::deque<int> queue{source};
  dist[static_cast<size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[static_cast<size_t>(u)]) {
      if (dist[static_cast<size_t>(v)] == kUnreachable) {
        dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

Topology::Topology(std::string name, int num_qubits, std::vector<std::pair<int, int>> edges,
                   std::optional<int> quantum_volume)
    : name_(std::move(name)),
      num_qubits_(num_qubits),
      quantum_volume_(quantum_volume),
      adjacency_(static_cast<size_t>(std::max(num_qubits, 0))) {
  if (num_qubits < 1) throw InvalidArgument("topology needs at least one qubit");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits || a == b) {
      throw InvalidArgument("topology '" + name_ + "' has an invalid edge (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    if (a > b) std::swap(a, b);
    if (connected(a, b)) continue;
    edges_.emplace_back(a, b);
    adjacency_[static_cast<size_t>(a)].push_back(b);
    adjacency_[static_cast<size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  for (int q = 0; q < num_qubits; ++q) {
    dist_.push_back(bfs_distances(adjacency_, q));
    for (int d : dist_.back()) {
      if (d == kUnreachable) {
        throw InvalidArgument("topology '" + name_ + "' is not connected");
      }
    }
  }
}

Topology Topology::linear5() {
  return Topology("linear-5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 32);
}

Topology Topology::t5() {
  return Topology("t-5", 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}, 16);
}

// Our reading of the seven-qubit H layout; edit here if the device differs.
Topology Topology::h7() {
  return Topology("h-7", 7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}}, 32);
}

Topology Topology::builtin(std::string_view name) {
  if (name == "linear-5") return linear5();
  if (name == "t-5") return t5();
  if (name == "h-7") return h7();
  throw InvalidArgument("unknown topology '" + std::string(name) +
                        "' (expected linear-5, t-5 or h-7)");
}

Topology Topology::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("topology JSON: ") + e.what());
  }
  try {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw InvalidArgument("topology JSON: each edge must be a pair");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<int> qv;
    if (j.contains("quantum_volume")) qv = j["quantum_volume"].get<int>();
    return Topology(j.at("name").get<std::string>(), j.at("n").get<int>(), std::move(edges),
                    qv);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("topology JSON: ") + e.what());
  }
}

std::string Topology::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["n"] = num_qubits_;
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : edges_) j["edges"].push_back({a, b});
  if (quantum_volume_) j["quantum_volume"] = *quantum_volume_;
  return j.dump();
}

bool Topology::connected(int a, int b) const {
  const auto& nb = adjacency_[static_cast<size_t>(a)];
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

int Topology::degree(int q) const {
  return static_cast<int>(adjacency_[static_cast<size_t>(q)].size());
}

int Topology::distance(int a, int b) const {
  return dist_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

std::vector<int> Topology::shortest_path(int a, int b) const {
  std::vector<int> path{a};
  int u = a;
  while (u != b) {
    for (int v : neighbors(u)) {
      if (distance(v, b) == distance(u, b) - 1) {
        u = v;
        break;
      }
    }
    path.push_back(u);
  }
  return path;
}

Layout::Layout(std::vector<int> logical_to_physical)
    : l2p_(std::move(logical_to_physical)), p2l_(l2p_.size(), -1) {
  for (size_t l = 0; l < l2p_.size(); ++l) {
    const int p = l2p_[l];
    if (p < 0 || p >= static_cast<int>(l2p_.size()) || p2l_[static_cast<size_t>(p)] != -1) {
      throw InvalidArgument("layout is not a permutation");
    }
    p2l_[static_cast<size_t>(p)] = static_cast<int>(l);
  }
}

Layout Layout::identity(int num_physical) {
  std::vector<int> v(static_cast<size_t>(num_physical));
  std::iota(v.begin(), v.end(), 0);
  return Layout(std::move(v));
}

void Layout::swap_physical(int a, int b) {
  const int la = p2l_[static_cast<size_t>(a)];
  const int lb = p2l_[static_cast<size_t>(b)];
  std::swap(p2l_[static_cast<size_t>(a)], p2l_[static_cast<size_t>(b)]);
  l2p_[static_cast<size_t>(la)] = b;
  l2p_[static_cast<size_t>(lb)] = a;
}

Layout default_layout(const Circuit& c, const Topology& topo) {
  const int n = c.num_qubits();
  const int p = topo.num_qubits();
  if (n > p) {
    throw InvalidArgument("circuit needs " + std::to_string(n) + " qubits but topology '" +
                          topo.name() + "' has " + std::to_string(p));
  }
  std::vector<int> interactions(static_cast<size_t>(n), 0);
  for (const auto& g : c.gates()) {
    if (!g.is_two_qubit()) continue;
    ++interactions[static_cast<size_t>(g.q0)];
    ++interactions[static_cast<size_t>(g.q1)];
  }
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return interactions[static_cast<size_t>(a)] > interactions[static_cast<size_t>(b)];
  });
  const int hub = c.ancillas().empty() ? order.front() : c.ancillas().front();
  order.erase(std::find(order.begin(), order.end(), hub));

  int center = 0;
  auto eccentricity = [&](int q) {
    int e = 0;
    for (int v = 0; v < p; ++v) e = std::max(e, topo.distance(q, v));
    return e;
  };
  for (int q = 1; q < p; ++q) {
    const int dq = topo.degree(q), dc = topo.degree(center);
    if (dq > dc || (dq == dc && eccentricity(q) < eccentricity(center))) center = q;
  }

  std::vector<int> bfs{center};
  std::vector<bool> seen(static_cast<size_t>(p), false);
  seen[static_cast<size_t>(center)] = true;
  for (size_t i = 0; i < bfs.size(); ++i) {
    for (int v : topo.neighbors(bfs[i])) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = true;
        bfs.push_back(v);
      }
    }
  }

  std::vector<int> l2p(static_cast<size_t>(p), -1);
  l2p[static_cast<size_t>(hub)] = center;
  for (size_t i = 0; i < order.size(); ++i) {
    l2p[static_cast<size_t>(order[i])] = bfs[i + 1];
  }
  for (int l = n; l < p; ++l) l2p[static_cast<size_t>(l)] = bfs[static_cast<size_t>(l)];
  return Layout(std::move(l2p));
}

TranspileResult transpile(const Circuit& c, const Topology& topo,
                          const std::optional<Layout>& initial_layout) {
  const int p = topo.num_qubits();
  if (c.num_qubits() > p) {
    throw InvalidArgument("circuit needs " + std::to_string(c.num_qubits()) +
                          " qubits but topology '" + topo.name() + "' has " +
                          std::to_string(p));
  }
  Layout layout = initial_layout ? *initial_layout : default_layout(c, topo);
  if (layout.size() != p) {
    throw InvalidArgument("layout size does not match topology '" + topo.name() + "'");
  }
  TranspileResult result{Circuit(p), layout, layout, 0};
  Circuit& out = result.circuit;
  for (int a : c.ancillas()) out.mark_ancilla(layout.physical(a));

  for (const auto& g : c.gates()) {
    Gate routed = g;
    routed.q0 = layout.physical(g.q0);
    if (g.is_two_qubit()) {
      routed.q1 = layout.physical(g.q1);
      if (!topo.connected(routed.q0, routed.q1)) {
        const std::vector<int> path = topo.shortest_path(routed.q0, routed.q1);
        for (size_t i = 0; i + 2 < path.size(); ++i) {
          const int a = path[i], b = path[i + 1];
          out.cnot(a, b).cnot(b, a).cnot(a, b);
          layout.swap_physical(a, b);
          ++result.swaps;
        }
        routed.q0 = layout.physical(g.q0);
      }
    }
    out.add(routed);
  }
  result.final_layout = layout;
  return result;
}

DenseOperator layout_permutation(const Layout& layout) {
  const int n = layout.size();
  if (n > kMaxUnitaryQubits) {
    throw DimensionError("layout_permutation is capped at " +
                         std::to_string(kMaxUnitaryQubits) + " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator perm = DenseOperator::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index j = 0;
    for (int l = 0; l < n; ++l) {
      if ((i >> l) & 1) j |= Eigen::Index{1} << layout.physical(l);
    }
    perm(j, i) = 1.0;
  }
  return perm;
}

VolumeReport volume_report(int m, int d) {
  if (m < 0 || d < 0) throw InvalidArgument("volume_report needs m, d >= 0");
  VolumeReport r;
  r.m = m;
  r.d = d;
  r.circuit_volume = m * d;
  r.qv_exponent = std::min(m, d);
  if (r.qv_exponent > 62) throw InvalidArgument("quantum volume exponent too large");
  r.quantum_volume = 1LL << r.qv_exponent;
  return r;
}

VolumeReport volume_report(const Circuit& c) {
  const CircuitMetrics m = metrics(c);
  return volume_report(m.qubit_count, m.two_qubit_depth);
}

}  // namespace plaquette
