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

#include "plaquette/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

#include "kernels.hpp"
#include "plaquette/errors.hpp"

namespace plaquette {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_qubit(int q, int n, const char* what) {
  if (q < 0 || q >= n) {
    throw InvalidArgument(std::string(what) + " qubit " + std::to_string(q) +
                          " outside register of " + std::to_string(n));
  }
}

std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}

void append_zz_factor(Circuit& c, int ancilla, int j, double phi, ZZDecomposition d) {
  switch (d) {
    case ZZDecomposition::kCnotPair:
      c.cnot(j, ancilla).rz(ancilla, phi).cnot(j, ancilla);
      return;
    case ZZDecomposition::kControlledPhase:
      c.rz(ancilla, phi).rz(j, phi).cp(j, ancilla, -2.0 * phi);
      return;
    case ZZDecomposition::kSingleCnot:
      // CZ = H_A CNOT H_A; CZ RZ_j(phi) RZ_A(phi) = e^{-i phi/2 ZZ} up to phase.
      c.rz(j, phi).rz(ancilla, phi).h(ancilla).cnot(j, ancilla).h(ancilla);
      return;
  }
}

// +1 when conjugating X_A through the entangler leaves a positive sign.
int rotation_sign(int weight) {
  const int r = weight % 4;
  return (r == 0 || r == 3) ? 1 : -1;
}

void prepare_ancilla(Circuit& c, int ancilla, AncillaState state) {
  c.h(ancilla);
  if (state == AncillaState::kPlusI) c.s(ancilla);
}

void unprepare_ancilla(Circuit& c, int ancilla, AncillaState state) {
  if (state == AncillaState::kPlusI) c.sdg(ancilla);
  c.h(ancilla);
}

}  // namespace

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
      return "H";
    case GateKind::kX:
      return "X";
    case GateKind::kS:
      return "S";
    case GateKind::kSdg:
      return "SDG";
    case GateKind::kRX:
      return "RX";
    case GateKind::kRZ:
      return "RZ";
    case GateKind::kCNOT:
      return "CNOT";
    case GateKind::kCP:
      return "CP";
    case GateKind::kMeasure:
      return "MEASURE";
  }
  return "?";
}

Circuit::Circuit(int num_qubits)
    : num_qubits_(num_qubits), measured_(static_cast<size_t>(std::max(num_qubits, 0))) {
  if (num_qubits < 1) throw InvalidArgument("circuit needs at least one qubit");
}

void Circuit::mark_ancilla(int qubit) {
  check_qubit(qubit, num_qubits_, "ancilla");
  if (std::find(ancillas_.begin(), ancillas_.end(), qubit) == ancillas_.end()) {
    ancillas_.push_back(qubit);
  }
}

Circuit& Circuit::add(const Gate& g) {
  check_qubit(g.q0, num_qubits_, gate_name(g.kind).c_str());
  if (g.is_two_qubit()) {
    check_qubit(g.q1, num_qubits_, gate_name(g.kind).c_str());
    if (g.q0 == g.q1) {
      throw InvalidArgument(gate_name(g.kind) + " needs two distinct qubits");
    }
  }
  if (!std::isfinite(g.angle)) throw InvalidArgument("gate angle must be finite");
  if (measured_[static_cast<size_t>(g.q0)] ||
      (g.is_two_qubit() && measured_[static_cast<size_t>(g.q1)])) {
    throw InvalidArgument("gate " + gate_name(g.kind) + " follows a measurement on qubit " +
                          std::to_string(g.q0));
  }
  if (g.kind == GateKind::kMeasure) {
    if (g.clbit < 0) throw InvalidArgument("measurement needs a classical bit");
    measured_[static_cast<size_t>(g.q0)] = true;
    num_clbits_ = std::max(num_clbits_, g.clbit + 1);
  }
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw InvalidArgument("cannot append circuits on different registers");
  }
  for (const auto& g : other.gates_) add(g);
  for (int a : other.ancillas_) mark_ancilla(a);
  return *this;
}

bool Circuit::has_measurements() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.kind == GateKind::kMeasure; });
}

Circuit Circuit::inverse() const {
  if (has_measurements()) throw InvalidArgument("cannot invert a measured circuit");
  Circuit out(num_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::kS:
        g.kind = GateKind::kSdg;
        break;
      case GateKind::kSdg:
        g.kind = GateKind::kS;
        break;
      case GateKind::kRX:
      case GateKind::kRZ:
      case GateKind::kCP:
        g.angle = -g.angle;
        break;
      default:
        break;
    }
    out.add(g);
  }
  for (int a : ancillas_) out.mark_ancilla(a);
  return out;
}

AncillaState ancilla_state_for(int weight) {
  return weight % 2 == 0 ? AncillaState::kPlus : AncillaState::kPlusI;
}

Circuit entangler(int num_qubits, int ancilla, std::span<const int> system, double phi,
                  ZZDecomposition decomposition) {
  Circuit c(num_qubits);
  check_qubit(ancilla, num_qubits, "ancilla");
  for (int j : system) {
    check_qubit(j, num_qubits, "system");
    if (j == ancilla) throw InvalidArgument("ancilla overlaps the system qubits");
  }
  if (decomposition == ZZDecomposition::kSingleCnot &&
      std::abs(std::abs(phi) - kHalfPi) > 1e-12) {
    throw InvalidArgument("single-CNOT entangler requires phi = ±pi/2");
  }
  c.mark_ancilla(ancilla);
  if (phi == 0.0) return c;
  for (int j : system) append_zz_factor(c, ancilla, j, phi, decomposition);
  return c;
}

Circuit basis_change(const PauliTerm& term, int num_qubits) {
  Circuit c(num_qubits);
  for (int q : term.support()) {
    if (term.letter(q) == 'X') c.h(q);
    if (term.letter(q) == 'Y') c.rx(q, kHalfPi);
  }
  return c;
}

Circuit term_evolution(const PauliTerm& term, double t, int ancilla, int num_qubits,
                       AncillaState prepared, const CompileOptions& options) {
  if (term.is_identity()) {
    throw InvalidArgument("term_evolution needs a non-identity Pauli string");
  }
  if (term.num_qubits() > num_qubits) {
    throw InvalidArgument("term does not fit the register");
  }
  check_qubit(ancilla, num_qubits, "ancilla");
  if (ancilla < term.num_qubits() && term.letter(ancilla) != 'I') {
    throw InvalidArgument("ancilla overlaps the term support");
  }
  const std::vector<int> support = term.support();
  const int weight = static_cast<int>(support.size());
  const AncillaState needed = ancilla_state_for(weight);

  Circuit c(num_qubits);
  c.mark_ancilla(ancilla);
  const Circuit basis = basis_change(term, num_qubits);
  c.append(basis);
  if (needed != prepared) {
    if (needed == AncillaState::kPlusI) {
      c.s(ancilla);
    } else {
      c.sdg(ancilla);
    }
  }
  const Circuit forward = entangler(num_qubits, ancilla, support, kHalfPi,
                                    options.decomposition);
  c.append(forward);
  c.rx(ancilla, 2.0 * term.coefficient() * t * rotation_sign(weight));
  c.append(forward.inverse());
  if (needed != prepared) {
    if (needed == AncillaState::kPlusI) {
      c.sdg(ancilla);
    } else {
      c.s(ancilla);
    }
  }
  c.append(basis.inverse());
  return c;
}

Circuit evolution_circuit(const PauliSum& h, double t, const CompileOptions& options) {
  for (size_t i = 0; i < h.terms().size(); ++i) {
    for (size_t j = i + 1; j < h.terms().size(); ++j) {
      if (!commutes(h.terms()[i], h.terms()[j])) {
        throw NonCommutingTerms("terms " + h.terms()[i].letters() + " and " +
                                h.terms()[j].letters() +
                                " do not commute; exact evolution would need "
                                "Trotterization");
      }
    }
  }
  const int n = h.num_qubits();
  const int ancilla = n;
  Circuit c(n + 1);
  c.mark_ancilla(ancilla);
  std::vector<const PauliTerm*> active;
  for (const auto& term : h.terms()) {
    if (!term.is_identity()) active.push_back(&term);
  }
  // Identity terms only contribute a global phase and are dropped.
  if (active.empty()) return c;
  const AncillaState state = ancilla_state_for(active.front()->weight());
  prepare_ancilla(c, ancilla, state);
  for (const PauliTerm* term : active) {
    c.append(term_evolution(*term, t, ancilla, n + 1, state, options));
  }
  unprepare_ancilla(c, ancilla, state);
  return c;
}

Circuit model_circuit(const GaugeModel& model, const Geometry& geom, double t,
                      std::string_view initial_label, Basis measure_basis,
                      const CompileOptions& options) {
  if (model.group == GaugeGroup::kZ2 && model.gamma != 0.0) {
    throw InvalidArgument("evolution circuits are only built for gamma = 0");
  }
  const int n = geom.num_links();
  if (static_cast<int>(initial_label.size()) != n) {
    throw InvalidArgument("initial label must have " + std::to_string(n) + " characters");
  }
  const std::uint64_t index = label_to_index(initial_label);
  const PauliSum h = build_hamiltonian(model, geom);
  const Circuit core = evolution_circuit(h, t, options);

  Circuit c(n + 1);
  c.mark_ancilla(n);
  for (int q = 0; q < n; ++q) {
    if ((index >> q) & 1U) c.x(q);
  }
  if (natural_basis(model.group) == Basis::kX) {
    for (int q = 0; q < n; ++q) c.h(q);
  }
  c.append(core);
  if (measure_basis == Basis::kX) {
    for (int q = 0; q < n; ++q) c.h(q);
  }
  for (int q = 0; q < n; ++q) c.measure(q, q);
  return c;
}

DenseOperator circuit_unitary(const Circuit& c) {
  if (c.num_qubits() > kMaxUnitaryQubits) {
    throw DimensionError("circuit_unitary is capped at " +
                         std::to_string(kMaxUnitaryQubits) + " qubits");
  }
  if (c.has_measurements()) {
    throw InvalidArgument("circuit_unitary needs a measurement-free circuit");
  }
  const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
  const auto d = static_cast<Eigen::Index>(dim);
  DenseOperator u = DenseOperator::Identity(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    Complex* amp = u.col(col).data();
    for (const auto& g : c.gates()) detail::apply_gate(amp, dim, g);
  }
  return u;
}

DenseOperator restricted_unitary(const DenseOperator& u, int num_qubits, int ancilla) {
  check_qubit(ancilla, num_qubits, "ancilla");
  const Eigen::Index sub = Eigen::Index{1} << (num_qubits - 1);
  auto embed = [&](Eigen::Index k) {
    const Eigen::Index low = k & ((Eigen::Index{1} << ancilla) - 1);
    const Eigen::Index high = (k >> ancilla) << (ancilla + 1);
    return low | high;
  };
  DenseOperator out(sub, sub);
  for (Eigen::Index r = 0; r < sub; ++r) {
    for (Eigen::Index col = 0; col < sub; ++col) out(r, col) = u(embed(r), embed(col));
  }
  return out;
}

CircuitMetrics metrics(const Circuit& c) {
  CircuitMetrics m;
  m.qubit_count = c.num_qubits();
  std::vector<int> level(static_cast<size_t>(c.num_qubits()), 0);
  for (const auto& g : c.gates()) {
    if (!g.is_two_qubit()) continue;
    ++m.two_qubit_count;
    if (g.kind == GateKind::kCNOT) ++m.cnot_count;
    auto& a = level[static_cast<size_t>(g.q0)];
    auto& b = level[static_cast<size_t>(g.q1)];
    const int next = std::max(a, b) + 1;
    a = b = next;
    m.two_qubit_depth = std::max(m.two_qubit_depth, next);
  }
  return m;
}

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.num_qubits() << "\n";
  os << "clbits " << c.num_clbits() << "\n";
  for (int a : c.ancillas()) os << "ancilla " << a << "\n";
  for (const auto& g : c.gates()) {
    os << gate_name(g.kind) << " " << g.q0;
    if (g.is_two_qubit()) os << " " << g.q1;
    if (g.kind == GateKind::kRX || g.kind == GateKind::kRZ || g.kind == GateKind::kCP) {
      os << " " << format_angle(g.angle);
    }
    if (g.kind == GateKind::kMeasure) os << " " << g.clbit;
    os << "\n";
  }
  return os.str();
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<Circuit> c;
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("circuit text line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "qubits") {
      int n = 0;
      if (!(ls >> n) || c) fail("bad or repeated qubits header");
      c.emplace(n);
      continue;
    }
    if (!c) fail("missing 'qubits N' header");
    if (word == "clbits") continue;  // derived from measurements
    if (word == "ancilla") {
      int a = 0;
      if (!(ls >> a)) fail("bad ancilla line");
      c->mark_ancilla(a);
      continue;
    }
    Gate g;
    static const GateKind kAll[] = {GateKind::kH,   GateKind::kX,    GateKind::kS,
                                    GateKind::kSdg, GateKind::kRX,   GateKind::kRZ,
                                    GateKind::kCNOT, GateKind::kCP, GateKind::kMeasure};
    bool known = false;
    for (GateKind k : kAll) {
      if (gate_name(k) == word) {
        g.kind = k;
        known = true;
      }
    }
    if (!known) fail("unknown gate '" + word + "'");
    if (!(ls >> g.q0)) fail("missing qubit");
    if (g.is_two_qubit() && !(ls >> g.q1)) fail("missing second qubit");
    if (g.kind == GateKind::kRX || g.kind == GateKind::kRZ || g.kind == GateKind::kCP) {
      std::string a;
      if (!(ls >> a)) fail("missing angle");
      try {
        g.angle = std::stod(a);
      } catch (const std::exception&) {
        fail("bad angle '" + a + "'");
      }
    }
    if (g.kind == GateKind::kMeasure && !(ls >> g.clbit)) fail("missing classical bit");
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
    c->add(g);
  }
  if (!c) throw InvalidArgument("circuit text has no 'qubits N' header");
  return *c;
}

}  // namespace plaquette
