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

#include "plaquette/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <utility>

#include "json.hpp"
#include "kernels.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/random.hpp"

namespace plaquette {

namespace {

// Independent random streams derived from the caller's seed.
enum Stream : std::uint64_t { kOutcomes = 1, kGateNoise = 2, kReadout = 3 };

// Largest number of amplitudes kept as trajectory checkpoints.
constexpr std::uint64_t kCheckpointBudget = std::uint64_t{1} << 24;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_width(int n, int cap, const char* what) {
  if (n > cap) {
    throw DimensionError(std::string(what) + " is capped at " + std::to_string(cap) +
                         " qubits, circuit has " + std::to_string(n));
  }
}

// Where each qubit's value lands in the outcome word.
struct MeasureMap {
  int num_bits = 0;
  std::vector<std::pair<int, int>> qubit_to_bit;

  std::uint64_t outcome(std::uint64_t basis_index) const {
    std::uint64_t v = 0;
    for (auto [q, b] : qubit_to_bit) {
      if ((basis_index >> q) & 1U) v |= std::uint64_t{1} << b;
    }
    return v;
  }
};

MeasureMap measure_map(const Circuit& c) {
  MeasureMap m;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::kMeasure) m.qubit_to_bit.emplace_back(g.q0, g.clbit);
  }
  if (m.qubit_to_bit.empty()) {
    for (int q = 0; q < c.num_qubits(); ++q) m.qubit_to_bit.emplace_back(q, q);
    m.num_bits = c.num_qubits();
  } else {
    m.num_bits = c.num_clbits();
  }
  return m;
}

MeasureMap identity_map(int n) {
  MeasureMap m;
  m.num_bits = n;
  for (int q = 0; q < n; ++q) m.qubit_to_bit.emplace_back(q, q);
  return m;
}

// Draws `shots` basis indices from unnormalized weights.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const Eigen::VectorXd& weights) : cdf_(weights.size()) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
      acc += std::max(weights[i], 0.0);
      cdf_[static_cast<size_t>(i)] = acc;
    }
    total_ = acc;
    if (!(total_ > 0.0)) throw InvalidArgument("cannot sample from a zero distribution");
  }

  std::uint64_t draw(std::mt19937_64& rng) const {
    const double u = uniform01(rng) * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
  double total_ = 0.0;
};

Eigen::VectorXd probabilities(const StateVector& state) { return state.cwiseAbs2(); }

void apply_readout(std::vector<std::uint64_t>& outcomes, const MeasureMap& map,
                   const NoiseModel& noise, std::uint64_t seed) {
  if (!noise.has_readout_error()) return;
  std::mt19937_64 rng(derive_seed(seed, {kReadout}));
  for (auto& v : outcomes) {
    for (int b = 0; b < map.num_bits; ++b) {
      const ReadoutError& e = noise.readout_for(b);
      const std::uint64_t bit = std::uint64_t{1} << b;
      const double p_flip = (v & bit) ? e.eps10 : e.eps01;
      if (uniform01(rng) < p_flip) v ^= bit;
    }
  }
}

Counts tally(const std::vector<std::uint64_t>& outcomes, int num_bits) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t v : outcomes) ++hist[v];
  Counts counts(num_bits);
  for (auto [v, n] : hist) counts.add_index(v, n);
  return counts;
}

std::vector<std::uint64_t> draw_outcomes(const Eigen::VectorXd& weights, const MeasureMap& map,
                                         std::uint64_t shots, std::mt19937_64& rng) {
  const OutcomeSampler sampler(weights);
  std::vector<std::uint64_t> out;
  out.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) out.push_back(map.outcome(sampler.draw(rng)));
  return out;
}

void apply_two_qubit_pauli(Complex* amp, std::uint64_t dim, const Gate& g, int pauli) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  detail::apply_pauli(amp, dim, g.q0, kLetters[pauli / 4]);
  detail::apply_pauli(amp, dim, g.q1, kLetters[pauli % 4]);
}

// rho -> U rho U^dagger for one gate. U rho is formed column by column, then
// U (U rho)^dagger = U rho U^dagger.
void apply_gate_density(DenseOperator& rho, const Gate& g) {
  if (g.kind == GateKind::kMeasure) return;
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  for (Eigen::Index col = 0; col < rho.cols(); ++col) detail::apply_gate(rho.col(col).data(), dim, g);
  rho.adjointInPlace();
  for (Eigen::Index col = 0; col < rho.cols(); ++col) detail::apply_gate(rho.col(col).data(), dim, g);
}

// Two-qubit depolarizing channel with error probability p over the 15
// non-identity Paulis: rho -> (1 - q) rho + q Tr_ab(rho) (x) I/4, q = 16p/15.
void depolarize(DenseOperator& rho, int a, int b, double p) {
  if (p == 0.0) return;
  const double q = 16.0 * p / 15.0;
  const Eigen::Index ma = Eigen::Index{1} << a, mb = Eigen::Index{1} << b;
  const Eigen::Index pair = ma | mb;
  const Eigen::Index offsets[4] = {0, ma, mb, pair};
  const Eigen::Index dim = rho.rows();
  std::vector<Complex> traced;
  for (Eigen::Index j0 = 0; j0 < dim; ++j0) {
    if (j0 & pair) continue;
    for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
      if (i0 & pair) continue;
      Complex s = 0.0;
      for (Eigen::Index r : offsets) s += rho(i0 | r, j0 | r);
      traced.push_back(0.25 * s);
    }
  }
  rho *= (1.0 - q);
  size_t k = 0;
  for (Eigen::Index j0 = 0; j0 < dim; ++j0) {
    if (j0 & pair) continue;
    for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
      if (i0 & pair) continue;
      const Complex add = q * traced[k++];
      for (Eigen::Index r : offsets) rho(i0 | r, j0 | r) += add;
    }
  }
}

Eigen::VectorXd marginal(const Eigen::VectorXd& p, const MeasureMap& map) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index{1} << map.num_bits);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    out[static_cast<Eigen::Index>(map.outcome(static_cast<std::uint64_t>(i)))] += p[i];
  }
  return out;
}

Counts run_trajectories(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                        std::uint64_t seed, const MeasureMap& map) {
  const int n = c.num_qubits();
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<size_t> two_qubit;
  for (size_t k = 0; k < c.gates().size(); ++k) {
    if (c.gates()[k].is_two_qubit()) two_qubit.push_back(k);
  }
  const std::uint64_t slots = two_qubit.size();

  // Error pattern per shot: (two-qubit gate ordinal, Pauli index 1..15).
  using Pattern = std::vector<std::pair<std::uint32_t, std::uint8_t>>;
  std::vector<Pattern> patterns(shots);
  if (noise.p2 > 0.0 && slots > 0) {
    std::mt19937_64 rng(derive_seed(seed, {kGateNoise}));
    const std::uint64_t total = shots * slots;
    const double log_q = std::log1p(-noise.p2);
    std::uint64_t pos = 0;
    while (true) {
      if (noise.p2 < 1.0) {
        const double skip = std::floor(std::log1p(-uniform01(rng)) / log_q);
        if (skip >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::uint64_t>(skip);
      }
      if (pos >= total) break;
      const auto pauli = static_cast<std::uint8_t>(1 + std::min(14.0, std::floor(uniform01(rng) * 15.0)));
      patterns[pos / slots].emplace_back(static_cast<std::uint32_t>(pos % slots), pauli);
      ++pos;
    }
  }
  std::map<Pattern, std::uint64_t> groups;
  for (const auto& p : patterns) ++groups[p];
  patterns.clear();

  // Ideal state just before each two-qubit gate's noise slot.
  std::vector<StateVector> checkpoints;
  StateVector ideal = StateVector::Zero(static_cast<Eigen::Index>(dim));
  ideal[0] = 1.0;
  const bool keep = slots * dim <= kCheckpointBudget;
  size_t ordinal = 0;
  for (size_t k = 0; k < c.gates().size(); ++k) {
    detail::apply_gate(ideal.data(), dim, c.gates()[k]);
    if (keep && ordinal < slots && two_qubit[ordinal] == k) {
      checkpoints.push_back(ideal);
      ++ordinal;
    }
  }

  std::mt19937_64 outcome_rng(derive_seed(seed, {kOutcomes}));
  std::vector<std::uint64_t> outcomes;
  outcomes.reserve(shots);
  for (const auto& [pattern, count] : groups) {
    StateVector psi;
    if (pattern.empty()) {
      psi = ideal;
    } else {
      size_t start = 0;
      if (keep) {
        psi = checkpoints[pattern.front().first];
        start = two_qubit[pattern.front().first] + 1;
      } else {
        psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
        psi[0] = 1.0;
      }
      size_t next_error = 0;
      for (size_t k = 0; k < c.gates().size(); ++k) {
        const Gate& g = c.gates()[k];
        if (k >= start) detail::apply_gate(psi.data(), dim, g);
        while (next_error < pattern.size() &&
               two_qubit[pattern[next_error].first] == k) {
          if (k >= start || (keep && next_error == 0)) {
            apply_two_qubit_pauli(psi.data(), dim, g, pattern[next_error].second);
          }
          ++next_error;
        }
      }
    }
    const auto drawn = draw_outcomes(probabilities(psi), map, count, outcome_rng);
    outcomes.insert(outcomes.end(), drawn.begin(), drawn.end());
  }
  apply_readout(outcomes, map, noise, seed);
  return tally(outcomes, map.num_bits);
}

}  // namespace

const ReadoutError& NoiseModel::readout_for(int bit) const {
  if (bit >= 0 && static_cast<size_t>(bit) < per_bit.size()) {
    return per_bit[static_cast<size_t>(bit)];
  }
  return readout;
}

bool NoiseModel::has_readout_error() const {
  auto nonzero = [](const ReadoutError& e) { return e.eps01 != 0.0 || e.eps10 != 0.0; };
  return nonzero(readout) || std::any_of(per_bit.begin(), per_bit.end(), nonzero);
}

void NoiseModel::validate() const {
  check_probability(p2, "p2");
  check_probability(readout.eps01, "eps01");
  check_probability(readout.eps10, "eps10");
  for (const auto& e : per_bit) {
    check_probability(e.eps01, "eps01");
    check_probability(e.eps10, "eps10");
  }
}

NoiseModel NoiseModel::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("noise JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("noise JSON must be an object");
  NoiseModel m;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "p2") {
        m.p2 = value.get<double>();
      } else if (key == "eps01") {
        m.readout.eps01 = value.get<double>();
      } else if (key == "eps10") {
        m.readout.eps10 = value.get<double>();
      } else if (key == "per_bit") {
        for (const auto& e : value) {
          m.per_bit.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
        }
      } else {
        throw InvalidArgument("noise JSON: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("noise JSON: ") + e.what());
  }
  m.validate();
  return m;
}

std::string NoiseModel::to_json() const {
  nlohmann::json j;
  j["p2"] = p2;
  j["eps01"] = readout.eps01;
  j["eps10"] = readout.eps10;
  if (!per_bit.empty()) {
    j["per_bit"] = nlohmann::json::array();
    for (const auto& e : per_bit) j["per_bit"].push_back({e.eps01, e.eps10});
  }
  return j.dump();
}

Counts::Counts(int num_bits) : num_bits_(num_bits) {
  if (num_bits < 1 || num_bits > 63) throw InvalidArgument("Counts needs 1..63 bits");
}

void Counts::add(std::string_view bitstring, std::uint64_t count) {
  if (static_cast<int>(bitstring.size()) != num_bits_ ||
      bitstring.find_first_not_of("01") != std::string_view::npos) {
    throw InvalidArgument("bitstring '" + std::string(bitstring) + "' is not " +
                          std::to_string(num_bits_) + " binary digits");
  }
  if (count == 0) return;
  histogram_[std::string(bitstring)] += count;
  shots_ += count;
}

void Counts::add_index(std::uint64_t outcome, std::uint64_t count) {
  add(index_to_label(outcome, num_bits_), count);
}

std::uint64_t Counts::count(std::string_view bitstring) const {
  auto it = histogram_.find(std::string(bitstring));
  return it == histogram_.end() ? 0 : it->second;
}

double Counts::frequency(std::string_view bitstring) const {
  return shots_ == 0 ? 0.0 : static_cast<double>(count(bitstring)) / static_cast<double>(shots_);
}

Counts& Counts::merge(const Counts& other) {
  if (other.num_bits_ != num_bits_) throw InvalidArgument("cannot merge counts of different widths");
  for (const auto& [k, v] : other.histogram_) add(k, v);
  return *this;
}

Eigen::VectorXd Counts::distribution() const {
  if (num_bits_ > kMaxStatevectorQubits) {
    throw DimensionError("dense distribution capped at " + std::to_string(kMaxStatevectorQubits) +
                         " bits");
  }
  Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index{1} << num_bits_);
  if (shots_ == 0) return d;
  for (const auto& [k, v] : histogram_) {
    d[static_cast<Eigen::Index>(label_to_index(k))] =
        static_cast<double>(v) / static_cast<double>(shots_);
  }
  return d;
}

std::string Counts::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : histogram_) j[k] = v;
  return j.dump();
}

Counts Counts::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("counts JSON: ") + e.what());
  }
  if (!j.is_object() || j.empty()) throw InvalidArgument("counts JSON must be a non-empty object");
  Counts c(static_cast<int>(j.begin().key().size()));
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_unsigned()) throw InvalidArgument("counts JSON: '" + k + "' is not a count");
    c.add(k, v.get<std::uint64_t>());
  }
  return c;
}

StateVector run_ideal(const Circuit& c) {
  check_width(c.num_qubits(), kMaxStatevectorQubits, "run_ideal");
  StateVector psi = StateVector::Zero(Eigen::Index{1} << c.num_qubits());
  psi[0] = 1.0;
  return run_ideal(c, psi);
}

StateVector run_ideal(const Circuit& c, const StateVector& initial) {
  check_width(c.num_qubits(), kMaxStatevectorQubits, "run_ideal");
  const std::uint64_t dim = std::uint64_t{1} << c.num_qubits();
  if (static_cast<std::uint64_t>(initial.size()) != dim) {
    throw InvalidArgument("initial state has the wrong dimension");
  }
  StateVector psi = initial;
  for (const auto& g : c.gates()) detail::apply_gate(psi.data(), dim, g);
  return psi;
}

Counts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  const int n = std::countr_zero(static_cast<std::uint64_t>(state.size()));
  if (state.size() < 2 || (Eigen::Index{1} << n) != state.size()) {
    throw InvalidArgument("state dimension must be a power of two >= 2");
  }
  std::mt19937_64 rng(derive_seed(seed, {kOutcomes}));
  const MeasureMap map = identity_map(n);
  return tally(draw_outcomes(probabilities(state), map, shots, rng), n);
}

Counts sample(const Circuit& c, const StateVector& state, std::uint64_t shots,
              std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  if (state.size() != (Eigen::Index{1} << c.num_qubits())) {
    throw InvalidArgument("state does not match the circuit register");
  }
  std::mt19937_64 rng(derive_seed(seed, {kOutcomes}));
  const MeasureMap map = measure_map(c);
  return tally(draw_outcomes(probabilities(state), map, shots, rng), map.num_bits);
}

NoisyExecutor::NoisyExecutor(Circuit c, NoiseModel noise, NoisyEngine engine)
    : circuit_(std::move(c)), noise_(std::move(noise)), engine_(engine) {
  noise_.validate();
  check_width(circuit_.num_qubits(), kMaxStatevectorQubits, "run_noisy");
  gate_noise_ = noise_.p2 > 0.0 && metrics(circuit_).two_qubit_count > 0;
  if (engine_ == NoisyEngine::kAuto) {
    engine_ = circuit_.num_qubits() <= kMaxDensityQubits ? NoisyEngine::kDensityMatrix
                                                         : NoisyEngine::kTrajectory;
  }
  if (!gate_noise_) {
    weights_ = probabilities(run_ideal(circuit_));
  } else if (engine_ == NoisyEngine::kDensityMatrix) {
    check_width(circuit_.num_qubits(), kMaxDensityQubits, "density-matrix engine");
    weights_ = run_density(circuit_, noise_.p2).diagonal().real();
  }
}

Counts NoisyExecutor::run(std::uint64_t shots, std::uint64_t seed) const {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  const MeasureMap map = measure_map(circuit_);
  if (gate_noise_ && engine_ == NoisyEngine::kTrajectory) {
    return run_trajectories(circuit_, noise_, shots, seed, map);
  }
  std::mt19937_64 rng(derive_seed(seed, {kOutcomes}));
  std::vector<std::uint64_t> outcomes = draw_outcomes(weights_, map, shots, rng);
  apply_readout(outcomes, map, noise_, seed);
  return tally(outcomes, map.num_bits);
}

Counts run_noisy(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                 std::uint64_t seed, NoisyEngine engine) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  return NoisyExecutor(c, noise, engine).run(shots, seed);
}

DenseOperator run_density(const Circuit& c, double p2) {
  check_probability(p2, "p2");
  check_width(c.num_qubits(), kMaxDensityQubits, "run_density");
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits();
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const auto& g : c.gates()) {
    apply_gate_density(rho, g);
    if (g.is_two_qubit()) depolarize(rho, g.q0, g.q1, p2);
  }
  return rho;
}

Eigen::VectorXd noisy_distribution(const Circuit& c, const NoiseModel& noise) {
  noise.validate();
  const MeasureMap map = measure_map(c);
  Eigen::VectorXd p = marginal(run_density(c, noise.p2).diagonal().real(), map);
  for (int b = 0; b < map.num_bits; ++b) {
    const ReadoutError& e = noise.readout_for(b);
    const Eigen::Index bit = Eigen::Index{1} << b;
    for (Eigen::Index v = 0; v < p.size(); ++v) {
      if (v & bit) continue;
      const double p0 = p[v], p1 = p[v | bit];
      p[v] = (1.0 - e.eps01) * p0 + e.eps10 * p1;
      p[v | bit] = e.eps01 * p0 + (1.0 - e.eps10) * p1;
    }
  }
  return p;
}

namespace {

std::vector<std::pair<double, std::uint64_t>> diagonal_terms(const PauliSum& observable,
                                                             Basis measured, int num_bits) {
  const char allowed = measured == Basis::kZ ? 'Z' : 'X';
  if (observable.num_qubits() > num_bits) {
    throw InvalidArgument("observable acts on " + std::to_string(observable.num_qubits()) +
                          " qubits but only " + std::to_string(num_bits) + " bits were measured");
  }
  std::vector<std::pair<double, std::uint64_t>> terms;
  for (const auto& t : observable.terms()) {
    std::uint64_t mask = 0;
    for (int q = 0; q < t.num_qubits(); ++q) {
      const char l = t.letter(q);
      if (l == 'I') continue;
      if (l != allowed) {
        throw NonDiagonalObservable("term " + t.letters() + " is not diagonal in the " +
                                    to_string(measured) + " basis");
      }
      mask |= std::uint64_t{1} << q;
    }
    terms.emplace_back(t.coefficient(), mask);
  }
  return terms;
}

double eigenvalue(const std::vector<std::pair<double, std::uint64_t>>& terms, std::uint64_t v) {
  double e = 0.0;
  for (auto [coef, mask] : terms) e += (std::popcount(v & mask) % 2 ? -coef : coef);
  return e;
}

}  // namespace

double expectation_diagonal(const Counts& counts, const PauliSum& observable, Basis measured) {
  if (counts.shots() == 0) throw InvalidArgument("counts are empty");
  const auto terms = diagonal_terms(observable, measured, counts.num_bits());
  double acc = 0.0;
  for (const auto& [label, n] : counts.histogram()) {
    acc += static_cast<double>(n) * eigenvalue(terms, label_to_index(label));
  }
  return acc / static_cast<double>(counts.shots());
}

double expectation_diagonal(const Eigen::VectorXd& distribution, const PauliSum& observable,
                            Basis measured) {
  const int n = std::countr_zero(static_cast<std::uint64_t>(distribution.size()));
  if (distribution.size() < 2 || (Eigen::Index{1} << n) != distribution.size()) {
    throw InvalidArgument("distribution length must be a power of two >= 2");
  }
  const auto terms = diagonal_terms(observable, measured, n);
  double acc = 0.0;
  for (Eigen::Index v = 0; v < distribution.size(); ++v) {
    if (distribution[v] != 0.0) {
      acc += distribution[v] * eigenvalue(terms, static_cast<std::uint64_t>(v));
    }
  }
  return acc;
}

}  // namespace plaquette
