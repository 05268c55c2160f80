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

#include "plaquette/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/exact.hpp"
#include "plaquette/random.hpp"
#include "plaquette/transpile.hpp"

namespace plaquette {

namespace {

using nlohmann::json;

constexpr std::uint64_t kCalibrationStream = std::numeric_limits<std::uint64_t>::max();

const char* const kCsvHeader =
    "time,observable,raw_mean,raw_err,ro_mean,ro_err,zne_mean,zne_err,exact";

std::vector<double> linspace(double start, double stop, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits RFC 4180 text into records of fields.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      records.push_back(std::move(record));
      record.clear();
      field.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw InvalidArgument("CSV: unterminated quoted field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double parse_number(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidArgument("CSV: '" + s + "' is not a number");
  return v;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_label(std::string_view s, int n) {
  return static_cast<int>(s.size()) == n && s.find_first_not_of("01") == std::string_view::npos;
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& why) { throw ConfigError(why); };
  const Geometry geom = cfg.lattice();
  const int n = geom.num_links();
  if (!std::isfinite(cfg.g)) fail("g must be finite");
  if (cfg.times.empty()) fail("times must contain at least one value");
  for (double t : cfg.times) {
    if (!std::isfinite(t)) fail("times must be finite");
  }
  if (cfg.shots < 1) fail("shots must be >= 1");
  if (cfg.repetitions < 1) fail("repetitions must be >= 1");
  std::set<double> distinct;
  for (double s : cfg.scale_factors) {
    if (!std::isfinite(s) || s < 1.0) fail("scale factors must be >= 1");
    distinct.insert(s);
  }
  if (!distinct.count(1.0)) fail("scale_factors must include 1");
  if (distinct.size() != cfg.scale_factors.size()) fail("scale_factors must be distinct");
  if (cfg.zne_method == ZneMethod::kQuadratic && distinct.size() < 3) {
    fail("quadratic extrapolation needs at least 3 scale factors");
  }
  if (cfg.zne_method == ZneMethod::kRichardson && distinct.size() < 2) {
    fail("Richardson extrapolation needs at least 2 scale factors");
  }
  try {
    cfg.noise.validate();
  } catch (const InvalidArgument& e) {
    fail(std::string("noise: ") + e.what());
  }
  if (cfg.topology != "none") {
    try {
      const Topology topo = Topology::builtin(cfg.topology);
      if (topo.num_qubits() < n + 1) {
        fail("topology '" + cfg.topology + "' has " + std::to_string(topo.num_qubits()) +
             " qubits; the circuit needs " + std::to_string(n + 1));
      }
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
  }
  if (!is_label(cfg.initial_label, n)) {
    fail("initial_state label must be " + std::to_string(n) + " binary digits");
  }
  if (cfg.initial_basis != natural_basis(cfg.model)) {
    fail("initial_state basis must be '" + to_string(natural_basis(cfg.model)) +
         "' for this model");
  }
  if (cfg.observables.empty()) fail("observables must not be empty");
  for (const auto& obs : cfg.observables) {
    try {
      observable_operator(cfg, obs);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail("observable '" + obs.name() + "': " + e.what());
    }
  }
}

double observable_from_distribution(const ExperimentConfig& cfg, const ObservableSpec& obs,
                                    const PauliSum& op, const Eigen::VectorXd& dist) {
  if (obs.kind == ObservableKind::kLoschmidt) {
    return dist[static_cast<Eigen::Index>(label_to_index(obs.argument))];
  }
  return expectation_diagonal(dist, op, natural_basis(cfg.model));
}

}  // namespace

ObservableSpec ObservableSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string arg = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  ObservableSpec spec;
  if (head == "gauss_sq_sum" && colon == std::string_view::npos) {
    spec.kind = ObservableKind::kGaussSqSum;
    return spec;
  }
  if (colon != std::string_view::npos && !arg.empty()) {
    spec.argument = arg;
    if (head == "loschmidt") {
      spec.kind = ObservableKind::kLoschmidt;
      return spec;
    }
    if (head == "gauss") {
      spec.kind = ObservableKind::kGauss;
      return spec;
    }
    if (head == "winding") {
      spec.kind = ObservableKind::kWinding;
      return spec;
    }
  }
  throw ConfigError("unknown observable '" + std::string(text) +
                    "' (expected loschmidt:<label>, gauss:<site>, gauss_sq_sum or "
                    "winding:<x|y|y13|y56>)");
}

std::string ObservableSpec::name() const {
  switch (kind) {
    case ObservableKind::kLoschmidt:
      return "loschmidt:" + argument;
    case ObservableKind::kGauss:
      return "gauss:" + argument;
    case ObservableKind::kGaussSqSum:
      return "gauss_sq_sum";
    case ObservableKind::kWinding:
      return "winding:" + argument;
  }
  return "";
}

ExperimentConfig default_config(GaugeGroup model, GeometryKind geometry) {
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.geometry = geometry;
  cfg.times = linspace(0.0, 2.0 * std::numbers::pi, 20);
  const Geometry geom = Geometry::of(geometry);
  cfg.initial_label = std::string(static_cast<size_t>(geom.num_links()), '0');
  cfg.initial_basis = natural_basis(model);
  cfg.observables = {ObservableSpec{ObservableKind::kLoschmidt, cfg.initial_label},
                     ObservableSpec{ObservableKind::kGauss, geom.sites().front().name}};
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "model",        "geometry",   "g",        "convention",    "times",
      "shots",        "repetitions", "scale_factors", "zne_method", "noise",
      "topology",     "initial_state", "observables", "master_seed"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  try {
    GaugeGroup model = GaugeGroup::kZ2;
    GeometryKind geometry = GeometryKind::kSquare1;
    try {
      if (j.contains("model")) model = parse_gauge_group(j["model"].get<std::string>());
      if (j.contains("geometry")) geometry = parse_geometry(j["geometry"].get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    ExperimentConfig cfg = default_config(model, geometry);
    const bool custom_label = j.contains("initial_state") && j["initial_state"].contains("label");
    if (j.contains("g")) cfg.g = j["g"].get<double>();
    if (j.contains("convention")) {
      try {
        cfg.convention = parse_convention(j["convention"].get<std::string>());
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
    if (j.contains("times")) {
      const json& t = j["times"];
      if (t.is_array()) {
        cfg.times = t.get<std::vector<double>>();
      } else if (t.is_object()) {
        for (const auto& [key, value] : t.items()) {
          if (key != "start" && key != "stop" && key != "n") {
            throw ConfigError("unknown times key '" + key + "'");
          }
        }
        const int n = t.value("n", 20);
        if (n < 1) throw ConfigError("times.n must be >= 1");
        cfg.times = linspace(t.at("start").get<double>(), t.at("stop").get<double>(), n);
      } else {
        throw ConfigError("times must be an array or {start, stop, n}");
      }
    }
    if (j.contains("shots")) {
      const auto s = j["shots"].get<long long>();
      if (s < 1) throw ConfigError("shots must be >= 1");
      cfg.shots = static_cast<std::uint64_t>(s);
    }
    if (j.contains("repetitions")) cfg.repetitions = j["repetitions"].get<int>();
    if (j.contains("scale_factors")) {
      cfg.scale_factors = j["scale_factors"].get<std::vector<double>>();
    }
    if (j.contains("zne_method")) {
      try {
        cfg.zne_method = parse_zne_method(j["zne_method"].get<std::string>());
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
    if (j.contains("noise")) {
      try {
        cfg.noise = NoiseModel::from_json(j["noise"].dump());
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }
    if (j.contains("topology")) cfg.topology = j["topology"].get<std::string>();
    if (j.contains("initial_state")) {
      const json& s = j["initial_state"];
      if (!s.is_object()) throw ConfigError("initial_state must be {label, basis}");
      for (const auto& [key, value] : s.items()) {
        if (key != "label" && key != "basis") {
          throw ConfigError("unknown initial_state key '" + key + "'");
        }
      }
      if (s.contains("label")) cfg.initial_label = s["label"].get<std::string>();
      if (s.contains("basis")) {
        try {
          cfg.initial_basis = parse_basis(s["basis"].get<std::string>());
        } catch (const InvalidArgument& e) {
          throw ConfigError(e.what());
        }
      }
    }
    if (j.contains("observables")) {
      cfg.observables.clear();
      for (const auto& o : j["observables"]) {
        cfg.observables.push_back(ObservableSpec::parse(o.get<std::string>()));
      }
    } else if (custom_label) {
      cfg.observables.front().argument = cfg.initial_label;
    }
    if (j.contains("master_seed")) {
      if (!j["master_seed"].is_number_unsigned()) {
        throw ConfigError("master_seed must be a non-negative integer");
      }
      cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    validate(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

PauliSum observable_operator(const ExperimentConfig& cfg, const ObservableSpec& obs) {
  const GaugeModel model = cfg.gauge_model();
  const Geometry geom = cfg.lattice();
  const int n = geom.num_links();
  switch (obs.kind) {
    case ObservableKind::kLoschmidt: {
      if (!is_label(obs.argument, n)) {
        throw ConfigError("loschmidt label must be " + std::to_string(n) + " binary digits");
      }
      // Projector onto the label in the measured basis.
      const char letter = natural_basis(model.group) == Basis::kX ? 'X' : 'Z';
      PauliSum projector(n, {PauliTerm(1.0, std::string(static_cast<size_t>(n), 'I'))});
      const std::uint64_t index = label_to_index(obs.argument);
      for (int q = 0; q < n; ++q) {
        std::string letters(static_cast<size_t>(n), 'I');
        letters[static_cast<size_t>(q)] = letter;
        const double sign = ((index >> q) & 1U) ? -0.5 : 0.5;
        PauliSum factor(n, {PauliTerm(0.5, std::string(static_cast<size_t>(n), 'I')),
                            PauliTerm(sign, letters)});
        projector = projector * factor;
      }
      return projector;
    }
    case ObservableKind::kGauss:
      return gauss_operators(model, geom)[static_cast<size_t>(geom.site_index(obs.argument))];
    case ObservableKind::kGaussSqSum: {
      PauliSum total(n);
      for (const auto& op : gauss_operators(model, geom)) total = total + op * op;
      return total;
    }
    case ObservableKind::kWinding: {
      if (model.group != GaugeGroup::kZ2 || geom.kind() != GeometryKind::kTwoSquarePbc) {
        throw ConfigError("winding observables need the Z2 two-square-pbc model");
      }
      const WindingOperators w = winding_operators(geom);
      if (obs.argument == "x") return w.wx;
      if (obs.argument == "y" || obs.argument == "y13") return w.wy13;
      if (obs.argument == "y56") return w.wy56;
      throw ConfigError("winding axis must be x, y, y13 or y56");
    }
  }
  throw ConfigError("unsupported observable");
}

double exact_value(const ExperimentConfig& cfg, const ObservableSpec& obs, double t) {
  const GaugeModel model = cfg.gauge_model();
  const Geometry geom = cfg.lattice();
  const Basis basis = natural_basis(model.group);
  const PauliSum h = build_hamiltonian(model, geom);
  const StateVector psi = exact_evolve(h, initial_state(geom, cfg.initial_label, basis), t);
  if (obs.kind == ObservableKind::kLoschmidt) {
    return loschmidt(initial_state(geom, obs.argument, basis), psi);
  }
  return expectation(observable_operator(cfg, obs), psi);
}

Circuit experiment_circuit(const ExperimentConfig& cfg, double t) {
  Circuit c = model_circuit(cfg.gauge_model(), cfg.lattice(), t, cfg.initial_label,
                            natural_basis(cfg.model));
  if (cfg.topology == "none") return c;
  return transpile(c, Topology::builtin(cfg.topology)).circuit;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Geometry geom = cfg.lattice();
  const int n = geom.num_links();
  const auto reps = static_cast<size_t>(cfg.repetitions);
  const size_t num_scales = cfg.scale_factors.size();
  const size_t unit_scale = static_cast<size_t>(
      std::find(cfg.scale_factors.begin(), cfg.scale_factors.end(), 1.0) -
      cfg.scale_factors.begin());

  std::vector<PauliSum> ops;
  for (const auto& obs : cfg.observables) ops.push_back(observable_operator(cfg, obs));

  ExperimentResult result{
      {}, {}, calibrate(n, cfg.noise, cfg.shots, derive_seed(cfg.master_seed, {kCalibrationStream}))};
  RunLog& log = result.log;
  log.calibration_circuits = std::uint64_t{1} << n;

  for (size_t ti = 0; ti < cfg.times.size(); ++ti) {
    const double t = cfg.times[ti];
    const Circuit base = experiment_circuit(cfg, t);
    log.evolution_cnots = metrics(base).cnot_count;

    // value[obs][scale][rep]
    using Grid = std::vector<std::vector<std::vector<double>>>;
    Grid raw(ops.size(), std::vector<std::vector<double>>(num_scales, std::vector<double>(reps)));
    Grid ro = raw;
    std::vector<double> achieved(num_scales);
    for (size_t si = 0; si < num_scales; ++si) {
      const FoldResult folded = fold(base, cfg.scale_factors[si]);
      achieved[si] = folded.achieved_lambda;
      log.max_folded_cnots = std::max(log.max_folded_cnots, metrics(folded.circuit).cnot_count);
      const NoisyExecutor executor(folded.circuit, cfg.noise);
      for (size_t r = 0; r < reps; ++r) {
        const Counts counts = executor.run(cfg.shots, derive_seed(cfg.master_seed, {ti, si, r}));
        ++log.circuits_executed;
        log.shots_executed += cfg.shots;
        const Eigen::VectorXd measured = counts.distribution();
        const ReadoutMitigation unfolded = mitigate_readout(measured, result.calibration);
        if (!unfolded.converged) ++log.unconverged_mitigations;
        for (size_t o = 0; o < ops.size(); ++o) {
          raw[o][si][r] = observable_from_distribution(cfg, cfg.observables[o], ops[o], measured);
          ro[o][si][r] = observable_from_distribution(cfg, cfg.observables[o], ops[o],
                                                      unfolded.distribution);
        }
      }
    }
    log.achieved_scale_factors = achieved;

    for (size_t o = 0; o < ops.size(); ++o) {
      std::vector<double> extrapolated(reps);
      for (size_t r = 0; r < reps; ++r) {
        std::vector<ZnePoint> points;
        for (size_t si = 0; si < num_scales; ++si) {
          points.push_back({cfg.scale_factors[si], achieved[si], ro[o][si][r], 0.0});
        }
        const ZneResult z = zne(points, cfg.zne_method, cfg.observables[o].is_probability());
        if (z.clamped) ++log.clamped_estimates;
        extrapolated[r] = z.estimate;
      }
      ResultRow row;
      row.time = t;
      row.observable = cfg.observables[o].name();
      row.raw_mean = mean(raw[o][unit_scale]);
      row.raw_err = sample_std(raw[o][unit_scale]);
      row.ro_mean = mean(ro[o][unit_scale]);
      row.ro_err = sample_std(ro[o][unit_scale]);
      row.zne_mean = mean(extrapolated);
      row.zne_err = sample_std(extrapolated);
      row.exact = exact_value(cfg, cfg.observables[o], t);
      result.table.push_back(row);
    }
  }
  return result;
}

std::vector<ExactCurve> exact_reference(const ExperimentConfig& cfg, int points) {
  if (points < 2) throw InvalidArgument("exact_reference needs at least 2 points");
  const auto [lo, hi] = std::minmax_element(cfg.times.begin(), cfg.times.end());
  const std::vector<double> grid = linspace(*lo, *hi, points);
  std::vector<ExactCurve> curves;
  for (const auto& obs : cfg.observables) {
    ExactCurve curve{obs.name(), grid, {}};
    for (double t : grid) curve.values.push_back(exact_value(cfg, obs, t));
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string RunLog::to_json() const {
  json j;
  j["circuits_executed"] = circuits_executed;
  j["calibration_circuits"] = calibration_circuits;
  j["shots_executed"] = shots_executed;
  j["evolution_cnots"] = evolution_cnots;
  j["max_folded_cnots"] = max_folded_cnots;
  j["achieved_scale_factors"] = achieved_scale_factors;
  j["clamped_estimates"] = clamped_estimates;
  j["unconverged_mitigations"] = unconverged_mitigations;
  return j.dump(2);
}

std::string to_csv(const ResultTable& table) {
  if (table.empty()) throw InvalidArgument("refusing to write an empty result table");
  std::string out = std::string(kCsvHeader) + "\r\n";
  for (const auto& r : table) {
    out += format_double(r.time) + "," + csv_field(r.observable);
    for (double v : {r.raw_mean, r.raw_err, r.ro_mean, r.ro_err, r.zne_mean, r.zne_err, r.exact}) {
      out += "," + format_double(v);
    }
    out += "\r\n";
  }
  return out;
}

ResultTable parse_csv(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw InvalidArgument("CSV is empty");
  std::string header;
  for (size_t i = 0; i < records.front().size(); ++i) {
    header += (i ? "," : "") + records.front()[i];
  }
  if (header != kCsvHeader) throw InvalidArgument("CSV header does not match the result format");
  ResultTable table;
  for (size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9) {
      throw InvalidArgument("CSV record " + std::to_string(i) + " has " +
                            std::to_string(f.size()) + " fields, expected 9");
    }
    ResultRow r;
    r.time = parse_number(f[0]);
    r.observable = f[1];
    r.raw_mean = parse_number(f[2]);
    r.raw_err = parse_number(f[3]);
    r.ro_mean = parse_number(f[4]);
    r.ro_err = parse_number(f[5]);
    r.zne_mean = parse_number(f[6]);
    r.zne_err = parse_number(f[7]);
    r.exact = parse_number(f[8]);
    table.push_back(std::move(r));
  }
  return table;
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
  write_text(path, to_csv(table));
}

ResultTable read_csv(const std::filesystem::path& path) {
  try {
    return parse_csv(read_text(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

void write_exact_csv(const std::vector<ExactCurve>& curves, const std::filesystem::path& path) {
  if (curves.empty()) throw InvalidArgument("no exact curves to write");
  std::string out = "time";
  for (const auto& c : curves) out += "," + csv_field(c.observable);
  out += "\r\n";
  for (size_t i = 0; i < curves.front().times.size(); ++i) {
    out += format_double(curves.front().times[i]);
    for (const auto& c : curves) out += "," + format_double(c.values.at(i));
    out += "\r\n";
  }
  write_text(path, out);
}

std::string observable_file_stem(std::string_view observable) {
  std::string s(observable);
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
  }
  return s;
}

namespace {

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double kW = 720, kH = 440, kL = 70, kR = 170, kT = 40, kB = 50;
  double px(double x) const { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); }
  double py(double y) const { return kH - kB - (y - y0) / (y1 - y0) * (kH - kT - kB); }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '<') {
      out += "&lt;";
    } else if (c == '>') {
      out += "&gt;";
    } else if (c == '&') {
      out += "&amp;";
    } else {
      out += c;
    }
  }
  return out;
}

std::string render_svg(const std::string& name, const std::vector<const ResultRow*>& rows,
                       const ExactCurve* dense) {
  double x0 = rows.front()->time, x1 = x0, y0 = rows.front()->exact, y1 = y0;
  auto grow_y = [&](double v) {
    y0 = std::min(y0, v);
    y1 = std::max(y1, v);
  };
  for (const auto* r : rows) {
    x0 = std::min(x0, r->time);
    x1 = std::max(x1, r->time);
    grow_y(r->raw_mean - r->raw_err);
    grow_y(r->raw_mean + r->raw_err);
    grow_y(r->ro_mean - r->ro_err);
    grow_y(r->ro_mean + r->ro_err);
    grow_y(r->zne_mean - r->zne_err);
    grow_y(r->zne_mean + r->zne_err);
    grow_y(r->exact);
  }
  if (dense) {
    for (double v : dense->values) grow_y(v);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-9) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - pad, y1 + pad};

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << Frame::kW
    << "\" height=\"" << Frame::kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << Frame::kL << "\" y=\"24\" font-size=\"15\">" << svg_escape(name)
    << "</text>\n";
  const double left = f.px(f.x0), right = f.px(f.x1), top = f.py(f.y1), bottom = f.py(f.y0);
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
    << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 5.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 5.0;
    s << "<line x1=\"" << f.px(xv) << "\" y1=\"" << bottom << "\" x2=\"" << f.px(xv)
      << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>"
      << "<text x=\"" << f.px(xv) << "\" y=\"" << bottom + 18 << "\" text-anchor=\"middle\">"
      << fmt("%.3g", xv) << "</text>\n"
      << "<line x1=\"" << left - 5 << "\" y1=\"" << f.py(yv) << "\" x2=\"" << left
      << "\" y2=\"" << f.py(yv) << "\" stroke=\"black\"/>"
      << "<text x=\"" << left - 8 << "\" y=\"" << f.py(yv) + 4 << "\" text-anchor=\"end\">"
      << fmt("%.3g", yv) << "</text>\n";
  }
  s << "<text x=\"" << (left + right) / 2 << "\" y=\"" << Frame::kH - 12
    << "\" text-anchor=\"middle\">time</text>\n";

  // Exact reference as a dashed line.
  s << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6,4\" points=\"";
  if (dense) {
    for (size_t i = 0; i < dense->times.size(); ++i) {
      s << f.px(dense->times[i]) << "," << f.py(dense->values[i]) << " ";
    }
  } else {
    for (const auto* r : rows) s << f.px(r->time) << "," << f.py(r->exact) << " ";
  }
  s << "\"/>\n";

  struct Series {
    const char* label;
    const char* color;
    double ResultRow::*mean;
    double ResultRow::*err;
    double dx;
  };
  const Series series[] = {{"raw", "#d62728", &ResultRow::raw_mean, &ResultRow::raw_err, -3},
                           {"readout", "#1f77b4", &ResultRow::ro_mean, &ResultRow::ro_err, 0},
                           {"readout+ZNE", "#2ca02c", &ResultRow::zne_mean, &ResultRow::zne_err, 3}};
  for (const auto& se : series) {
    s << "<g stroke=\"" << se.color << "\" fill=\"" << se.color << "\">\n";
    for (const auto* r : rows) {
      const double x = f.px(r->time) + se.dx;
      const double m = r->*se.mean, e = r->*se.err;
      if (e > 0) {
        s << "<line x1=\"" << x << "\" y1=\"" << f.py(m - e) << "\" x2=\"" << x << "\" y2=\""
          << f.py(m + e) << "\"/>";
      }
      s << "<circle cx=\"" << x << "\" cy=\"" << f.py(m) << "\" r=\"3\"/>\n";
    }
    s << "</g>\n";
  }
  double ly = Frame::kT + 10;
  for (const auto& se : series) {
    s << "<circle cx=\"" << right + 20 << "\" cy=\"" << ly << "\" r=\"4\" fill=\"" << se.color
      << "\"/><text x=\"" << right + 32 << "\" y=\"" << ly + 4 << "\">" << se.label
      << "</text>\n";
    ly += 20;
  }
  s << "<line x1=\"" << right + 12 << "\" y1=\"" << ly << "\" x2=\"" << right + 28 << "\" y2=\""
    << ly << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/><text x=\"" << right + 32
    << "\" y=\"" << ly + 4 << "\">exact</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace

std::vector<std::filesystem::path> write_svg(const ResultTable& table,
                                             const std::filesystem::path& dir,
                                             const std::vector<ExactCurve>& dense) {
  if (table.empty()) throw InvalidArgument("refusing to plot an empty result table");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ResultRow*>> by_observable;
  for (const auto& r : table) {
    if (!by_observable.count(r.observable)) order.push_back(r.observable);
    by_observable[r.observable].push_back(&r);
  }
  std::vector<std::filesystem::path> written;
  for (const auto& name : order) {
    const ExactCurve* curve = nullptr;
    for (const auto& c : dense) {
      if (c.observable == name) curve = &c;
    }
    const auto path = dir / (observable_file_stem(name) + ".svg");
    write_text(path, render_svg(name, by_observable[name], curve));
    written.push_back(path);
  }
  return written;
}

}  // namespace plaquette
