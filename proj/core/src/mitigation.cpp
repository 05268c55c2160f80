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

#include "plaquette/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/random.hpp"

namespace plaquette {

FoldResult fold(const Circuit& c, double lambda) {
  if (!std::isfinite(lambda) || lambda < 1.0) {
    throw InvalidArgument("scale factor must be >= 1");
  }
  const int n = metrics(c).cnot_count;
  if (n == 0) throw InvalidArgument("circuit has no CNOTs to fold");
  const auto pairs = static_cast<int>(std::lround((lambda * n - n) / 2.0));
  const int base = pairs / n;
  const int extra = pairs % n;

  FoldResult result{Circuit(c.num_qubits()), 1.0, pairs};
  for (int a : c.ancillas()) result.circuit.mark_ancilla(a);
  int ordinal = 0;
  for (const auto& g : c.gates()) {
    result.circuit.add(g);
    if (g.kind != GateKind::kCNOT) continue;
    const int copies = base + (ordinal < extra ? 1 : 0);
    for (int k = 0; k < copies; ++k) result.circuit.add(g).add(g);
    ++ordinal;
  }
  result.achieved_lambda = static_cast<double>(n + 2 * pairs) / n;
  return result;
}

ResponseMatrix::ResponseMatrix(int num_qubits, Eigen::MatrixXd values)
    : num_qubits_(num_qubits), values_(std::move(values)) {
  if (num_qubits < 1 || num_qubits > kMaxStatevectorQubits) {
    throw InvalidArgument("response matrix qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (values_.rows() != dim || values_.cols() != dim) {
    throw DimensionError("response matrix must be " + std::to_string(dim) + "x" +
                         std::to_string(dim));
  }
  if (values_.minCoeff() < 0.0 || values_.maxCoeff() > 1.0) {
    throw InvalidArgument("response matrix entries must lie in [0, 1]");
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (std::abs(values_.col(j).sum() - 1.0) > 1e-9) {
      throw InvalidArgument("response matrix column " + std::to_string(j) + " does not sum to 1");
    }
  }
}

ResponseMatrix ResponseMatrix::from_noise(int num_qubits, const NoiseModel& noise) {
  noise.validate();
  Eigen::MatrixXd p = Eigen::MatrixXd::Ones(1, 1);
  // Bit 0 is the least significant index, so it is the rightmost factor.
  for (int b = 0; b < num_qubits; ++b) {
    const ReadoutError& e = noise.readout_for(b);
    Eigen::Matrix2d m;
    m << 1.0 - e.eps01, e.eps10, e.eps01, 1.0 - e.eps10;
    Eigen::MatrixXd next(p.rows() * 2, p.cols() * 2);
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < 2; ++s) next.block(r * p.rows(), s * p.cols(), p.rows(), p.cols()) = m(r, s) * p;
    }
    p = std::move(next);
  }
  return ResponseMatrix(num_qubits, std::move(p));
}

std::string ResponseMatrix::to_json() const {
  nlohmann::json j;
  j["n"] = num_qubits_;
  std::vector<double> flat;
  for (Eigen::Index r = 0; r < values_.rows(); ++r) {
    for (Eigen::Index c = 0; c < values_.cols(); ++c) flat.push_back(values_(r, c));
  }
  j["values"] = flat;
  return j.dump();
}

ResponseMatrix ResponseMatrix::from_json(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("n").get<int>();
    const auto flat = j.at("values").get<std::vector<double>>();
    if (n < 1 || n > kMaxStatevectorQubits) throw InvalidArgument("response matrix JSON: bad n");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (static_cast<Eigen::Index>(flat.size()) != dim * dim) {
      throw DimensionError("response matrix JSON: expected " + std::to_string(dim * dim) +
                           " values");
    }
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = flat[static_cast<size_t>(r * dim + c)];
    }
    return ResponseMatrix(n, std::move(m));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("response matrix JSON: ") + e.what());
  }
}

ResponseMatrix calibrate(int num_qubits, const NoiseModel& noise, std::uint64_t shots,
                         std::uint64_t seed) {
  if (num_qubits < 1 || num_qubits > kMaxCalibrationQubits) {
    throw DimensionError("calibration supports 1.." + std::to_string(kMaxCalibrationQubits) +
                         " qubits");
  }
  const NoiseModel readout = noise.readout_only();
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXd p(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Circuit c(num_qubits);
    for (int q = 0; q < num_qubits; ++q) {
      if ((j >> q) & 1) c.x(q);
    }
    for (int q = 0; q < num_qubits; ++q) c.measure(q, q);
    const Counts counts =
        run_noisy(c, readout, shots, derive_seed(seed, {static_cast<std::uint64_t>(j)}));
    p.col(j) = counts.distribution();
  }
  return ResponseMatrix(num_qubits, std::move(p));
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw InvalidArgument("cannot project an empty vector");
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

ReadoutMitigation mitigate_readout(const Eigen::VectorXd& measured, const ResponseMatrix& p,
                                   int max_iterations) {
  const Eigen::MatrixXd& a = p.values();
  if (measured.size() != a.rows()) {
    throw DimensionError("distribution has " + std::to_string(measured.size()) +
                         " entries but the response matrix is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  }
  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd atm = a.transpose() * measured;
  const double lipschitz =
      2.0 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly)
                .eigenvalues()
                .maxCoeff();
  auto objective = [&](const Eigen::VectorXd& t) { return (measured - a * t).squaredNorm(); };
  auto gradient = [&](const Eigen::VectorXd& t) -> Eigen::VectorXd {
    return 2.0 * (gram * t - atm);
  };

  ReadoutMitigation out;
  Eigen::VectorXd t = project_to_simplex(measured);
  double f = objective(t);
  Eigen::VectorXd y = t;
  double momentum = 1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    Eigen::VectorXd next = project_to_simplex(y - gradient(y) / lipschitz);
    double f_next = objective(next);
    if (f_next > f) {
      // Momentum overshot: restart from a plain projected-gradient step.
      momentum = 1.0;
      next = project_to_simplex(t - gradient(t) / lipschitz);
      f_next = objective(next);
    }
    const double step = (next - t).cwiseAbs().maxCoeff();
    const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    y = next + ((momentum - 1.0) / momentum_next) * (next - t);
    momentum = momentum_next;
    if (f_next <= f) {
      t = std::move(next);
      f = f_next;
    }
    if (step <= 1e-13) {
      out.converged = true;
      break;
    }
  }
  out.distribution = t;
  out.residual = std::sqrt(f);
  return out;
}

ZneMethod parse_zne_method(std::string_view text) {
  if (text == "quadratic") return ZneMethod::kQuadratic;
  if (text == "richardson") return ZneMethod::kRichardson;
  throw InvalidArgument("unknown extrapolation method '" + std::string(text) +
                        "' (expected quadratic or richardson)");
}

std::string to_string(ZneMethod method) {
  return method == ZneMethod::kQuadratic ? "quadratic" : "richardson";
}

namespace {

// Lagrange basis weights of the nodes evaluated at x.
std::vector<double> lagrange_weights(const std::vector<ZnePoint>& pts, double x) {
  std::vector<double> w(pts.size(), 1.0);
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      w[i] *= (x - pts[j].achieved_lambda) / (pts[i].achieved_lambda - pts[j].achieved_lambda);
    }
  }
  return w;
}

}  // namespace

double ZneResult::evaluate(double lambda) const {
  if (method == ZneMethod::kQuadratic) {
    return coefficients.at(0) + lambda * (coefficients.at(1) + lambda * coefficients.at(2));
  }
  const std::vector<double> w = lagrange_weights(points, lambda);
  double v = 0.0;
  for (size_t i = 0; i < points.size(); ++i) v += w[i] * points[i].mean;
  return v;
}

ZneResult zne(std::vector<ZnePoint> points, ZneMethod method, bool probability) {
  for (const auto& p : points) {
    if (!std::isfinite(p.mean) || !std::isfinite(p.achieved_lambda) || p.achieved_lambda < 1.0 ||
        p.std_error < 0.0) {
      throw InvalidArgument("ZNE points need finite means and achieved lambda >= 1");
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const ZnePoint& a, const ZnePoint& b) {
    return a.achieved_lambda < b.achieved_lambda;
  });
  size_t distinct = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    if (i == 0 || points[i].achieved_lambda != points[i - 1].achieved_lambda) ++distinct;
  }

  ZneResult r;
  r.method = method;
  r.points = points;
  if (method == ZneMethod::kRichardson) {
    if (points.size() < 2) throw InvalidArgument("Richardson extrapolation needs >= 2 points");
    if (distinct != points.size()) {
      throw InvalidArgument("Richardson extrapolation needs distinct scale factors");
    }
    const std::vector<double> w = lagrange_weights(points, 0.0);
    double var = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      r.estimate += w[i] * points[i].mean;
      var += w[i] * w[i] * points[i].std_error * points[i].std_error;
    }
    r.std_error = std::sqrt(var);
  } else {
    if (points.size() < 3 || distinct < 3) {
      throw InvalidArgument("quadratic extrapolation needs >= 3 distinct scale factors");
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n), sigma(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double l = points[static_cast<size_t>(i)].achieved_lambda;
      x.row(i) << 1.0, l, l * l;
      y[i] = points[static_cast<size_t>(i)].mean;
      sigma[i] = points[static_cast<size_t>(i)].std_error;
    }
    const Eigen::Vector3d beta = x.colPivHouseholderQr().solve(y);
    r.coefficients = {beta[0], beta[1], beta[2]};
    r.estimate = beta[0];
    const Eigen::Matrix3d xtx_inv = (x.transpose() * x).inverse();
    Eigen::Matrix3d cov;
    if (sigma.maxCoeff() > 0.0) {
      const Eigen::MatrixXd meat = x.transpose() * sigma.array().square().matrix().asDiagonal() * x;
      cov = xtx_inv * meat * xtx_inv;
    } else if (n > 3) {
      const double rss = (y - x * beta).squaredNorm();
      cov = xtx_inv * (rss / static_cast<double>(n - 3));
    } else {
      cov.setZero();
    }
    r.std_error = std::sqrt(std::max(cov(0, 0), 0.0));
  }
  if (probability && (r.estimate < 0.0 || r.estimate > 1.0)) {
    r.estimate = std::clamp(r.estimate, 0.0, 1.0);
    r.clamped = true;
  }
  return r;
}

}  // namespace plaquette
