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
#include <random>
#include <vector>

#include "oracle/oracle.hpp"
#include "plaquette/errors.hpp"
#include "plaquette/mitigation.hpp"

namespace plaquette {
namespace {

Circuit ten_cnots() {
  Circuit c(3);
  for (int k = 0; k < 10; ++k) {
    c.cnot(k % 3, (k + 1) % 3).rz(k % 3, 0.1 * (k + 1));
    if (k % 4 == 0) c.h(2);
  }
  return c;
}

bool on_simplex(const Eigen::VectorXd& t) {
  return t.minCoeff() >= 0.0 && std::abs(t.sum() - 1.0) < 1e-12;
}

Eigen::VectorXd random_simplex(std::mt19937_64& rng, int dim) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd t(dim);
  for (int i = 0; i < dim; ++i) t(i) = e(rng);
  return t / t.sum();
}

TEST(Fold, ArithmeticAndUnitary) {
  const Circuit c = ten_cnots();
  ASSERT_EQ(metrics(c).cnot_count, 10);
  const FoldResult f = fold(c, 1.6);
  EXPECT_EQ(metrics(f.circuit).cnot_count, 16);
  EXPECT_EQ(f.inserted_pairs, 3);
  EXPECT_DOUBLE_EQ(f.achieved_lambda, 1.6);
  EXPECT_LT(oracle::max_abs(circuit_unitary(f.circuit) - circuit_unitary(c)), 1e-12);
  const FoldResult same = fold(c, 1.0);
  EXPECT_EQ(same.circuit, c);
  EXPECT_EQ(same.inserted_pairs, 0);
}

TEST(Fold, TripleFoldsEveryCnot) {
  Circuit c(2);
  c.cnot(0, 1).h(0).cnot(1, 0);
  const FoldResult f = fold(c, 3.0);
  ASSERT_EQ(f.circuit.size(), 7U);
  for (int k : {0, 1, 2}) EXPECT_EQ(f.circuit.gates()[k], (Gate{GateKind::kCNOT, 0, 1}));
  EXPECT_EQ(f.circuit.gates()[3].kind, GateKind::kH);
  for (int k : {4, 5, 6}) EXPECT_EQ(f.circuit.gates()[k], (Gate{GateKind::kCNOT, 1, 0}));
}

TEST(Fold, AchievedLambdaIsRounded) {
  const Circuit c = ten_cnots();
  for (double lambda = 1.0; lambda <= 8.0; lambda += 0.35) {
    const FoldResult f = fold(c, lambda);
    const int cnots = metrics(f.circuit).cnot_count;
    EXPECT_EQ(cnots % 2, 0);
    EXPECT_DOUBLE_EQ(f.achieved_lambda, cnots / 10.0);
    EXPECT_LE(std::abs(f.achieved_lambda - lambda), 0.1 + 1e-12);
  }
  EXPECT_THROW(fold(c, 0.5), InvalidArgument);
  EXPECT_THROW(fold(Circuit(2), 2.0), InvalidArgument);
}

TEST(Fold, KeepsMeasurementsAndAncillas) {
  const Circuit c = model_circuit(GaugeModel{}, Geometry::square1(), 0.5, "0000", Basis::kX);
  const FoldResult f = fold(c, 5.0);
  EXPECT_EQ(metrics(f.circuit).cnot_count, 40);
  EXPECT_EQ(f.circuit.ancillas(), c.ancillas());
  EXPECT_EQ(f.circuit.num_clbits(), 4);
}

TEST(ResponseMatrix, ValidationAndJson) {
  EXPECT_THROW(ResponseMatrix(1, Eigen::MatrixXd::Ones(2, 2)), InvalidArgument);
  EXPECT_THROW(ResponseMatrix(1, Eigen::MatrixXd::Identity(4, 4)), DimensionError);
  Eigen::MatrixXd bad(2, 2);
  bad << 1.2, 0, -0.2, 1;
  EXPECT_THROW(ResponseMatrix(1, bad), InvalidArgument);
  const ResponseMatrix p = ResponseMatrix::from_noise(2, NoiseModel::uniform(0, 0.1, 0.2));
  EXPECT_NEAR(p.values()(0, 0), 0.81, 1e-15);
  EXPECT_NEAR(p.values()(3, 0), 0.01, 1e-15);
  EXPECT_NEAR(p.values()(0, 3), 0.04, 1e-15);
  const ResponseMatrix back = ResponseMatrix::from_json(p.to_json());
  EXPECT_EQ(back.values(), p.values());
}

TEST(Calibrate, SampledColumnsConvergeToExact) {
  const NoiseModel noise = NoiseModel::uniform(0.3, 0.05, 0.08);
  const ResponseMatrix p = calibrate(2, noise, 50000, 12);
  const ResponseMatrix exact = ResponseMatrix::from_noise(2, noise);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double q = exact.values()(i, j);
      EXPECT_NEAR(p.values()(i, j), q, 5 * std::sqrt(q * (1 - q) / 50000) + 1e-12);
    }
  }
  EXPECT_EQ(calibrate(2, noise, 1000, 3).values(), calibrate(2, noise, 1000, 3).values());
  EXPECT_EQ(calibrate(3, NoiseModel{}, 100, 1).values(), Eigen::MatrixXd::Identity(8, 8));
  EXPECT_THROW(calibrate(kMaxCalibrationQubits + 1, noise, 10, 1), DimensionError);
}

TEST(Simplex, Projection) {
  Eigen::VectorXd v(3);
  v << 0.5, 0.5, 0.5;
  EXPECT_LT((project_to_simplex(v) - Eigen::VectorXd::Constant(3, 1.0 / 3)).norm(), 1e-15);
  v << 2.0, 0.0, -1.0;
  Eigen::VectorXd e(3);
  e << 1.0, 0.0, 0.0;
  EXPECT_LT((project_to_simplex(v) - e).norm(), 1e-15);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd w(8);
    for (int i = 0; i < 8; ++i) w(i) = nd(rng);
    const Eigen::VectorXd p = project_to_simplex(w);
    ASSERT_TRUE(on_simplex(p));
    EXPECT_LT((project_to_simplex(p) - p).norm(), 1e-14);
    // Optimality: (w - p) . (q - p) <= 0 for every vertex q.
    for (int k = 0; k < 8; ++k) {
      Eigen::VectorXd q = Eigen::VectorXd::Zero(8);
      q(k) = 1.0;
      EXPECT_LE((w - p).dot(q - p), 1e-12);
    }
  }
}

TEST(MitigateReadout, ExactRecovery) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 4; ++n) {
    const ResponseMatrix p = ResponseMatrix::from_noise(n, NoiseModel::uniform(0, 0.05, 0.08));
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd t = random_simplex(rng, 1 << n);
      if (trial == 0) t.setZero(), t(0) = 1.0;
      const ReadoutMitigation r = mitigate_readout(p.values() * t, p);
      EXPECT_TRUE(r.converged);
      EXPECT_TRUE(on_simplex(r.distribution));
      EXPECT_LT((r.distribution - t).cwiseAbs().maxCoeff(), 1e-6) << n << " " << trial;
      EXPECT_LT(r.residual, 1e-8);
    }
  }
}

TEST(MitigateReadout, AlwaysOnSimplex) {
  std::mt19937_64 rng(9);
  const ResponseMatrix p = ResponseMatrix::from_noise(3, NoiseModel::uniform(0, 0.2, 0.3));
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd m = Eigen::VectorXd::Random(8).cwiseAbs();
    if (trial % 2) m(trial % 8) += 3.0;
    m /= m.sum();
    EXPECT_TRUE(on_simplex(mitigate_readout(m, p).distribution));
  }
  EXPECT_THROW(mitigate_readout(Eigen::VectorXd::Ones(4) / 4, p), DimensionError);
}

TEST(MitigateReadout, SampledCalibrationWithinThreeSigma) {
  const NoiseModel noise = NoiseModel::uniform(0, 0.05, 0.05);
  const ResponseMatrix p = calibrate(2, noise, 100000, 21);
  Eigen::VectorXd t(4);
  t << 0.55, 0.1, 0.05, 0.3;
  const ResponseMatrix exact = ResponseMatrix::from_noise(2, noise);
  const ReadoutMitigation r = mitigate_readout(exact.values() * t, p);
  EXPECT_TRUE(on_simplex(r.distribution));
  // Calibration noise on each column entry is sqrt(q(1-q)/N); the inverse
  // amplifies it by at most ||P^-1||_inf.
  const double inv_norm = exact.values().inverse().cwiseAbs().rowwise().sum().maxCoeff();
  const double sigma = inv_norm * std::sqrt(0.25 / 100000);
  EXPECT_LT((r.distribution - t).cwiseAbs().maxCoeff(), 3 * sigma);
}

TEST(Zne, QuadraticRecoversInterceptExactly) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(rng), b = u(rng), c = 0.1 * u(rng);
    std::vector<ZnePoint> pts;
    for (double l : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
      const double la = l + 0.1 * u(rng) * (l > 1);
      pts.push_back({l, la, a + b * la + c * la * la, 0.0});
    }
    const ZneResult r = zne(pts, ZneMethod::kQuadratic);
    EXPECT_NEAR(r.estimate, a, 1e-9);
    ASSERT_EQ(r.coefficients.size(), 3U);
    EXPECT_NEAR(r.coefficients[1], b, 1e-9);
    EXPECT_NEAR(r.coefficients[2], c, 1e-9);
    EXPECT_NEAR(r.evaluate(2.5), a + 2.5 * b + 6.25 * c, 1e-9);
    EXPECT_LT(r.std_error, 1e-6);
  }
}

TEST(Zne, RichardsonInterpolatesEveryPoint) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ZnePoint> pts;
  for (double l : {1.0, 1.6, 2.4, 3.0, 4.2}) pts.push_back({l, l, u(rng), 0.0});
  const ZneResult r = zne(pts, ZneMethod::kRichardson);
  for (const auto& p : pts) EXPECT_NEAR(r.evaluate(p.achieved_lambda), p.mean, 1e-9);
  EXPECT_NEAR(r.evaluate(0.0), r.estimate, 1e-12);
  // Degree-4 data is reproduced at zero exactly.
  std::vector<ZnePoint> quartic;
  for (double l : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    quartic.push_back({l, l, 0.3 - l + 0.2 * l * l * l * l, 0.0});
  }
  EXPECT_NEAR(zne(quartic, ZneMethod::kRichardson).estimate, 0.3, 1e-9);
}

TEST(Zne, StandardErrorPropagatesLinearly) {
  std::vector<ZnePoint> pts;
  for (double l : {1.0, 2.0, 3.0, 5.0, 8.0}) pts.push_back({l, l, 0.5 - 0.03 * l, 0.01 * l});
  for (auto method : {ZneMethod::kQuadratic, ZneMethod::kRichardson}) {
    const ZneResult base = zne(pts, method);
    double var = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      auto bumped = pts;
      bumped[i].mean += 1.0;
      const double w = zne(bumped, method).estimate - base.estimate;
      var += w * w * pts[i].std_error * pts[i].std_error;
    }
    EXPECT_NEAR(base.std_error, std::sqrt(var), 1e-9);
  }
}

TEST(Zne, ResidualErrorWithoutPointErrors) {
  std::vector<ZnePoint> pts;
  const double noise[] = {0.01, -0.02, 0.015, 0.0, -0.01, 0.02};
  for (int i = 0; i < 6; ++i) {
    const double l = 1.0 + i;
    pts.push_back({l, l, 0.8 - 0.1 * l + noise[i], 0.0});
  }
  EXPECT_GT(zne(pts, ZneMethod::kQuadratic).std_error, 0.0);
}

TEST(Zne, ClampingAndValidation) {
  std::vector<ZnePoint> pts;
  for (double l : {1.0, 2.0, 3.0}) pts.push_back({l, l, 0.9 + 0.1 * (3 - l), 0.0});
  const ZneResult free = zne(pts, ZneMethod::kQuadratic);
  EXPECT_NEAR(free.estimate, 1.2, 1e-12);
  EXPECT_FALSE(free.clamped);
  const ZneResult clamped = zne(pts, ZneMethod::kQuadratic, true);
  EXPECT_EQ(clamped.estimate, 1.0);
  EXPECT_TRUE(clamped.clamped);
  EXPECT_NEAR(clamped.evaluate(0.0), 1.2, 1e-12);
  pts.pop_back();
  EXPECT_THROW(zne(pts, ZneMethod::kQuadratic), InvalidArgument);
  EXPECT_THROW(zne({{1, 1, 0.2, 0}, {2, 1, 0.3, 0}}, ZneMethod::kRichardson), InvalidArgument);
  EXPECT_THROW(zne({{1, 0.5, 0.2, 0}, {2, 2, 0.3, 0}}, ZneMethod::kRichardson), InvalidArgument);
  EXPECT_EQ(parse_zne_method(to_string(ZneMethod::kRichardson)), ZneMethod::kRichardson);
  EXPECT_THROW(parse_zne_method("cubic"), InvalidArgument);
}

}  // namespace
}  // namespace plaquette
