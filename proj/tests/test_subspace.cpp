// Copyright 2026 The epra-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "doctest.h"
#include "epra/subspace.hpp"
#include "test_util.hpp"

namespace {

using epra::DenseMatrix;
using epra::Vector;
using epra::testing::MaxAbs;

template <typename F>
epra::ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const epra::Error& e) {
    return e.code();
  }
  FAIL("expected an epra::Error");
  return epra::ErrorCode::kIo;
}

DenseMatrix Mat(std::initializer_list<std::initializer_list<double>> rows) {
  DenseMatrix M(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

Vector Vec(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("projector of a coordinate kernel") {
  const auto pair = epra::ProjectorFromKernel(Mat({{1, 0}}));
  CHECK(MaxAbs(pair.P - Mat({{0, 0}, {0, 1}})) <= 1e-15);
  CHECK(MaxAbs(pair.P_hat - Mat({{1, 0}, {0, 0}})) <= 1e-15);
}

TEST_CASE("projector of the line x1 = -x2") {
  const auto pair = epra::ProjectorFromKernel(Mat({{1, 1}}));
  CHECK(MaxAbs(pair.P - Mat({{0.5, -0.5}, {-0.5, 0.5}})) <= 1e-15);
  CHECK(MaxAbs(pair.P_hat - Mat({{0.5, 0.5}, {0.5, 0.5}})) <= 1e-15);
}

TEST_CASE("random 3x5 kernel projector residuals") {
  std::mt19937_64 rng(3);
  const DenseMatrix A = epra::testing::Gaussian(3, 5, rng);
  const auto pair = epra::ProjectorFromKernel(A);
  CHECK(MaxAbs(pair.P * pair.P - pair.P) <= 1e-8);
  CHECK(MaxAbs(pair.P * A.transpose()) <= 1e-8 * MaxAbs(A));
  CHECK(MaxAbs(pair.P + pair.P_hat - DenseMatrix::Identity(5, 5)) <= 1e-8);
  CHECK(MaxAbs(pair.P - pair.P.transpose()) == 0.0);
}

TEST_CASE("rescaled projector of a one-dimensional kernel") {
  // L = span{(2, 1)}, so D(L) = span{(4, 1)} for D = (2, 1).
  const auto pair = epra::RescaledProjectors(Mat({{1, -2}}), Vec({2, 1}), Vec({1, 1}));
  const Vector v = Vec({4, 1});
  CHECK(MaxAbs(pair.P - v * v.transpose() / 17.0) <= 1e-15);
}

TEST_CASE("coordinate kernels ignore diagonal scaling") {
  const auto pair = epra::RescaledProjectors(Mat({{1, 0}}), Vec({7, 3}), Vec({5, 2}));
  CHECK(MaxAbs(pair.P - Mat({{0, 0}, {0, 1}})) <= 1e-15);
  CHECK(MaxAbs(pair.P_hat - Mat({{1, 0}, {0, 0}})) <= 1e-15);
}

TEST_CASE("identity rescaling reproduces the plain projectors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial * 3;
    const int m = 1 + trial;
    const DenseMatrix A = epra::testing::Gaussian(m, n, rng);
    const auto plain = epra::ProjectorFromKernel(A);
    const auto scaled = epra::RescaledProjectors(A, Vector::Ones(n), Vector::Ones(n));
    CHECK(MaxAbs(plain.P - scaled.P) <= 1e-12);
    CHECK(MaxAbs(plain.P_hat - scaled.P_hat) <= 1e-12);
  }
}

TEST_CASE("rescaled projectors agree with the normal-equation route") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial;
    const int m = 1 + trial / 2;
    const DenseMatrix A = epra::testing::Gaussian(m, n, rng);
    const Vector D = epra::testing::LogUniform(n, 1e3, rng);
    const Vector D_hat = epra::testing::LogUniform(n, 1e3, rng);
    const auto pair = epra::RescaledProjectors(A, D, D_hat);
    const DenseMatrix primal_perp =
        epra::testing::NormalEquationProjector(D.cwiseInverse().asDiagonal() * A.transpose());
    const DenseMatrix dual = epra::testing::NormalEquationProjector(D_hat.asDiagonal() * A.transpose());
    CHECK(MaxAbs(pair.P - (DenseMatrix::Identity(n, n) - primal_perp)) <= 1e-8);
    CHECK(MaxAbs(pair.P_hat - dual) <= 1e-8);
  }
}

TEST_CASE("projector invariants under wide scalings") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(2, 60);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const DenseMatrix A = epra::testing::Gaussian(m, n, rng);
    const Vector D = epra::testing::LogUniform(n, 1e10, rng);
    const Vector D_hat = epra::testing::LogUniform(n, 1e10, rng);
    const auto pair = epra::RescaledProjectors(A, D, D_hat);
    for (const DenseMatrix* P : {&pair.P, &pair.P_hat}) {
      CHECK(MaxAbs(*P - P->transpose()) <= 1e-10);
      CHECK(MaxAbs(*P * *P - *P) <= 1e-8);
    }
    const DenseMatrix scaled = A * D.cwiseInverse().asDiagonal();
    CHECK(MaxAbs(pair.P * scaled.transpose()) <= 1e-8 * MaxAbs(scaled));
    const DenseMatrix dual_span = D_hat.asDiagonal() * A.transpose();
    CHECK(MaxAbs(pair.P_hat * dual_span - dual_span) <= 1e-8 * MaxAbs(dual_span));

    const Vector z = epra::testing::Gaussian(n, 1, rng);
    CHECK(epra::ApplyProjector(pair.P, z).norm() <= z.norm() * (1 + 1e-12));
    CHECK(epra::ApplyProjector(pair.P_hat, z).norm() <= z.norm() * (1 + 1e-12));
  }
}

TEST_CASE("apply_projector") {
  CHECK(epra::ApplyProjector(Mat({{0, 0}, {0, 1}}), Vec({0.5, 0.5})) == Vec({0, 0.5}));
  const Vector z = Vec({0.3, -1.5, 2.0});
  CHECK(epra::ApplyProjector(DenseMatrix::Identity(3, 3), z) == z);
  const auto pair = epra::ProjectorFromKernel(Mat({{1, 1}}));
  CHECK(MaxAbs(epra::ApplyProjector(pair.P, Vec({1, 0})) - Vec({0.5, -0.5})) <= 1e-15);
  CHECK(CodeOf([&] { epra::ApplyProjector(pair.P, z); }) == epra::ErrorCode::kDimensionMismatch);
}

TEST_CASE("rank deficiency is an error") {
  CHECK(CodeOf([] { epra::ProjectorFromKernel(Mat({{1, 2, 3}, {2, 4, 6}})); }) ==
        epra::ErrorCode::kRankDeficient);
  CHECK(CodeOf([] { epra::ProjectorFromKernel(Mat({{1, 2, 3}, {2, 4, 6.0000000000001}})); }) ==
        epra::ErrorCode::kRankDeficient);
  CHECK(CodeOf([] { epra::ProjectorFromKernel(Mat({{0, 0, 0}})); }) ==
        epra::ErrorCode::kRankDeficient);
}

TEST_CASE("empty kernel matrix gives the identity") {
  const auto pair = epra::ProjectorFromKernel(DenseMatrix(0, 4));
  CHECK(pair.P == DenseMatrix::Identity(4, 4));
  CHECK(pair.P_hat == DenseMatrix::Zero(4, 4));
}

TEST_CASE("instance validation") {
  epra::Instance inst;
  inst.A = Mat({{1, -2}});
  inst.meta.known_interior_point = Vec({1, 0.5});
  CHECK_NOTHROW(epra::ValidateInstance(inst));

  auto bad = inst;
  bad.meta.known_interior_point = Vec({1, 0.6});
  CHECK_THROWS_AS(epra::ValidateInstance(bad), epra::Error);

  bad = inst;
  bad.meta.known_interior_point = Vec({2, 1});  // max must be 1
  CHECK_THROWS_AS(epra::ValidateInstance(bad), epra::Error);

  bad = inst;
  bad.meta.known_partition = epra::Partition{{0}, {0, 1}};
  CHECK_THROWS_AS(epra::ValidateInstance(bad), epra::Error);

  bad = inst;
  bad.A = Mat({{1, 0}, {0, 1}, {1, 1}});
  bad.meta = {};
  CHECK_THROWS_AS(epra::ValidateInstance(bad), epra::Error);

  bad = inst;
  bad.A(0, 1) = NAN;
  CHECK_THROWS_AS(epra::ValidateInstance(bad), epra::Error);
}

TEST_CASE("revealed range handles rank deficiency") {
  const DenseMatrix M = Mat({{1, 2}, {2, 4}, {0, 0}});
  const DenseMatrix Q = epra::RevealedRange(M, 1e-10);
  REQUIRE(Q.cols() == 1);
  CHECK(MaxAbs(Q.transpose() * Q - DenseMatrix::Identity(1, 1)) <= 1e-14);
  CHECK(MaxAbs(M - Q * (Q.transpose() * M)) <= 1e-14);
  CHECK(epra::RevealedRange(DenseMatrix::Zero(3, 2), 1e-10).cols() == 0);
}
