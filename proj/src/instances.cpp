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

#include "epra/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace epra {

std::uint64_t MixSeed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t x = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kNaive: return "naive";
    case Family::kControlled: return "controlled";
    case Family::kPartitioned: return "partitioned";
  }
  return "unknown";
}

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kNaive, Family::kControlled, Family::kPartitioned}) {
    if (FamilyName(f) == name) return f;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown family '" + std::string(name) + "'");
}

namespace {

DenseMatrix GaussianMatrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix G(rows, cols);
  // Row-major fill so the draw order matches the file layout.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) G(i, j) = normal(rng);
  }
  return G;
}

// Uniform on (0, 1].
double UniformOpenClosed(Rng& rng) {
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void CheckRows(int m, int n) {
  if (m < 1 || m >= n) {
    throw Error(ErrorCode::kInvalidInput,
                "need 1 <= m < n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
}

Vector DrawInteriorPoint(int n, double delta_cap, double frac_small, Rng& rng) {
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int n_small = static_cast<int>(std::floor(frac_small * n));
  Vector x(n);
  for (int r = 0; r < n; ++r) {
    const double scale = r < n_small ? delta_cap : 1.0;
    x(order[static_cast<size_t>(r)]) = scale * UniformOpenClosed(rng);
  }
  return x / x.maxCoeff();
}

Instance ControlledWithRetries(int m, int n, double delta_cap,
                               std::optional<double> frac_small, Rng& rng) {
  CheckRows(m, n);
  if (!(delta_cap > 0.0 && delta_cap <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "delta_cap must lie in (0, 1]");
  }
  if (frac_small && !(*frac_small > 0.0 && *frac_small < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "frac_small must lie in (0, 1)");
  }
  constexpr int kMaxAttempts = 16;
  for (int attempt = 0;; ++attempt) {
    const double frac = frac_small.value_or(
        std::uniform_real_distribution<double>(kFracSmallLow, kFracSmallHigh)(rng));
    Vector x_bar = DrawInteriorPoint(n, delta_cap, frac, rng);
    try {
      return ControlledFromPoint(x_bar, m, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateMax || attempt + 1 >= kMaxAttempts) throw;
    }
  }
}

}  // namespace

Instance GenNaive(int m, int n, std::uint64_t seed) {
  CheckRows(m, n);
  Rng rng(seed);
  Instance inst;
  inst.A = GaussianMatrix(m, n, rng);
  inst.meta.generator = "naive";
  inst.meta.seed = seed;
  return inst;
}

Instance ControlledFromPoint(const Vector& x_bar, int m, Rng& rng) {
  const int n = static_cast<int>(x_bar.size());
  CheckRows(m, n);
  if (!(x_bar.minCoeff() > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "x_bar must be positive");
  }
  Eigen::Index k = 0;
  if (x_bar.maxCoeff(&k) != 1.0) {
    throw Error(ErrorCode::kInvalidInput, "x_bar must have max entry 1");
  }
  if ((x_bar.array() == 1.0).count() != 1) {
    throw Error(ErrorCode::kDegenerateMax, "max of x_bar attained more than once");
  }

  Instance inst;
  inst.A.resize(m, n);
  Vector u_bar = Vector::Zero(n);
  u_bar(k) = static_cast<double>(n);
  inst.A.row(0) = (u_bar - x_bar.cwiseInverse()).transpose();
  if (m > 1) {
    DenseMatrix G = GaussianMatrix(m - 1, n, rng);
    const double norm2 = x_bar.squaredNorm();
    for (int i = 0; i < m - 1; ++i) {
      const double c = G.row(i).dot(x_bar) / norm2;
      inst.A.row(i + 1) = G.row(i) - c * x_bar.transpose();
    }
  }
  inst.meta.generator = "controlled";
  double delta = 1.0;
  for (int j = 0; j < n; ++j) delta *= x_bar(j);
  inst.meta.known_delta = delta;
  inst.meta.known_interior_point = x_bar;
  return inst;
}

Instance GenControlled(int m, int n, double delta_cap, std::optional<double> frac_small,
                       std::uint64_t seed) {
  Rng rng(seed);
  Instance inst = ControlledWithRetries(m, n, delta_cap, frac_small, rng);
  inst.meta.seed = seed;
  return inst;
}

Instance GenPartitioned(int n, std::uint64_t seed, std::optional<int> size_split,
                        double delta_cap) {
  if (n < 4) throw Error(ErrorCode::kInvalidInput, "partitioned instances need n >= 4");
  Rng rng(seed);
  const int lo = std::max(2, (n + 3) / 4);
  const int hi = std::min(n - 2, (3 * n) / 4);
  int nb = 0;
  if (size_split) {
    nb = *size_split;
    if (nb < 2 || nb > n - 2) {
      throw Error(ErrorCode::kInvalidInput, "size_split must lie in [2, n-2]");
    }
  } else {
    nb = std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  const int nn = n - nb;

  const int m_b = std::uniform_int_distribution<int>(1, nb - 1)(rng);
  const Instance block_b = ControlledWithRetries(m_b, nb, delta_cap, std::nullopt, rng);
  const int m_m = std::uniform_int_distribution<int>(1, nn - 1)(rng);
  const Instance block_m = ControlledWithRetries(m_m, nn, delta_cap, std::nullopt, rng);
  // Im(A_NN^T) = ker(M), which meets the open orthant of R^N.
  const DenseMatrix A_nn = NullspaceBasis(block_m.A);
  const DenseMatrix A_nb = GaussianMatrix(m_b, nn, rng);

  const int m = m_b + static_cast<int>(A_nn.rows());
  Instance inst;
  inst.A = DenseMatrix::Zero(m, n);
  inst.A.topLeftCorner(m_b, nb) = block_b.A;
  inst.A.topRightCorner(m_b, nn) = A_nb;
  inst.A.bottomRightCorner(A_nn.rows(), nn) = A_nn;

  Partition partition;
  for (int i = 0; i < nb; ++i) partition.B.push_back(i);
  for (int i = nb; i < n; ++i) partition.N.push_back(i);
  inst.meta.generator = "partitioned";
  inst.meta.seed = seed;
  inst.meta.known_partition = std::move(partition);
  return inst;
}

Instance Generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::kNaive: return GenNaive(spec.m, spec.n, spec.seed);
    case Family::kControlled:
      return GenControlled(spec.m, spec.n, spec.delta_cap.value_or(kDefaultDeltaCap),
                           spec.frac_small, spec.seed);
    case Family::kPartitioned:
      return GenPartitioned(spec.n, spec.seed, spec.size_split,
                            spec.delta_cap.value_or(kPartitionedDeltaCap));
  }
  throw Error(ErrorCode::kInvalidInput, "unknown family");
}

DenseMatrix NullspaceBasis(const DenseMatrix& M, double rank_tol) {
  const Eigen::Index rows = M.rows();
  const Eigen::Index cols = M.cols();
  if (cols <= rows) {
    throw Error(ErrorCode::kFullRankSquare, "kernel of a " + std::to_string(rows) + "x" +
                                                std::to_string(cols) + " matrix is trivial");
  }
  if (rows == 0) return DenseMatrix::Identity(cols, cols);
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(M.transpose());
  const auto& R = qr.matrixQR();
  const double largest = std::abs(R(0, 0));
  const double smallest = std::abs(R(rows - 1, rows - 1));
  if (!(smallest > 0.0) || smallest < rank_tol * largest) {
    throw Error(ErrorCode::kRankDeficient, "matrix lacks full row rank");
  }
  const DenseMatrix Q = qr.householderQ();
  return Q.rightCols(cols - rows).transpose();
}

}  // namespace epra
