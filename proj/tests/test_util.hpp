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

// Shared helpers for the unit tests. The projector and binomial routines
// here deliberately take a different numerical route from the library.

#ifndef EPRA_TESTS_TEST_UTIL_HPP_
#define EPRA_TESTS_TEST_UTIL_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "epra/common.hpp"

namespace epra::testing {

inline DenseMatrix Gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) M(i, j) = normal(rng);
  }
  return M;
}

inline Vector LogUniform(int n, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> expo(0.0, std::log10(hi));
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = std::pow(10.0, expo(rng));
  return v;
}

// Projector onto Im(M) through the normal equations, M (M^T M)^-1 M^T.
inline DenseMatrix NormalEquationProjector(const DenseMatrix& M) {
  const DenseMatrix G = M.transpose() * M;
  return M * G.ldlt().solve(M.transpose());
}

inline double MaxAbs(const DenseMatrix& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

// C(n-1, k) summed through Pascal's triangle in long double.
inline long double WendelByPascal(int m, int n) {
  std::vector<long double> row(1, 1.0L);
  for (int r = 1; r <= n - 1; ++r) {
    std::vector<long double> next(static_cast<size_t>(r + 1), 1.0L);
    for (int k = 1; k < r; ++k) next[static_cast<size_t>(k)] = row[static_cast<size_t>(k - 1)] + row[static_cast<size_t>(k)];
    row = std::move(next);
  }
  long double sum = 0.0L;
  for (int k = 0; k < m; ++k) sum += row[static_cast<size_t>(k)];
  return sum / std::pow(2.0L, n - 1);
}

// Minimizer of <u, v> + (mu / 2) ||u - u_bar||^2 over the 2-simplex by a
// dense grid, then repeated grid searches on shrinking windows around the
// incumbent. The objective is convex, so zooming cannot lose the minimum.
inline Vector BruteForceProx3(const Vector& v, double mu, const Vector& u_bar, int steps) {
  auto value = [&](double a, double b) {
    Vector u(3);
    u << a, b, 1.0 - a - b;
    return u.dot(v) + 0.5 * mu * (u - u_bar).squaredNorm();
  };
  double best_a = 0.0, best_b = 0.0, best_val = INFINITY;
  for (int i = 0; i <= steps; ++i) {
    for (int k = 0; i + k <= steps; ++k) {
      const double a = double(i) / steps, b = double(k) / steps;
      const double val = value(a, b);
      if (val < best_val) best_val = val, best_a = a, best_b = b;
    }
  }
  double radius = 2.0 / steps;
  const int local = 40;
  for (int level = 0; level < 12; ++level) {
    const double ca = best_a, cb = best_b;
    for (int i = -local; i <= local; ++i) {
      for (int k = -local; k <= local; ++k) {
        const double a = ca + radius * i / local, b = cb + radius * k / local;
        if (a < 0.0 || b < 0.0 || a + b > 1.0) continue;
        const double val = value(a, b);
        if (val < best_val) best_val = val, best_a = a, best_b = b;
      }
    }
    radius /= 8.0;
  }
  Vector best(3);
  best << best_a, best_b, 1.0 - best_a - best_b;
  return best;
}

}  // namespace epra::testing

#endif  // EPRA_TESTS_TEST_UTIL_HPP_
