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

#include "epra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "epra/instances.hpp"

namespace epra::oracle {

double WendelProbability(int m, int n) {
  if (m < 1 || m > n) {
    throw Error(ErrorCode::kInvalidInput, "need 1 <= m <= n");
  }
  if (n <= 64) {
    unsigned __int128 binom = 1;  // C(n-1, k)
    unsigned __int128 sum = 0;
    for (int k = 0; k < m; ++k) {
      sum += binom;
      binom = binom * static_cast<unsigned>(n - 1 - k) / static_cast<unsigned>(k + 1);
    }
    return std::ldexp(static_cast<double>(sum), 1 - n);
  }
  // log C(n-1, k), accumulated with a running log-sum-exp.
  double log_sum = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    const double term = std::lgamma(n) - std::lgamma(k + 1.0) - std::lgamma(n - k);
    const double hi = std::max(log_sum, term);
    log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(term - hi));
  }
  return std::min(1.0, std::exp(log_sum + (1 - n) * std::log(2.0)));
}

double MonteCarloFeasibleRate(int m, int n, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidInput, "trials must be >= 1");
  const EpraConfig cfg;
  int feasible = 0;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = GenNaive(m, n, MixSeed(seed, static_cast<std::uint64_t>(t)));
    if (Solve(inst, cfg).status == EpraStatus::kTrivialPrimal) ++feasible;
  }
  return static_cast<double>(feasible) / trials;
}

MembershipCheck VerifyMembership(const DenseMatrix& A, const Vector& x, double tol) {
  if (A.cols() != x.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "A and x");
  }
  MembershipCheck check;
  if (A.rows() == 0 || x.size() == 0) {
    check.ok = true;
    return check;
  }
  check.residual = (A * x).cwiseAbs().maxCoeff();
  const double scale = x.cwiseAbs().maxCoeff() * A.cwiseAbs().maxCoeff();
  check.ok = check.residual <= tol * std::max(1.0, scale);
  return check;
}

namespace {

double MaxAbs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

Vector Normalized(const Vector& v) {
  const double norm = MaxAbs(v);
  return norm > 0.0 ? Vector(v / norm) : v;
}

bool SameSet(IndexSet a, IndexSet b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

VerificationReport VerifyRelintPair(const Instance& inst, const EpraResult& result,
                                    double U, double tol) {
  const int n = inst.n();
  VerificationReport report;
  if (result.x.size() != n || result.x_hat.size() != n) return report;

  std::vector<int> seen(static_cast<size_t>(n), 0);
  bool indices_ok = true;
  for (const IndexSet* side : {&result.B, &result.N}) {
    for (int i : *side) {
      if (i < 0 || i >= n) {
        indices_ok = false;
        continue;
      }
      ++seen[static_cast<size_t>(i)];
    }
  }
  const bool is_partition =
      indices_ok && std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });

  const Vector x = Normalized(result.x);
  const Vector x_hat = Normalized(result.x_hat);
  const MembershipCheck primal = VerifyMembership(inst.A, x, tol);
  double dual_residual = 0.0;
  if (inst.m() == 0) {
    dual_residual = MaxAbs(x_hat);
  } else {
    const DenseMatrix Q = RangeBasis(inst.A.transpose(), 0.0);
    dual_residual = MaxAbs(x_hat - Q * (Q.transpose() * x_hat));
  }
  report.membership_ok = primal.ok && dual_residual <= tol;
  report.max_residual = std::max(primal.residual, dual_residual);

  bool positive = true;
  for (int i : result.B) positive = positive && i >= 0 && i < n && x(i) > 0.0;
  for (int i : result.N) positive = positive && i >= 0 && i < n && x_hat(i) > 0.0;
  report.positivity_ok = positive;

  // On the normalized vectors ||x||_inf is 1 (or x is zero).
  bool small = true;
  const double x_cut = MaxAbs(x) / U;
  const double x_hat_cut = MaxAbs(x_hat) / U;
  for (int i : result.N) small = small && i >= 0 && i < n && std::abs(x(i)) <= x_cut;
  for (int i : result.B) small = small && i >= 0 && i < n && std::abs(x_hat(i)) <= x_hat_cut;

  report.relint_ok = is_partition && report.membership_ok && report.positivity_ok && small;

  if (inst.meta.known_partition) {
    report.partition_matches_ground_truth =
        SameSet(result.B, inst.meta.known_partition->B) &&
        SameSet(result.N, inst.meta.known_partition->N);
  } else if (inst.meta.known_interior_point) {
    report.partition_matches_ground_truth =
        static_cast<int>(result.B.size()) == n && result.N.empty();
  }
  return report;
}

std::optional<double> ConditionMeasure1d(const Vector& v) {
  if (v.size() == 0 || MaxAbs(v) == 0.0) {
    throw Error(ErrorCode::kZeroVector, "v spans no subspace");
  }
  const bool positive = v.minCoeff() > 0.0;
  const bool negative = v.maxCoeff() < 0.0;
  if (!positive && !negative) return std::nullopt;
  const double norm = MaxAbs(v);
  double delta = 1.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) delta *= std::abs(v(j)) / norm;
  return delta;
}

namespace {

// Solves [[H, C^T], [C, 0]] [d; lambda] = [rhs; 0] and returns d.
Vector KktStep(const DenseMatrix& H, const DenseMatrix& C, const Vector& rhs) {
  const Eigen::Index k = H.rows();
  const Eigen::Index r = C.rows();
  DenseMatrix K = DenseMatrix::Zero(k + r, k + r);
  K.topLeftCorner(k, k) = H;
  K.topRightCorner(k, r) = C.transpose();
  K.bottomLeftCorner(r, k) = C;
  Vector b = Vector::Zero(k + r);
  b.head(k) = rhs;
  return K.fullPivLu().solve(b).head(k);
}

// Positive and in ker(A) relative to its own size; rounding noise from
// projecting a vector orthogonal to ker(A) fails the second test.
bool PositiveMember(const DenseMatrix& A, const Vector& x) {
  if (!(x.minCoeff() > 0.0)) return false;
  if (A.rows() == 0) return true;
  const double scale = A.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff();
  return (A * x).cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

// Phase one: minimize rho * s - sum log(x + s) over A x = 0, 1^T x = n
// for growing rho until s < 0, which leaves x > 0 in ker(A).
std::optional<Vector> PositiveKernelPoint(const DenseMatrix& A, const DenseMatrix& P,
                                          const Vector& y, int* budget) {
  const Eigen::Index n = A.cols();
  const Eigen::Index m = A.rows();
  Vector x = P * y;
  const double total = x.sum();
  if (!(total > 0.0)) return std::nullopt;
  x *= static_cast<double>(n) / total;
  if (PositiveMember(A, x)) return x;

  DenseMatrix C = DenseMatrix::Zero(m + 1, n + 1);
  C.topLeftCorner(m, n) = A;
  C.block(m, 0, 1, n).setOnes();
  double s = 1.0 - x.minCoeff();
  auto phi = [&](const Vector& xv, double sv, double rho) {
    return rho * sv - ((xv.array() + sv).log()).sum();
  };

  for (double rho = 1.0; rho < 1e14 && *budget > 0; rho *= 4.0) {
    for (int step = 0; step < 60 && *budget > 0; ++step, --*budget) {
      const Vector inv = (x.array() + s).inverse().matrix();
      const Vector h = inv.cwiseAbs2();
      DenseMatrix H = DenseMatrix::Zero(n + 1, n + 1);
      H.topLeftCorner(n, n) = h.asDiagonal();
      H.block(0, n, n, 1) = h;
      H.block(n, 0, 1, n) = h.transpose();
      H(n, n) = h.sum();
      Vector grad(n + 1);
      grad.head(n) = -inv;
      grad(n) = rho - inv.sum();
      const Vector d = KktStep(H, C, -grad);
      const double decrement = -grad.dot(d);
      if (!(decrement > 1e-12)) break;
      const Vector dx = d.head(n);
      const double ds = d(n);
      const double phi0 = phi(x, s, rho);
      double alpha = 1.0;
      while (alpha > 1e-12) {
        const Vector w = x + alpha * dx;
        if ((w.array() + s + alpha * ds).minCoeff() > 0.0 &&
            phi(w, s + alpha * ds, rho) <= phi0 - 0.25 * alpha * decrement) {
          break;
        }
        alpha *= 0.5;
      }
      if (alpha <= 1e-12) break;
      x += alpha * dx;
      s += alpha * ds;
      if (s < 0.0) {
        const Vector projected = P * x;
        if (PositiveMember(A, projected)) return projected;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

double ConditionMeasureSearch(const DenseMatrix& A, int iters, std::uint64_t seed) {
  const Eigen::Index n = A.cols();
  const Eigen::Index m = A.rows();
  if (m >= n) throw Error(ErrorCode::kInvalidInput, "ker(A) must be nontrivial");
  if (iters < 1) throw Error(ErrorCode::kInvalidInput, "iters must be >= 1");
  const DenseMatrix P = ProjectorFromKernel(A).P;

  int budget = iters;
  std::optional<Vector> start;
  Rng rng(seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  for (int restart = 0; restart < 4 && !start && budget > 0; ++restart) {
    Vector y = Vector::Ones(n);
    if (restart > 0) {
      for (Eigen::Index j = 0; j < n; ++j) y(j) = jitter(rng);
    }
    start = PositiveKernelPoint(A, P, y, &budget);
  }
  if (!start) {
    throw Error(ErrorCode::kNoFeasibleStart, "no positive point of ker(A) found");
  }

  auto log_measure = [n](const Vector& v) {
    return v.array().log().sum() - static_cast<double>(n) * std::log(v.maxCoeff());
  };
  Vector x = *start * (0.5 / start->maxCoeff());
  double best = log_measure(x);

  // Phase two: maximize sum log x + tau sum log(1 - x) over ker(A).
  for (double tau = 1.0; tau > 1e-12 && budget > 0; tau *= 0.2) {
    for (int step = 0; step < 60 && budget > 0; ++step, --budget) {
      const Vector inv = x.cwiseInverse();
      const Vector inv_gap = (1.0 - x.array()).inverse().matrix();
      const Vector grad = inv - tau * inv_gap;
      const Vector h = inv.cwiseAbs2() + tau * inv_gap.cwiseAbs2();
      const Vector d = m > 0 ? KktStep(h.asDiagonal().toDenseMatrix(), A, grad)
                             : Vector(grad.cwiseQuotient(h));
      const double decrement = grad.dot(d);
      if (!(decrement > 1e-14)) break;
      auto value = [tau](const Vector& v) {
        return v.array().log().sum() + tau * (1.0 - v.array()).log().sum();
      };
      const double f0 = value(x);
      double alpha = 1.0;
      while (alpha > 1e-14) {
        const Vector trial = x + alpha * d;
        if (trial.minCoeff() > 0.0 && trial.maxCoeff() < 1.0 &&
            value(trial) >= f0 + 0.25 * alpha * decrement) {
          break;
        }
        alpha *= 0.5;
      }
      if (alpha <= 1e-14) break;
      x += alpha * d;
    }
    const Vector projected = P * x;
    if (projected.minCoeff() > 0.0) {
      best = std::max(best, log_measure(projected));
      if (projected.maxCoeff() < 1.0) x = projected;
    }
  }
  return std::exp(best);
}

}  // namespace epra::oracle
