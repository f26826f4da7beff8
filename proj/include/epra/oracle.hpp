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

// Verification oracles that do not share code paths with the solver:
// certificate checks, Wendel's coverage probability, and condition-measure
// computations for small instances.

#ifndef EPRA_ORACLE_HPP_
#define EPRA_ORACLE_HPP_

#include <cstdint>
#include <optional>

#include "epra/epra.hpp"
#include "epra/subspace.hpp"

namespace epra::oracle {

struct VerificationReport {
  bool membership_ok = false;  // x in ker(A) and x_hat in Im(A^T)
  bool positivity_ok = false;  // x_B > 0 and x_hat_N > 0
  bool relint_ok = false;      // all U-approximate relint conditions
  std::optional<bool> partition_matches_ground_truth;
  double max_residual = 0.0;

  bool Passed() const { return relint_ok && partition_matches_ground_truth.value_or(true); }
};

// Probability that the complement of a uniformly random (n-m)-dimensional
// subspace meets the open orthant: 2^(1-n) sum_{k<m} C(n-1, k). Exact
// integer arithmetic for n <= 64, log domain above. Requires 1 <= m <= n.
double WendelProbability(int m, int n);

// Fraction of naive instances on which the solver returns kTrivialPrimal.
double MonteCarloFeasibleRate(int m, int n, int trials, std::uint64_t seed);

struct MembershipCheck {
  bool ok = false;
  double residual = 0.0;  // ||A x||_inf
};

// ok iff ||A x||_inf <= tol * max(1, ||x||_inf * ||A||_max).
MembershipCheck VerifyMembership(const DenseMatrix& A, const Vector& x, double tol);

// Checks the pair (x, x_hat) and (B, N) of a result against the instance.
// Memberships are measured on x / ||x||_inf and x_hat / ||x_hat||_inf, the
// dual one as ||(I - P_hat) x_hat||_inf with P_hat for the unscaled space.
VerificationReport VerifyRelintPair(const Instance& inst, const EpraResult& result,
                                    double U, double tol = 1e-8);

// Condition measure of the ray spanned by v: prod |v_j| / ||v||_inf when v
// or -v is positive, nullopt (infeasible) otherwise. Throws kZeroVector.
std::optional<double> ConditionMeasure1d(const Vector& v);

// Lower bound on the condition measure of ker(A): a positive kernel point
// is found by a phase-one barrier method, then sum(log x) is maximized over
// ker(A) with 0 < x < 1 by an equality-constrained Newton barrier method.
// Returns prod(x_j / ||x||_inf) for the best iterate. Throws
// kNoFeasibleStart if ker(A) does not meet the open orthant.
double ConditionMeasureSearch(const DenseMatrix& A, int iters, std::uint64_t seed);

}  // namespace epra::oracle

#endif  // EPRA_ORACLE_HPP_
