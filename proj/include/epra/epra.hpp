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

// Enhanced projection and rescaling: runs a basic procedure on the rescaled
// primal space D(L) and dual space D_hat(L^perp), stops when the pair of
// points identifies the partition (B, N) of {1, ..., n}, and otherwise
// rescales every direction the basic procedures flag, capped at U.

#ifndef EPRA_EPRA_HPP_
#define EPRA_EPRA_HPP_

#include <cstdint>
#include <functional>
#include <string_view>

#include "epra/basic.hpp"
#include "epra/subspace.hpp"

namespace epra {

enum class RescaleMode { kAllDirections, kSingleDirection };

std::string_view RescaleModeName(RescaleMode mode);  // "all" / "single"
RescaleMode ParseRescaleMode(std::string_view name);

struct EpraConfig {
  double U = 1e10;
  double epsilon = 0.5;
  Scheme scheme = Scheme::kSmoothPerceptron;
  int max_rounds = 100;
  std::int64_t bp_max_iters = kEmbeddedIterLimit;
  RescaleMode rescale_mode = RescaleMode::kAllDirections;
  double membership_tol = 1e-8;
  double rank_tol = kDefaultRankTol;
};

enum class EpraStatus {
  kTrivialPrimal,
  kTrivialDual,
  kPartitionFound,
  kRoundLimit,
  kStalled,
};

std::string_view EpraStatusName(EpraStatus status);
EpraStatus ParseEpraStatus(std::string_view name);

// True for the statuses that carry a partition certificate.
bool IsSolved(EpraStatus status);

struct EpraResult {
  EpraStatus status = EpraStatus::kStalled;
  Vector x;      // in L
  Vector x_hat;  // in L^perp
  IndexSet B;
  IndexSet N;
  int rounds = 0;  // rescaling steps performed
  std::int64_t bp_iters_primal = 0;
  std::int64_t bp_iters_dual = 0;
  double wall_time = 0.0;  // seconds
  Vector D;
  Vector D_hat;
};

struct PartitionGuess {
  IndexSet B;
  IndexSet N;
  bool is_partition = false;
};

// B = {i : |x_hat_i| < ||x_hat||_inf / U}, N = {i : |x_i| < ||x||_inf / U}.
PartitionGuess IdentifyPartition(const Vector& x, const Vector& x_hat, double U);

// New diagonal after a basic procedure returned z with ||(Pz)^+||_1 small.
// kAllDirections: D_i <- min((1 + e_i) D_i, U), e = (z / ||(Pz)^+||_1 - 1)^+.
// kSingleDirection: doubles D_i (capped) at the first i with z_i = max(z).
Vector RescaleUpdate(const Vector& z, const Vector& Pz, const Vector& D, double U,
                     RescaleMode mode);

struct RoundTrace {
  int round;
  const BpOutcome& primal;
  const BpOutcome& dual;
  const Vector& D;  // scalings after this round's update
  const Vector& D_hat;
};

using RoundObserver = std::function<void(const RoundTrace&)>;

// Throws kRankDeficient for rank-deficient A and kBothSidesInterior if both
// basic procedures certify interior points in the same round.
EpraResult Solve(const Instance& inst, const EpraConfig& cfg,
                 const RoundObserver& observer = {});

}  // namespace epra

#endif  // EPRA_EPRA_HPP_
