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

// Random instance families: naive Gaussian kernels, kernels with a prescribed
// most-interior point (and hence a known condition measure), and block
// instances with a known non-trivial partition.

#ifndef EPRA_INSTANCES_HPP_
#define EPRA_INSTANCES_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "epra/subspace.hpp"

namespace epra {

using Rng = std::mt19937_64;

// SplitMix64 finalizer applied to base + (index + 1) * golden gamma. Used
// for every per-instance seed so results never depend on scheduling order.
std::uint64_t MixSeed(std::uint64_t base, std::uint64_t index);

enum class Family { kNaive, kControlled, kPartitioned };

std::string_view FamilyName(Family family);  // "naive" / "controlled" / "partitioned"
Family ParseFamily(std::string_view name);

inline constexpr double kDefaultDeltaCap = 0.001;
// Partitioned blocks draw every x_bar entry from (0, 1]; a cap of 1 turns
// the small chunk off.
inline constexpr double kPartitionedDeltaCap = 1.0;
inline constexpr double kFracSmallLow = 0.2;
inline constexpr double kFracSmallHigh = 0.8;

struct GenSpec {
  Family family = Family::kNaive;
  int n = 0;
  int m = 0;  // ignored for kPartitioned
  std::uint64_t seed = 0;
  std::optional<double> delta_cap;  // family default when absent
  std::optional<double> frac_small;  // drawn from [0.2, 0.8] when absent
  std::optional<int> size_split;     // |B| for kPartitioned
};

Instance Generate(const GenSpec& spec);

// A with i.i.d. standard normal entries. Requires 1 <= m < n.
Instance GenNaive(int m, int n, std::uint64_t seed);

// Kernel whose most interior point is a random x_bar with a fraction of its
// entries below delta_cap. Requires 1 <= m < n.
Instance GenControlled(int m, int n, double delta_cap, std::optional<double> frac_small,
                       std::uint64_t seed);

// Builds A from a prescribed x_bar (x_bar > 0, unique maximum equal to 1):
// a_1 = n e_k - 1 / x_bar where k = argmax x_bar, rows 2..m Gaussian with
// their x_bar component removed. Throws kDegenerateMax if the max is tied.
Instance ControlledFromPoint(const Vector& x_bar, int m, Rng& rng);

// Block instance [[A_BB, A_NB], [0, A_NN]] with B = {1..|B|}. Requires n >= 4.
Instance GenPartitioned(int n, std::uint64_t seed, std::optional<int> size_split,
                        double delta_cap = kPartitionedDeltaCap);

// Rows form an orthonormal basis of ker(M). Throws kFullRankSquare when the
// kernel is trivial and kRankDeficient when M lacks full row rank.
DenseMatrix NullspaceBasis(const DenseMatrix& M, double rank_tol = kDefaultRankTol);

}  // namespace epra

#endif  // EPRA_INSTANCES_HPP_
