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

// Basic procedures: first-order schemes over the standard simplex that, given
// an orthogonal projector P and epsilon in (0,1), find z >= 0, z != 0 with
// either Pz > 0 or ||(Pz)^+||_1 <= epsilon * ||z||_inf.

#ifndef EPRA_BASIC_HPP_
#define EPRA_BASIC_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "epra/common.hpp"

namespace epra {

enum class Scheme { kPerceptron, kVonNeumann, kVonNeumannAway, kSmoothPerceptron };

std::string_view SchemeName(Scheme scheme);
// Accepts "perceptron", "vn", "vna", "smooth". Throws kInvalidInput.
Scheme ParseScheme(std::string_view name);

inline constexpr std::int64_t kStandaloneIterLimit = 10000;
inline constexpr std::int64_t kEmbeddedIterLimit = 1000000;

struct BpConfig {
  double epsilon = 0.5;
  std::int64_t max_iters = kStandaloneIterLimit;  // 0 means unlimited
  Scheme scheme = Scheme::kSmoothPerceptron;
};

enum class BpStatus { kInteriorFound, kRescaleReady, kIterLimit };

std::string_view BpStatusName(BpStatus status);

struct BpOutcome {
  BpStatus status = BpStatus::kIterLimit;
  Vector z;
  Vector Pz;
  std::int64_t iterations = 0;
};

// Called with (t, z_t, Pz_t) for every iterate, including the returned one.
using IterateObserver =
    std::function<void(std::int64_t, const Vector&, const Vector&)>;

// kInteriorFound if min(Pz) > 0, kRescaleReady if sum(max(Pz, 0)) <=
// epsilon * max(z), nullopt otherwise. Positivity is an exact comparison.
std::optional<BpStatus> StopCheck(const Vector& Pz, const Vector& z, double epsilon);

// Lowest index of a minimal entry; the vertex u(v) of the simplex.
int MinVertex(const Vector& v);

// Lowest index maximizing Pz over the support {i : z_i > 0}; the away
// vertex v(z). Throws kEmptySupport when z has no positive entry.
int AwayVertex(const Vector& z, const Vector& Pz);

// Euclidean projection of y onto the standard simplex.
Vector ProjectOntoSimplex(const Vector& y);

// argmin over the simplex of <u, v> + (mu/2) ||u - u_bar||^2, i.e. the
// simplex projection of u_bar - v / mu.
Vector SimplexProx(const Vector& v, double mu, const Vector& u_bar);

// Uniform point (1/n) * ones.
Vector UniformSimplexPoint(int n);

BpOutcome RunPerceptron(const DenseMatrix& P, const Vector& z0, const BpConfig& cfg,
                        const IterateObserver& observer = {});
BpOutcome RunVonNeumann(const DenseMatrix& P, const Vector& z0, const BpConfig& cfg,
                        const IterateObserver& observer = {});
BpOutcome RunVonNeumannAway(const DenseMatrix& P, const Vector& z0,
                            const BpConfig& cfg, const IterateObserver& observer = {});
BpOutcome RunSmoothPerceptron(const DenseMatrix& P, const Vector& u_bar,
                              const BpConfig& cfg, const IterateObserver& observer = {});

// Dispatches on cfg.scheme. start is z0 (or u_bar for the smooth scheme).
BpOutcome RunBasicProcedure(const DenseMatrix& P, const Vector& start,
                            const BpConfig& cfg, const IterateObserver& observer = {});

}  // namespace epra

#endif  // EPRA_BASIC_HPP_
