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

// Subspaces L = ker(A) and the orthogonal projectors onto L, its complement,
// and their diagonally rescaled images D(L) and D_hat(L^perp).

#ifndef EPRA_SUBSPACE_HPP_
#define EPRA_SUBSPACE_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "epra/common.hpp"

namespace epra {

inline constexpr double kDefaultRankTol = 1e-10;

struct Partition {
  IndexSet B;
  IndexSet N;
};

// Ground truth recorded by the instance generators.
struct InstanceMeta {
  std::string generator;
  std::uint64_t seed = 0;
  // Exactly one of known_delta / delta_infeasible may be set.
  std::optional<double> known_delta;
  bool delta_infeasible = false;
  std::optional<Vector> known_interior_point;
  std::optional<Partition> known_partition;
};

struct Instance {
  DenseMatrix A;  // m x n, L = ker(A)
  InstanceMeta meta;

  int n() const { return static_cast<int>(A.cols()); }
  int m() const { return static_cast<int>(A.rows()); }
};

// Throws kInvalidInput when an instance violates its invariants: m <= n,
// finite entries, full row rank, a consistent interior point, and a
// disjoint covering partition.
void ValidateInstance(const Instance& inst, double rank_tol = kDefaultRankTol);

struct ProjectorPair {
  DenseMatrix P;      // onto the working primal subspace
  DenseMatrix P_hat;  // onto the working dual subspace
};

// Projectors for ker(A) and Im(A^T) from a QR factorization of A^T.
ProjectorPair ProjectorFromKernel(const DenseMatrix& A,
                                  double rank_tol = kDefaultRankTol);

// Projectors onto D(L) = ker(A D^-1) and D_hat(L^perp) = Im(D_hat A^T).
ProjectorPair RescaledProjectors(const DenseMatrix& A, const Vector& D,
                                 const Vector& D_hat,
                                 double rank_tol = kDefaultRankTol);

// Returns P * z.
Vector ApplyProjector(const DenseMatrix& P, const Vector& z);

// Holds A after a one-time rank check and rebuilds either side of the
// projector pair for new diagonal scalings. Diagonal scaling never changes
// the rank, so the rebuilds skip the relative-diagonal test; it is not
// scale invariant once D spans ten orders of magnitude.
class ProjectorBuilder {
 public:
  explicit ProjectorBuilder(DenseMatrix A, double rank_tol = kDefaultRankTol);

  DenseMatrix Primal(const Vector& D) const;
  DenseMatrix Dual(const Vector& D_hat) const;

  const DenseMatrix& A() const { return A_; }
  int n() const { return static_cast<int>(A_.cols()); }

 private:
  DenseMatrix A_;
};

// Orthonormal basis (as columns) of Im(M) for M with full column rank.
// When rank_tol > 0 the relative magnitude of R's diagonal is checked.
DenseMatrix RangeBasis(const DenseMatrix& M, double rank_tol);

// Orthonormal basis of Im(M) for M of any rank; pivots at or below
// rank_tol times the largest one count as zero.
DenseMatrix RevealedRange(const DenseMatrix& M, double rank_tol);

// Q Q^T, exactly symmetric.
DenseMatrix OuterProduct(const DenseMatrix& Q);

}  // namespace epra

#endif  // EPRA_SUBSPACE_HPP_
