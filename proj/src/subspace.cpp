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

#include "epra/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace epra {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kFullRankSquare: return "FullRankSquare";
    case ErrorCode::kEmptySupport: return "EmptySupport";
    case ErrorCode::kNoImprovingVertex: return "NoImprovingVertex";
    case ErrorCode::kDegenerateStep: return "DegenerateStep";
    case ErrorCode::kBothSidesInterior: return "BothSidesInterior";
    case ErrorCode::kDegenerateMax: return "DegenerateMax";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNoFeasibleStart: return "NoFeasibleStart";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

DenseMatrix OuterProduct(const DenseMatrix& Q) {
  const Eigen::Index n = Q.rows();
  DenseMatrix H = DenseMatrix::Zero(n, n);
  if (Q.cols() == 0) return H;
  H.selfadjointView<Eigen::Lower>().rankUpdate(Q);
  H.triangularView<Eigen::StrictlyUpper>() = H.transpose();
  return H;
}

DenseMatrix RevealedRange(const DenseMatrix& M, double rank_tol) {
  const Eigen::Index n = M.rows();
  if (M.cols() == 0 || n == 0) return DenseMatrix(n, 0);
  Eigen::ColPivHouseholderQR<DenseMatrix> qr(M);
  qr.setThreshold(rank_tol);
  const Eigen::Index r = qr.rank();
  if (r == 0) return DenseMatrix(n, 0);
  return qr.householderQ() * DenseMatrix::Identity(n, r);
}

DenseMatrix RangeBasis(const DenseMatrix& M, double rank_tol) {
  const Eigen::Index n = M.rows();
  const Eigen::Index k = M.cols();
  if (k == 0) return DenseMatrix(n, 0);
  if (k > n) {
    throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  }
  if (!M.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "matrix has non-finite entries");
  }

  // Householder QR with column pivoting is row-wise backward stable when rows
  // are presented in order of decreasing magnitude. Rescaled matrices have
  // rows spread over many orders of magnitude, so sort first.
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Vector row_norm(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    row_norm(i) = M.row(i).cwiseAbs().maxCoeff();
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return row_norm(a) > row_norm(b);
  });
  DenseMatrix sorted(n, k);
  for (Eigen::Index i = 0; i < n; ++i) sorted.row(i) = M.row(order[i]);

  Eigen::ColPivHouseholderQR<DenseMatrix> qr(sorted);
  const auto& R = qr.matrixQR();
  const double largest = std::abs(R(0, 0));
  const double smallest = std::abs(R(k - 1, k - 1));
  if (!(smallest > 0.0) || (rank_tol > 0.0 && smallest < rank_tol * largest)) {
    throw Error(ErrorCode::kRankDeficient,
                "diagonal factor ratio " + std::to_string(smallest / largest) +
                    " below rank tolerance");
  }

  DenseMatrix Q_sorted = qr.householderQ() * DenseMatrix::Identity(n, k);
  DenseMatrix Q(n, k);
  for (Eigen::Index i = 0; i < n; ++i) Q.row(order[i]) = Q_sorted.row(i);
  return Q;
}

ProjectorPair ProjectorFromKernel(const DenseMatrix& A, double rank_tol) {
  const Eigen::Index n = A.cols();
  DenseMatrix Q = RangeBasis(A.transpose(), rank_tol);
  ProjectorPair pair;
  pair.P_hat = OuterProduct(Q);
  pair.P = DenseMatrix::Identity(n, n) - pair.P_hat;
  return pair;
}

ProjectorBuilder::ProjectorBuilder(DenseMatrix A, double rank_tol)
    : A_(std::move(A)) {
  RangeBasis(A_.transpose(), rank_tol);
}

DenseMatrix ProjectorBuilder::Primal(const Vector& D) const {
  const Eigen::Index n = A_.cols();
  if (D.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "primal scaling length");
  }
  // D(L) = ker(A D^-1); its complement is Im(D^-1 A^T).
  DenseMatrix scaled = D.cwiseInverse().asDiagonal() * A_.transpose();
  DenseMatrix P = DenseMatrix::Identity(n, n) - OuterProduct(RangeBasis(scaled, 0.0));
  return P;
}

DenseMatrix ProjectorBuilder::Dual(const Vector& D_hat) const {
  const Eigen::Index n = A_.cols();
  if (D_hat.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "dual scaling length");
  }
  DenseMatrix scaled = D_hat.asDiagonal() * A_.transpose();
  return OuterProduct(RangeBasis(scaled, 0.0));
}

ProjectorPair RescaledProjectors(const DenseMatrix& A, const Vector& D,
                                 const Vector& D_hat, double rank_tol) {
  ProjectorBuilder builder(A, rank_tol);
  return ProjectorPair{builder.Primal(D), builder.Dual(D_hat)};
}

Vector ApplyProjector(const DenseMatrix& P, const Vector& z) {
  if (P.cols() != z.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "projector is " + std::to_string(P.rows()) + "x" +
                    std::to_string(P.cols()) + ", vector has " +
                    std::to_string(z.size()) + " entries");
  }
  return P * z;
}

void ValidateInstance(const Instance& inst, double rank_tol) {
  const int n = inst.n();
  const int m = inst.m();
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "n must be positive");
  if (m > n) throw Error(ErrorCode::kInvalidInput, "m exceeds n");
  if (!inst.A.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "A has non-finite entries");
  }
  RangeBasis(inst.A.transpose(), rank_tol);

  if (inst.meta.known_interior_point) {
    const Vector& x = *inst.meta.known_interior_point;
    if (x.size() != n) {
      throw Error(ErrorCode::kInvalidInput, "interior point has wrong length");
    }
    if (!(x.minCoeff() > 0.0)) {
      throw Error(ErrorCode::kInvalidInput, "interior point is not positive");
    }
    if (std::abs(x.maxCoeff() - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidInput, "interior point is not normalized");
    }
    for (int i = 0; i < m; ++i) {
      const double scale = (inst.A.row(i).transpose().cwiseProduct(x)).cwiseAbs().sum();
      if (std::abs(inst.A.row(i).dot(x)) > 1e-8 * std::max(1.0, scale)) {
        throw Error(ErrorCode::kInvalidInput, "interior point is not in ker(A)");
      }
    }
  }

  if (inst.meta.known_partition) {
    std::vector<int> seen(static_cast<size_t>(n), 0);
    for (const IndexSet* side : {&inst.meta.known_partition->B, &inst.meta.known_partition->N}) {
      for (int i : *side) {
        if (i < 0 || i >= n) {
          throw Error(ErrorCode::kInvalidInput, "partition index out of range");
        }
        ++seen[static_cast<size_t>(i)];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      throw Error(ErrorCode::kInvalidInput, "partition is not disjoint and covering");
    }
  }
}

}  // namespace epra
