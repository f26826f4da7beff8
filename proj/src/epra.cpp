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

#include "epra/epra.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>

namespace epra {

std::string_view RescaleModeName(RescaleMode mode) {
  return mode == RescaleMode::kAllDirections ? "all" : "single";
}

RescaleMode ParseRescaleMode(std::string_view name) {
  if (name == "all") return RescaleMode::kAllDirections;
  if (name == "single") return RescaleMode::kSingleDirection;
  throw Error(ErrorCode::kInvalidInput, "unknown rescale mode '" + std::string(name) + "'");
}

std::string_view EpraStatusName(EpraStatus status) {
  switch (status) {
    case EpraStatus::kTrivialPrimal: return "TrivialPrimal";
    case EpraStatus::kTrivialDual: return "TrivialDual";
    case EpraStatus::kPartitionFound: return "PartitionFound";
    case EpraStatus::kRoundLimit: return "RoundLimit";
    case EpraStatus::kStalled: return "Stalled";
  }
  return "Unknown";
}

EpraStatus ParseEpraStatus(std::string_view name) {
  for (EpraStatus s : {EpraStatus::kTrivialPrimal, EpraStatus::kTrivialDual,
                       EpraStatus::kPartitionFound, EpraStatus::kRoundLimit,
                       EpraStatus::kStalled}) {
    if (EpraStatusName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown status '" + std::string(name) + "'");
}

bool IsSolved(EpraStatus status) {
  return status == EpraStatus::kTrivialPrimal || status == EpraStatus::kTrivialDual ||
         status == EpraStatus::kPartitionFound;
}

PartitionGuess IdentifyPartition(const Vector& x, const Vector& x_hat, double U) {
  if (x.size() != x_hat.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "x and x_hat differ in length");
  }
  const Eigen::Index n = x.size();
  const double x_cut = (n > 0 ? x.cwiseAbs().maxCoeff() : 0.0) / U;
  const double x_hat_cut = (n > 0 ? x_hat.cwiseAbs().maxCoeff() : 0.0) / U;
  PartitionGuess guess;
  int covered = 0;
  bool overlap = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool in_B = std::abs(x_hat(i)) < x_hat_cut;
    const bool in_N = std::abs(x(i)) < x_cut;
    if (in_B) guess.B.push_back(static_cast<int>(i));
    if (in_N) guess.N.push_back(static_cast<int>(i));
    if (in_B && in_N) overlap = true;
    if (in_B || in_N) ++covered;
  }
  guess.is_partition = !overlap && covered == n;
  return guess;
}

Vector RescaleUpdate(const Vector& z, const Vector& Pz, const Vector& D, double U,
                     RescaleMode mode) {
  if (z.size() != Pz.size() || z.size() != D.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "rescale inputs differ in length");
  }
  Vector next = D;
  if (mode == RescaleMode::kSingleDirection) {
    Eigen::Index i = 0;
    z.maxCoeff(&i);  // first maximizer
    next(i) = std::min(2.0 * D(i), U);
    return next;
  }
  const double alpha = std::max(Pz.cwiseMax(0.0).sum(), 1e-300);
  const Vector e = (z / alpha).array() - 1.0;
  next = ((1.0 + e.cwiseMax(0.0).array()) * D.array()).min(U).matrix();
  return next;
}

namespace {

IndexSet AllIndices(int n) {
  IndexSet all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
  return all;
}

bool PositiveOn(const Vector& v, const IndexSet& idx) {
  for (int i : idx) {
    if (!(v(i) > 0.0)) return false;
  }
  return true;
}

DenseMatrix SelectRows(const DenseMatrix& M, const IndexSet& rows) {
  DenseMatrix out(static_cast<Eigen::Index>(rows.size()), M.cols());
  for (size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = M.row(rows[k]);
  return out;
}

Vector Select(const Vector& v, const IndexSet& idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = v(idx[k]);
  return out;
}

// The magnitude test can single out the right (B, N) while x_B or x_hat_N
// still carry a wrong sign: the basic procedure stopped on a certificate for
// coordinates already capped at U. Given the candidate, the faces
// {x in L : x_N = 0} and {x_hat in L^perp : x_hat_B = 0} are explicit
// subspaces of R^B and R^N, and an interior point of either (under the
// current scaling) is an exact relative-interior point of its cone.
class FaceCertifier {
 public:
  FaceCertifier(const DenseMatrix& A, const DenseMatrix& P0, double rank_tol)
      : A_(A), P0_(P0), rank_tol_(rank_tol) {}

  // x with x_N = 0 and x_B > 0, or nullopt.
  std::optional<Vector> Primal(const IndexSet& B, const Vector& D, const BpConfig& bp,
                               std::int64_t& iters) const {
    // {x_B : A_{:,B} x_B = 0}; its complement is spanned by the rows of A.
    const DenseMatrix rows = RevealedRange(SelectRows(A_.transpose(), B), rank_tol_);
    const Vector d = Select(D, B);
    const DenseMatrix P = ComplementProjector(d.cwiseInverse().asDiagonal() * rows);
    const BpOutcome out = RunBasicProcedure(P, UniformSimplexPoint(static_cast<int>(B.size())), bp);
    iters += out.iterations;
    if (out.status != BpStatus::kInteriorFound) return std::nullopt;
    Vector x = Vector::Zero(A_.cols());
    const Vector xb = out.Pz.cwiseQuotient(d);
    for (size_t k = 0; k < B.size(); ++k) x(B[k]) = xb(static_cast<Eigen::Index>(k));
    return x;
  }

  // x_hat with x_hat_B = 0 and x_hat_N > 0, or nullopt.
  std::optional<Vector> Dual(const IndexSet& N, const Vector& D_hat, const BpConfig& bp,
                             std::int64_t& iters) const {
    // {w_N : (0, w_N) in L^perp} is the complement of the projection of L
    // onto the N coordinates, which the rows N of P_L span.
    const DenseMatrix span = RevealedRange(SelectRows(P0_, N), rank_tol_);
    const Vector d = Select(D_hat, N);
    const DenseMatrix P = ComplementProjector(d.cwiseInverse().asDiagonal() * span);
    const BpOutcome out = RunBasicProcedure(P, UniformSimplexPoint(static_cast<int>(N.size())), bp);
    iters += out.iterations;
    if (out.status != BpStatus::kInteriorFound) return std::nullopt;
    Vector x_hat = Vector::Zero(A_.cols());
    const Vector xn = out.Pz.cwiseQuotient(d);
    for (size_t k = 0; k < N.size(); ++k) x_hat(N[k]) = xn(static_cast<Eigen::Index>(k));
    return x_hat;
  }

 private:
  static DenseMatrix ComplementProjector(const DenseMatrix& spanning) {
    const Eigen::Index k = spanning.rows();
    return DenseMatrix::Identity(k, k) - OuterProduct(RangeBasis(spanning, 0.0));
  }

  const DenseMatrix& A_;
  const DenseMatrix& P0_;
  double rank_tol_;
};

}  // namespace

EpraResult Solve(const Instance& inst, const EpraConfig& cfg,
                 const RoundObserver& observer) {
  if (!(cfg.U > 1.0)) throw Error(ErrorCode::kInvalidInput, "U must exceed 1");
  if (cfg.max_rounds < 1) throw Error(ErrorCode::kInvalidInput, "max_rounds must be >= 1");
  if (inst.m() > inst.n()) throw Error(ErrorCode::kInvalidInput, "m exceeds n");
  const auto started = std::chrono::steady_clock::now();

  const int n = inst.n();
  const ProjectorBuilder builder(inst.A, cfg.rank_tol);
  const BpConfig bp{cfg.epsilon, cfg.bp_max_iters, cfg.scheme};
  const Vector start = UniformSimplexPoint(n);

  EpraResult result;
  result.D = Vector::Ones(n);
  result.D_hat = Vector::Ones(n);
  DenseMatrix P = builder.Primal(result.D);
  DenseMatrix P_hat = builder.Dual(result.D_hat);
  const DenseMatrix P0 = P;
  const FaceCertifier certifier(inst.A, P0, cfg.rank_tol);

  auto finish = [&](EpraStatus status) {
    result.status = status;
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
  };

  for (int round = 0;; ++round) {
    const BpOutcome primal = RunBasicProcedure(P, start, bp);
    const BpOutcome dual = RunBasicProcedure(P_hat, start, bp);
    result.bp_iters_primal += primal.iterations;
    result.bp_iters_dual += dual.iterations;
    result.rounds = round;

    const bool primal_interior = primal.status == BpStatus::kInteriorFound;
    const bool dual_interior = dual.status == BpStatus::kInteriorFound;
    if (primal_interior && dual_interior) {
      throw Error(ErrorCode::kBothSidesInterior,
                  "both L and its complement meet the open orthant in round " +
                      std::to_string(round));
    }

    result.x = primal.Pz.cwiseQuotient(result.D);
    result.x_hat = dual.Pz.cwiseQuotient(result.D_hat);
    if (primal_interior || dual_interior) {
      if (observer) observer(RoundTrace{round, primal, dual, result.D, result.D_hat});
      if (primal_interior) {
        result.x_hat.setZero();
        result.B = AllIndices(n);
        result.N.clear();
        return finish(EpraStatus::kTrivialPrimal);
      }
      result.x.setZero();
      result.B.clear();
      result.N = AllIndices(n);
      return finish(EpraStatus::kTrivialDual);
    }

    PartitionGuess guess = IdentifyPartition(result.x, result.x_hat, cfg.U);
    bool certified = false;
    if (guess.is_partition) {
      bool primal_ok = PositiveOn(result.x, guess.B);
      bool dual_ok = PositiveOn(result.x_hat, guess.N);
      std::optional<Vector> face_x;
      std::optional<Vector> face_x_hat;
      if (!primal_ok) {
        face_x = certifier.Primal(guess.B, result.D, bp, result.bp_iters_primal);
        primal_ok = face_x.has_value();
      }
      if (primal_ok && !dual_ok) {
        face_x_hat = certifier.Dual(guess.N, result.D_hat, bp, result.bp_iters_dual);
        dual_ok = face_x_hat.has_value();
      }
      certified = primal_ok && dual_ok;
      if (certified) {
        if (face_x) result.x = std::move(*face_x);
        if (face_x_hat) result.x_hat = std::move(*face_x_hat);
      }
    }
    if (certified) {
      if (observer) observer(RoundTrace{round, primal, dual, result.D, result.D_hat});
      result.B = std::move(guess.B);
      result.N = std::move(guess.N);
      return finish(EpraStatus::kPartitionFound);
    }
    if (round >= cfg.max_rounds) {
      if (observer) observer(RoundTrace{round, primal, dual, result.D, result.D_hat});
      return finish(EpraStatus::kRoundLimit);
    }

    bool changed = false;
    if (primal.status == BpStatus::kRescaleReady) {
      Vector next = RescaleUpdate(primal.z, primal.Pz, result.D, cfg.U, cfg.rescale_mode);
      if (next != result.D) {
        result.D = std::move(next);
        P = builder.Primal(result.D);
        changed = true;
      }
    }
    if (dual.status == BpStatus::kRescaleReady) {
      Vector next =
          RescaleUpdate(dual.z, dual.Pz, result.D_hat, cfg.U, cfg.rescale_mode);
      if (next != result.D_hat) {
        result.D_hat = std::move(next);
        P_hat = builder.Dual(result.D_hat);
        changed = true;
      }
    }
    if (observer) observer(RoundTrace{round, primal, dual, result.D, result.D_hat});
    if (!changed) return finish(EpraStatus::kStalled);
  }
}

}  // namespace epra
