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

#include "epra/basic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace epra {

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kPerceptron: return "perceptron";
    case Scheme::kVonNeumann: return "vn";
    case Scheme::kVonNeumannAway: return "vna";
    case Scheme::kSmoothPerceptron: return "smooth";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  for (Scheme s : {Scheme::kPerceptron, Scheme::kVonNeumann, Scheme::kVonNeumannAway,
                   Scheme::kSmoothPerceptron}) {
    if (SchemeName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown scheme '" + std::string(name) + "'");
}

std::string_view BpStatusName(BpStatus status) {
  switch (status) {
    case BpStatus::kInteriorFound: return "InteriorFound";
    case BpStatus::kRescaleReady: return "RescaleReady";
    case BpStatus::kIterLimit: return "IterLimit";
  }
  return "Unknown";
}

std::optional<BpStatus> StopCheck(const Vector& Pz, const Vector& z, double epsilon) {
  if (Pz.size() > 0 && Pz.minCoeff() > 0.0) return BpStatus::kInteriorFound;
  if (Pz.cwiseMax(0.0).sum() <= epsilon * z.maxCoeff()) return BpStatus::kRescaleReady;
  return std::nullopt;
}

int MinVertex(const Vector& v) {
  if (v.size() == 0) throw Error(ErrorCode::kInvalidInput, "empty vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) < v(best)) best = i;
  }
  return static_cast<int>(best);
}

int AwayVertex(const Vector& z, const Vector& Pz) {
  if (z.size() != Pz.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "z and Pz differ in length");
  }
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z(i) > 0.0 && (best < 0 || Pz(i) > Pz(best))) best = i;
  }
  if (best < 0) throw Error(ErrorCode::kEmptySupport, "z has no positive entry");
  return static_cast<int>(best);
}

Vector ProjectOntoSimplex(const Vector& y) {
  const Eigen::Index n = y.size();
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "empty vector");
  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += sorted[static_cast<size_t>(j)];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<size_t>(j)] - candidate > 0.0) tau = candidate;
  }
  return (y.array() - tau).cwiseMax(0.0).matrix();
}

Vector SimplexProx(const Vector& v, double mu, const Vector& u_bar) {
  if (v.size() != u_bar.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "v and u_bar differ in length");
  }
  if (!(mu > 0.0)) throw Error(ErrorCode::kInvalidInput, "mu must be positive");
  return ProjectOntoSimplex(u_bar - v / mu);
}

Vector UniformSimplexPoint(int n) {
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

namespace {

void CheckInputs(const DenseMatrix& P, const Vector& start, const BpConfig& cfg) {
  if (P.rows() != P.cols() || P.cols() != start.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "projector and start point");
  }
  if (start.size() == 0) throw Error(ErrorCode::kInvalidInput, "empty start point");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must lie in (0, 1)");
  }
  if (cfg.max_iters < 0) throw Error(ErrorCode::kInvalidInput, "negative max_iters");
  if (start.minCoeff() < 0.0 || std::abs(start.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidInput, "start point is not on the simplex");
  }
}

// Shared loop state for the schemes that update Pz incrementally. A stop
// signal on the running Pz is confirmed against a fresh P * z before it is
// reported, so drift can delay termination but never fake it.
struct IncrementalRun {
  IncrementalRun(const DenseMatrix& P, const Vector& z0, const BpConfig& cfg,
                 const IterateObserver& observer)
      : P(P), cfg(cfg), observer(observer), z(z0), Pz(P * z0) {}

  // Returns true when the run is finished; outcome() is then valid.
  bool Finished() {
    if (observer) observer(t, z, Pz);
    if (StopCheck(Pz, z, cfg.epsilon)) {
      Pz.noalias() = P * z;
      if (auto confirmed = StopCheck(Pz, z, cfg.epsilon)) {
        status = *confirmed;
        return true;
      }
    }
    if (cfg.max_iters > 0 && t >= cfg.max_iters) {
      Pz.noalias() = P * z;
      status = StopCheck(Pz, z, cfg.epsilon).value_or(BpStatus::kIterLimit);
      return true;
    }
    return false;
  }

  BpOutcome outcome() && {
    return BpOutcome{status, std::move(z), std::move(Pz), t};
  }

  const DenseMatrix& P;
  const BpConfig& cfg;
  const IterateObserver& observer;
  Vector z;
  Vector Pz;
  std::int64_t t = 0;
  BpStatus status = BpStatus::kIterLimit;
};

}  // namespace

BpOutcome RunPerceptron(const DenseMatrix& P, const Vector& z0, const BpConfig& cfg,
                        const IterateObserver& observer) {
  CheckInputs(P, z0, cfg);
  IncrementalRun run(P, z0, cfg, observer);
  while (!run.Finished()) {
    const int i = MinVertex(run.Pz);
    if (!(run.Pz(i) <= 0.0)) {
      throw Error(ErrorCode::kNoImprovingVertex,
                  "no simplex vertex with <u, Pz> <= 0 at iteration " +
                      std::to_string(run.t));
    }
    const double w = 1.0 / static_cast<double>(run.t + 1);
    run.z *= 1.0 - w;
    run.z(i) += w;
    run.Pz = (1.0 - w) * run.Pz + w * P.col(i);
    ++run.t;
  }
  return std::move(run).outcome();
}

BpOutcome RunVonNeumann(const DenseMatrix& P, const Vector& z0, const BpConfig& cfg,
                        const IterateObserver& observer) {
  CheckInputs(P, z0, cfg);
  IncrementalRun run(P, z0, cfg, observer);
  Vector diff(z0.size());
  while (!run.Finished()) {
    const int i = MinVertex(run.Pz);
    // Exact line search on ||P(z + theta (e_i - z))||^2 over [0, 1].
    diff = run.Pz - P.col(i);
    const double denom = diff.squaredNorm();
    if (!(denom > 0.0)) {
      throw Error(ErrorCode::kDegenerateStep,
                  "zero line-search denominator at iteration " + std::to_string(run.t));
    }
    const double theta = std::clamp(run.Pz.dot(diff) / denom, 0.0, 1.0);
    run.z *= 1.0 - theta;
    run.z(i) += theta;
    run.Pz -= theta * diff;
    ++run.t;
  }
  return std::move(run).outcome();
}

BpOutcome RunVonNeumannAway(const DenseMatrix& P, const Vector& z0,
                            const BpConfig& cfg, const IterateObserver& observer) {
  CheckInputs(P, z0, cfg);
  IncrementalRun run(P, z0, cfg, observer);
  Vector Pa(z0.size());
  while (!run.Finished()) {
    Vector& z = run.z;
    Vector& Pz = run.Pz;
    const int i = MinVertex(Pz);
    const int j = AwayVertex(z, Pz);
    const double norm2 = Pz.squaredNorm();
    // An away step from a vertex cannot move, so z = e_j takes a regular step.
    const bool regular = (norm2 - Pz(i) > Pz(j) - norm2) || z(j) >= 1.0;
    double theta_max = 1.0;
    if (regular) {
      Pa = P.col(i) - Pz;
    } else {
      Pa = Pz - P.col(j);
      theta_max = z(j) / (1.0 - z(j));
    }
    const double pa2 = Pa.squaredNorm();
    if (!(pa2 > 0.0)) {
      throw Error(ErrorCode::kDegenerateStep,
                  "zero step direction at iteration " + std::to_string(run.t));
    }
    const double theta = std::min(theta_max, std::max(0.0, -Pz.dot(Pa) / pa2));
    if (regular) {
      z *= 1.0 - theta;
      z(i) += theta;
    } else {
      z *= 1.0 + theta;
      z(j) -= theta;
      if (theta == theta_max || z(j) < 0.0) z(j) = 0.0;  // drop step
    }
    Pz += theta * Pa;
    ++run.t;
  }
  return std::move(run).outcome();
}

BpOutcome RunSmoothPerceptron(const DenseMatrix& P, const Vector& u_bar,
                              const BpConfig& cfg, const IterateObserver& observer) {
  CheckInputs(P, u_bar, cfg);
  double mu = 2.0;
  Vector u = u_bar;
  Vector Pu = P * u;
  Vector z = SimplexProx(Pu, mu, u_bar);
  Vector Pz = P * z;
  std::int64_t t = 0;
  BpStatus status = BpStatus::kIterLimit;
  while (true) {
    if (observer) observer(t, z, Pz);
    if (auto s = StopCheck(Pz, z, cfg.epsilon)) {
      status = *s;
      break;
    }
    if (cfg.max_iters > 0 && t >= cfg.max_iters) break;

    const double theta = 2.0 / static_cast<double>(t + 3);
    // Coefficients (1 - theta), (1 - theta) theta, theta^2 sum to one, which
    // keeps u on the simplex.
    const Vector w = SimplexProx(Pu, mu, u_bar);
    u = (1.0 - theta) * (u + theta * z) + theta * theta * w;
    mu *= 1.0 - theta;
    Pu.noalias() = P * u;
    z = (1.0 - theta) * z + theta * SimplexProx(Pu, mu, u_bar);
    Pz.noalias() = P * z;
    ++t;
  }
  return BpOutcome{status, std::move(z), std::move(Pz), t};
}

BpOutcome RunBasicProcedure(const DenseMatrix& P, const Vector& start,
                            const BpConfig& cfg, const IterateObserver& observer) {
  switch (cfg.scheme) {
    case Scheme::kPerceptron: return RunPerceptron(P, start, cfg, observer);
    case Scheme::kVonNeumann: return RunVonNeumann(P, start, cfg, observer);
    case Scheme::kVonNeumannAway: return RunVonNeumannAway(P, start, cfg, observer);
    case Scheme::kSmoothPerceptron: return RunSmoothPerceptron(P, start, cfg, observer);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown scheme");
}

}  // namespace epra
