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

// Acceptance driver. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epra/basic.hpp"
#include "epra/bench.hpp"
#include "epra/epra.hpp"
#include "epra/instances.hpp"
#include "epra/oracle.hpp"
#include "epra/subspace.hpp"
#include "test_util.hpp"

namespace {

using epra::DenseMatrix;
using epra::EpraConfig;
using epra::EpraStatus;
using epra::Vector;
namespace oracle = epra::oracle;
namespace bench = epra::bench;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void Report(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_seconds) {
    out.pass = false;
    out.detail += " (runtime over " + std::to_string(static_cast<int>(limit_seconds)) + " s)";
  }
  if (!out.pass) ++failures;
  std::printf("[%s] criterion %d %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  return buf;
}

// Stop test written out from its definition.
std::optional<epra::BpStatus> IndependentStop(const Vector& Pz, const Vector& z, double eps) {
  if (Pz.minCoeff() > 0.0) return epra::BpStatus::kInteriorFound;
  if (Pz.cwiseMax(0.0).sum() <= eps * z.maxCoeff()) return epra::BpStatus::kRescaleReady;
  return std::nullopt;
}

Outcome ProjectorSuite() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> dim(2, 100);
  double sym = 0, idem = 0, compl_ = 0, kernel = 0, dual = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const DenseMatrix A = epra::testing::Gaussian(m, n, rng);
    const auto id = epra::ProjectorFromKernel(A);
    compl_ = std::max(compl_, epra::testing::MaxAbs(id.P + id.P_hat - DenseMatrix::Identity(n, n)));
    const Vector D = epra::testing::LogUniform(n, 1e10, rng);
    const Vector Dh = epra::testing::LogUniform(n, 1e10, rng);
    const auto pr = epra::RescaledProjectors(A, D, Dh);
    for (const DenseMatrix* P : {&id.P, &id.P_hat, &pr.P, &pr.P_hat}) {
      sym = std::max(sym, epra::testing::MaxAbs(*P - P->transpose()));
      idem = std::max(idem, epra::testing::MaxAbs(*P * *P - *P));
    }
    const DenseMatrix ADinv = A * D.cwiseInverse().asDiagonal();
    kernel = std::max(kernel, epra::testing::MaxAbs(pr.P * ADinv.transpose()));
    const DenseMatrix DhAt = Dh.asDiagonal() * A.transpose();
    dual = std::max(dual, epra::testing::MaxAbs(pr.P_hat * DhAt - DhAt) / epra::testing::MaxAbs(DhAt));
  }
  const bool ok = sym <= 1e-8 && idem <= 1e-8 && compl_ <= 1e-8 && kernel <= 1e-8 && dual <= 1e-8;
  return {ok, Fmt("sym %.2e idem %.2e |P+Ph-I| %.2e |P(AD^-1)^T| %.2e", sym, idem, compl_, kernel) +
                  Fmt(" dual-span rel %.2e", dual)};
}

Outcome BasicSoundness() {
  const epra::Scheme schemes[] = {epra::Scheme::kPerceptron, epra::Scheme::kVonNeumann,
                                  epra::Scheme::kVonNeumannAway, epra::Scheme::kSmoothPerceptron};
  const double eps = 0.1;
  int bad_stop = 0, outcomes = 0;
  double simplex = 0, rise = -INFINITY, neg = 0;
  for (int k = 0; k < 100; ++k) {
    const auto inst = epra::GenNaive(25, 50, epra::MixSeed(77, static_cast<std::uint64_t>(k)));
    const DenseMatrix P = epra::ProjectorFromKernel(inst.A).P;
    for (auto s : schemes) {
      double last = INFINITY;
      const bool descent = s == epra::Scheme::kVonNeumann || s == epra::Scheme::kVonNeumannAway;
      const auto out = epra::RunBasicProcedure(
          P, epra::UniformSimplexPoint(50), epra::BpConfig{eps, epra::kStandaloneIterLimit, s},
          [&](std::int64_t, const Vector& z, const Vector&) {
            simplex = std::max(simplex, std::abs(z.sum() - 1.0));
            neg = std::min(neg, z.minCoeff());
            if (descent) {
              const double norm = (P * z).norm();
              rise = std::max(rise, norm - last);
              last = norm;
            }
          });
      if (out.status == epra::BpStatus::kIterLimit) continue;
      ++outcomes;
      if (IndependentStop(out.Pz, out.z, eps) != out.status) ++bad_stop;
      if (epra::testing::MaxAbs(out.Pz - P * out.z) > 1e-10) ++bad_stop;
    }
  }
  const bool ok = bad_stop == 0 && simplex <= 1e-9 && neg >= 0.0 && rise <= 1e-12;
  return {ok, Fmt("outcomes %.0f failing stop re-check %.0f, max |sum z - 1| %.2e, max VN/VNA rise %.2e",
                  outcomes, bad_stop, simplex, rise)};
}

Outcome NaiveBasicProcedures() {
  bench::ExperimentManifest man;
  man.experiment = bench::Experiment::kBpNaive;
  man.sizes = {{100, 200}};
  man.instances_per_cell = 100;
  man.epsilon = 0.1;
  man.iter_limit = 10000;
  man.base_seed = 1;
  const auto out = bench::RunExperiment(man);
  double smooth = -1, smooth_success = 0, others_min = INFINITY;
  std::string detail;
  for (const auto& row : out.rows) {
    detail += row.scheme + Fmt(" %.1f/%.2f ", row.avg_iterations, row.success_rate);
    if (row.scheme == "smooth") {
      smooth = row.avg_iterations;
      smooth_success = row.success_rate;
    } else {
      others_min = std::min(others_min, row.avg_iterations);
    }
  }
  const bool ok = out.rows.size() == 4 && smooth_success == 1.0 && smooth >= 10 && smooth <= 120 &&
                  smooth < others_min;
  return {ok, "mean iterations/success: " + detail};
}

Outcome Wendel() {
  const double rate = oracle::MonteCarloFeasibleRate(5, 10, 2000, 4);
  double worst = 0;
  for (int n = 2; n <= 30; ++n) {
    for (int m = 1; m < n; ++m) {
      worst = std::max(worst, std::abs(oracle::WendelProbability(m, n) + oracle::WendelProbability(n - m, n) - 1.0));
    }
  }
  return {rate >= 0.45 && rate <= 0.55 && worst <= 1e-12,
          Fmt("MC(5,10,2000) = %.4f, complement identity max error %.2e", rate, worst)};
}

Outcome ControlledRescaling() {
  int solved = 0, verified = 0, over_bound = 0;
  double rounds = 0, worst_margin = -INFINITY;
  for (int k = 0; k < 100; ++k) {
    const auto inst =
        epra::GenControlled(100, 200, 0.001, std::nullopt, epra::MixSeed(700, static_cast<std::uint64_t>(k)));
    const auto res = epra::Solve(inst, EpraConfig{});
    solved += res.status == EpraStatus::kTrivialPrimal;
    verified += oracle::VerifyRelintPair(inst, res, 1e10).Passed();
    rounds += res.rounds;
    // log2(1/delta) from the stored point; the product itself underflows.
    const double log2_inv_delta = -inst.meta.known_interior_point->array().log2().sum();
    over_bound += res.rounds > log2_inv_delta + 10;
    worst_margin = std::max(worst_margin, res.rounds - log2_inv_delta);
  }
  const double mean = rounds / 100;
  return {solved == 100 && verified == 100 && mean >= 4 && mean <= 25 && over_bound == 0,
          Fmt("TrivialPrimal %.0f/100, verified %.0f/100, mean rounds %.2f, over bound %.0f", solved, verified,
              mean, over_bound) +
              Fmt(", max rounds - log2(1/delta) %.1f", worst_margin)};
}

Outcome PartitionRecovery() {
  int recovered = 0, recovered_verified = 0;
  double rounds = 0;
  for (int k = 0; k < 100; ++k) {
    const auto inst = epra::GenPartitioned(100, epra::MixSeed(800, static_cast<std::uint64_t>(k)), std::nullopt);
    const auto res = epra::Solve(inst, EpraConfig{});
    rounds += res.rounds;
    const auto& truth = *inst.meta.known_partition;
    if (epra::IsSolved(res.status) && res.B == truth.B && res.N == truth.N) {
      ++recovered;
      recovered_verified += oracle::VerifyRelintPair(inst, res, 1e10).Passed();
    }
  }
  const double mean = rounds / 100;
  return {recovered >= 85 && mean >= 8 && mean <= 30 && recovered_verified == recovered,
          Fmt("recovered %.0f/100, recovered and verified %.0f, mean rounds %.2f", recovered, recovered_verified,
              mean)};
}

Outcome NaiveRescaling() {
  int easy = 0;
  for (int k = 0; k < 30; ++k) {
    const auto inst = epra::GenNaive(100, 1000, epra::MixSeed(900, static_cast<std::uint64_t>(k)));
    const auto res = epra::Solve(inst, EpraConfig{});
    easy += res.status == EpraStatus::kTrivialPrimal && res.rounds == 0;
  }
  int feasible = 0;
  for (int k = 0; k < 50; ++k) {
    const auto inst = epra::GenNaive(500, 1000, epra::MixSeed(901, static_cast<std::uint64_t>(k)));
    feasible += epra::Solve(inst, EpraConfig{}).status == EpraStatus::kTrivialPrimal;
  }
  const double frac = feasible / 50.0;
  return {easy == 30 && frac >= 0.35 && frac <= 0.65,
          Fmt("(100,1000): %.0f/30 TrivialPrimal at 0 rounds; (500,1000): feasible fraction %.2f", easy, frac)};
}

Outcome Ablation() {
  int single_failed = 0, all_solved = 0;
  for (int k = 0; k < 30; ++k) {
    const auto inst =
        epra::GenControlled(100, 200, 0.001, std::nullopt, epra::MixSeed(1000, static_cast<std::uint64_t>(k)));
    EpraConfig cfg;
    cfg.max_rounds = 100;
    all_solved += epra::IsSolved(epra::Solve(inst, cfg).status);
    cfg.rescale_mode = epra::RescaleMode::kSingleDirection;
    const auto st = epra::Solve(inst, cfg).status;
    single_failed += st == EpraStatus::kRoundLimit || st == EpraStatus::kStalled;
  }
  return {single_failed >= 15 && all_solved == 30,
          Fmt("single-direction failed %.0f/30, all-directions solved %.0f/30", single_failed, all_solved)};
}

Outcome OracleTruth() {
  std::mt19937_64 rng(9090);
  int above = 0, close = 0, one_d = 0, one_d_bad = 0;
  double worst_gap = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 18;
    const int m = 1 + k % (n - 1);
    const auto inst = epra::GenControlled(m, n, 0.1, std::nullopt, epra::MixSeed(99, static_cast<std::uint64_t>(k)));
    const double found = oracle::ConditionMeasureSearch(inst.A, 300, static_cast<std::uint64_t>(k));
    above += found > *inst.meta.known_delta + 1e-6;
    close += found >= 0.9 * *inst.meta.known_delta;
  }
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 19;
    const auto inst = epra::GenControlled(n - 1, n, 0.1, std::nullopt, epra::MixSeed(98, static_cast<std::uint64_t>(k)));
    const Vector v = epra::NullspaceBasis(inst.A).row(0).transpose();
    const auto d = oracle::ConditionMeasure1d(v);
    ++one_d;
    const double gap = d ? std::abs(*d - *inst.meta.known_delta) : INFINITY;
    worst_gap = std::max(worst_gap, gap);
    one_d_bad += gap > 1e-12;
  }
  int doubling_bad = 0;
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 12;
    Vector x(n);
    for (int j = 0; j < n; ++j) x(j) = unit(rng);
    x(k % n) = 0.4 * x.maxCoeff();
    // A kernel basis recovered from a matrix whose kernel is span{x}.
    const DenseMatrix A = epra::NullspaceBasis(x.transpose());
    const Vector v = epra::NullspaceBasis(A).row(0).transpose();
    const double vmax = v.cwiseAbs().maxCoeff();
    int i = 0;
    for (; i < n; ++i) {
      if (std::abs(v(i)) / vmax <= 0.5) break;
    }
    Vector w = v;
    w(i) *= 2.0;
    const auto base = oracle::ConditionMeasure1d(v);
    const auto doubled = oracle::ConditionMeasure1d(w);
    doubling_bad += !(base && doubled && *doubled == 2.0 * *base);
  }
  return {above == 0 && one_d_bad == 0 && doubling_bad == 0,
          Fmt("search above truth %.0f/50 (within 10%% below on %.0f), ", above, close) +
              Fmt("1-D mismatches %.0f/%.0f (worst %.2e)", one_d_bad, one_d, worst_gap) +
              Fmt(", doubling failures %.0f/100", doubling_bad)};
}

}  // namespace

int main() {
  Report(1, "projector properties", 10, ProjectorSuite);
  Report(2, "basic-procedure soundness", 30, BasicSoundness);
  Report(3, "naive basic procedures at (100, 200)", 120, NaiveBasicProcedures);
  Report(4, "Wendel probabilities", 120, Wendel);
  Report(5, "controlled instances at (100, 200)", 180, ControlledRescaling);
  Report(6, "partitioned instances at n = 100", 180, PartitionRecovery);
  Report(7, "naive rescaling at n = 1000", 300, NaiveRescaling);
  Report(8, "single vs all-direction rescaling", 180, Ablation);
  Report(9, "condition-measure ground truth", 60, OracleTruth);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
