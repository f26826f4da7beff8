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

// epra-kit: generate instances, solve them, verify results and run batch
// experiments. Exit codes: 0 success, 1 solver failure, 2 invalid input.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "epra/bench.hpp"
#include "epra/epra.hpp"
#include "epra/instances.hpp"
#include "epra/io.hpp"
#include "epra/oracle.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitInvalidInput = 2;

struct GenArgs {
  std::string family;
  int n = 0;
  std::optional<int> m;
  std::optional<double> delta_cap;
  std::optional<double> frac_small;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string scheme = "smooth";
  double U = 1e10;
  double epsilon = 0.5;
  int max_rounds = 100;
  std::string rescale_mode = "all";
  std::string out;
};

struct VerifyArgs {
  std::string instance;
  std::string result;
};

struct BenchArgs {
  std::string manifest;
  std::string out_dir;
  std::optional<int> parallelism;
};

struct HistArgs {
  std::string results;
  std::string field;
  std::string out;
};

int RunGen(const GenArgs& a) {
  epra::GenSpec spec;
  spec.family = epra::ParseFamily(a.family);
  spec.n = a.n;
  if (spec.family == epra::Family::kPartitioned) {
    if (a.m) throw epra::Error(epra::ErrorCode::kInvalidInput, "--m is not used by partitioned");
  } else {
    if (!a.m) throw epra::Error(epra::ErrorCode::kInvalidInput, "--m is required");
    spec.m = *a.m;
  }
  spec.seed = a.seed;
  spec.delta_cap = a.delta_cap;
  spec.frac_small = a.frac_small;
  epra::WriteTextFile(a.out, epra::InstanceToJson(epra::Generate(spec)));
  return kExitOk;
}

int RunSolve(const SolveArgs& a) {
  const epra::Instance inst = epra::InstanceFromJson(epra::ReadTextFile(a.instance));
  epra::EpraConfig cfg;
  cfg.scheme = epra::ParseScheme(a.scheme);
  cfg.U = a.U;
  cfg.epsilon = a.epsilon;
  cfg.max_rounds = a.max_rounds;
  cfg.rescale_mode = epra::ParseRescaleMode(a.rescale_mode);
  const epra::EpraResult result = epra::Solve(inst, cfg);
  epra::WriteTextFile(a.out, epra::ResultToJson(result, cfg));
  std::cout << epra::EpraStatusName(result.status) << " rounds=" << result.rounds << '\n';
  return epra::IsSolved(result.status) ? kExitOk : kExitSolverFailure;
}

int RunVerify(const VerifyArgs& a) {
  const epra::Instance inst = epra::InstanceFromJson(epra::ReadTextFile(a.instance));
  epra::EpraConfig cfg;
  const epra::EpraResult result = epra::ResultFromJson(epra::ReadTextFile(a.result), &cfg);
  const epra::oracle::VerificationReport r = epra::oracle::VerifyRelintPair(inst, result, cfg.U);
  nlohmann::json j = {{"membership_ok", r.membership_ok},
                      {"positivity_ok", r.positivity_ok},
                      {"relint_ok", r.relint_ok},
                      {"max_residual", r.max_residual}};
  j["partition_matches_ground_truth"] = r.partition_matches_ground_truth
                                            ? nlohmann::json(*r.partition_matches_ground_truth)
                                            : nlohmann::json(nullptr);
  std::cout << j.dump(2) << '\n';
  return r.Passed() ? kExitOk : kExitSolverFailure;
}

int RunBench(const BenchArgs& a) {
  epra::bench::ExperimentManifest manifest = epra::bench::LoadManifest(a.manifest);
  if (a.parallelism) {
    if (*a.parallelism < 1) {
      throw epra::Error(epra::ErrorCode::kInvalidInput, "--parallelism must be >= 1");
    }
    manifest.parallelism = *a.parallelism;
  }
  const auto output = epra::bench::RunExperiment(manifest, a.out_dir);
  std::cout << epra::bench::RowsToCsv(output.rows);
  return kExitOk;
}

int RunHist(const HistArgs& a) {
  const auto records = epra::bench::RecordsFromJsonl(epra::ReadTextFile(a.results));
  epra::WriteTextFile(a.out, epra::bench::EmitHistogram(records, a.field));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-and-rescaling feasibility toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"naive", "controlled", "partitioned"}));
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--delta-cap", gen.delta_cap);
  gen_cmd->add_option("--frac-small", gen.frac_small);
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--out", gen.out)->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run the rescaling algorithm on an instance");
  solve_cmd->add_option("--instance", solve.instance)->required();
  solve_cmd->add_option("--scheme", solve.scheme)
      ->check(CLI::IsMember({"perceptron", "vn", "vna", "smooth"}));
  solve_cmd->add_option("--U", solve.U);
  solve_cmd->add_option("--epsilon", solve.epsilon);
  solve_cmd->add_option("--max-rounds", solve.max_rounds);
  solve_cmd->add_option("--rescale-mode", solve.rescale_mode)
      ->check(CLI::IsMember({"all", "single"}));
  solve_cmd->add_option("--out", solve.out)->required();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a result against its instance");
  verify_cmd->add_option("--instance", verify.instance)->required();
  verify_cmd->add_option("--result", verify.result)->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a batch experiment from a manifest");
  bench_cmd->add_option("--manifest", bench.manifest)->required();
  bench_cmd->add_option("--out-dir", bench.out_dir)->required();
  bench_cmd->add_option("--parallelism", bench.parallelism);

  HistArgs hist;
  auto* hist_cmd = app.add_subcommand("hist", "Histogram a field of an instance log");
  hist_cmd->add_option("--results", hist.results)->required();
  hist_cmd->add_option("--field", hist.field)->required();
  hist_cmd->add_option("--out", hist.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*solve_cmd) return RunSolve(solve);
    if (*verify_cmd) return RunVerify(verify);
    if (*bench_cmd) return RunBench(bench);
    if (*hist_cmd) return RunHist(hist);
  } catch (const epra::Error& e) {
    std::fprintf(stderr, "epra-kit: %s: %s\n", epra::ErrorCodeName(e.code()), e.what());
    switch (e.code()) {
      case epra::ErrorCode::kBothSidesInterior:
      case epra::ErrorCode::kDegenerateStep:
      case epra::ErrorCode::kNoImprovingVertex:
      case epra::ErrorCode::kEmptySupport:
        return kExitSolverFailure;
      default:
        return kExitInvalidInput;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "epra-kit: %s\n", e.what());
    return kExitSolverFailure;
  }
  return kExitInvalidInput;
}
