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

// Batch experiments over generated instances: deterministic per-instance
// seeds, a worker pool, a per-instance JSON-lines log and aggregated CSV rows.

#ifndef EPRA_BENCH_HPP_
#define EPRA_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epra/basic.hpp"
#include "epra/epra.hpp"

namespace epra::bench {

inline constexpr int kSchemaVersion = 1;

enum class Experiment {
  kBpNaive,
  kBpControlled,
  kEpraControlled,
  kEpraPartition,
  kEpraNaive,
  kRescaleModeCompare,
};

std::string_view ExperimentName(Experiment e);
Experiment ParseExperiment(std::string_view name);

struct Cell {
  int m = 0;  // 0 for experiments sized by n alone
  int n = 0;
};

struct ExperimentManifest {
  Experiment experiment = Experiment::kBpNaive;
  std::vector<Cell> sizes;
  int instances_per_cell = 100;
  // Basic-procedure epsilon; defaults to 0.1 for Bp* experiments and 0.5
  // inside the rescaling algorithm.
  std::optional<double> epsilon;
  std::int64_t iter_limit = kStandaloneIterLimit;  // 0 = none
  double U = 1e10;
  std::uint64_t base_seed = 0;
  int parallelism = 1;
  std::optional<double> delta_cap;  // generator family default when absent
  int max_rounds = 100;
  std::vector<Scheme> schemes;  // Bp* only; empty = all four
};

ExperimentManifest ManifestFromJson(const std::string& text);
std::string ManifestToJson(const ExperimentManifest& manifest);
// Reads a manifest file; EPRA_SEED, when set, replaces base_seed.
ExperimentManifest LoadManifest(const std::string& path);

struct InstanceRecord {
  std::string experiment;
  int cell = 0;
  int m = 0;  // actual row count of the generated A
  int n = 0;
  int index = 0;
  std::uint64_t seed = 0;
  std::string variant;  // scheme name, or rescale mode for RescaleModeCompare
  std::string status;
  std::int64_t iterations = 0;
  int rounds = 0;
  std::int64_t bp_iterations = 0;
  double cpu_seconds = 0.0;
  bool success = false;
  bool primal_feasible = false;
  bool verified = false;
  std::string error;
};

struct ResultRow {
  std::string experiment;
  int m = 0;
  int n = 0;
  std::string scheme;
  int instances = 0;
  double avg_iterations = 0.0;
  double avg_cpu_seconds = 0.0;
  double success_rate = 0.0;
  std::optional<double> avg_rescaling_rounds;
  std::optional<double> avg_total_bp_iterations;
  std::optional<double> fraction_primal_feasible;
  std::optional<double> avg_m;
};

// Runs every instance of the manifest; individual failures are recorded in
// the record's error field and never abort the batch.
std::vector<InstanceRecord> RunInstances(const ExperimentManifest& manifest);

// One row per (cell, variant) in first-appearance order.
std::vector<ResultRow> Aggregate(const std::vector<InstanceRecord>& records);

struct ExperimentOutput {
  std::vector<InstanceRecord> records;
  std::vector<ResultRow> rows;
};

// Runs and, when out_dir is non-empty, writes instances.jsonl, results.csv
// and results.meta.json there.
ExperimentOutput RunExperiment(const ExperimentManifest& manifest,
                               const std::string& out_dir = "");

std::string RowsToCsv(const std::vector<ResultRow>& rows);
std::string RecordsToJsonl(const std::vector<InstanceRecord>& records);
std::vector<InstanceRecord> RecordsFromJsonl(const std::string& text);

// CSV "value,count" of an integer record field ("rounds", "iterations",
// "bp_iterations"), sorted by value. Throws kInvalidInput for other fields.
std::string EmitHistogram(const std::vector<InstanceRecord>& records,
                          std::string_view field);

}  // namespace epra::bench

#endif  // EPRA_BENCH_HPP_
