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

#include "epra/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "epra/instances.hpp"
#include "epra/io.hpp"
#include "epra/oracle.hpp"
#include "json.hpp"

namespace epra::bench {

using nlohmann::json;

std::string_view ExperimentName(Experiment e) {
  switch (e) {
    case Experiment::kBpNaive: return "BpNaive";
    case Experiment::kBpControlled: return "BpControlled";
    case Experiment::kEpraControlled: return "EpraControlled";
    case Experiment::kEpraPartition: return "EpraPartition";
    case Experiment::kEpraNaive: return "EpraNaive";
    case Experiment::kRescaleModeCompare: return "RescaleModeCompare";
  }
  return "Unknown";
}

Experiment ParseExperiment(std::string_view name) {
  for (Experiment e : {Experiment::kBpNaive, Experiment::kBpControlled,
                       Experiment::kEpraControlled, Experiment::kEpraPartition,
                       Experiment::kEpraNaive, Experiment::kRescaleModeCompare}) {
    if (ExperimentName(e) == name) return e;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown experiment '" + std::string(name) + "'");
}

namespace {

bool IsBpExperiment(Experiment e) {
  return e == Experiment::kBpNaive || e == Experiment::kBpControlled;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

ExperimentManifest ManifestFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed manifest: ") + e.what());
  }
  try {
    ExperimentManifest m;
    m.experiment = ParseExperiment(j.at("experiment").get<std::string>());
    for (const auto& cell : j.at("sizes")) {
      if (!cell.is_array() || cell.empty() || cell.size() > 2) {
        throw Error(ErrorCode::kInvalidInput, "each size must be [m, n] or [n]");
      }
      if (cell.size() == 2) {
        m.sizes.push_back(Cell{cell[0].get<int>(), cell[1].get<int>()});
      } else {
        m.sizes.push_back(Cell{0, cell[0].get<int>()});
      }
    }
    m.instances_per_cell = j.value("instances_per_cell", m.instances_per_cell);
    if (j.contains("epsilon") && !j["epsilon"].is_null()) m.epsilon = j["epsilon"].get<double>();
    m.iter_limit = j.value("iter_limit", m.iter_limit);
    m.U = j.value("U", m.U);
    m.base_seed = j.value("base_seed", m.base_seed);
    m.parallelism = j.value("parallelism", m.parallelism);
    if (j.contains("delta_cap") && !j["delta_cap"].is_null()) {
      m.delta_cap = j["delta_cap"].get<double>();
    }
    m.max_rounds = j.value("max_rounds", m.max_rounds);
    if (j.contains("schemes")) {
      for (const auto& s : j["schemes"]) m.schemes.push_back(ParseScheme(s.get<std::string>()));
    }
    if (m.instances_per_cell < 1) {
      throw Error(ErrorCode::kInvalidInput, "instances_per_cell must be >= 1");
    }
    if (m.parallelism < 1) throw Error(ErrorCode::kInvalidInput, "parallelism must be >= 1");
    if (m.iter_limit < 0) throw Error(ErrorCode::kInvalidInput, "iter_limit must be >= 0");
    for (const Cell& c : m.sizes) {
      const bool by_n = m.experiment == Experiment::kEpraPartition;
      if (by_n ? c.n < 4 : (c.m < 1 || c.m >= c.n)) {
        throw Error(ErrorCode::kInvalidInput, "size cell out of range for this experiment");
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad manifest: ") + e.what());
  }
}

std::string ManifestToJson(const ExperimentManifest& m) {
  json j;
  j["experiment"] = ExperimentName(m.experiment);
  json sizes = json::array();
  for (const Cell& c : m.sizes) {
    sizes.push_back(c.m > 0 ? json::array({c.m, c.n}) : json::array({c.n}));
  }
  j["sizes"] = sizes;
  j["instances_per_cell"] = m.instances_per_cell;
  j["epsilon"] = m.epsilon ? json(*m.epsilon) : json(nullptr);
  j["iter_limit"] = m.iter_limit;
  j["U"] = m.U;
  j["base_seed"] = m.base_seed;
  j["parallelism"] = m.parallelism;
  j["delta_cap"] = m.delta_cap ? json(*m.delta_cap) : json(nullptr);
  j["max_rounds"] = m.max_rounds;
  json schemes = json::array();
  for (Scheme s : m.schemes) schemes.push_back(SchemeName(s));
  j["schemes"] = schemes;
  return j.dump(2);
}

ExperimentManifest LoadManifest(const std::string& path) {
  ExperimentManifest m = ManifestFromJson(ReadTextFile(path));
  if (const char* env = std::getenv("EPRA_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::kInvalidInput, "EPRA_SEED is not an integer");
    m.base_seed = seed;
  }
  return m;
}

namespace {

Instance MakeInstance(const ExperimentManifest& man, const Cell& cell, std::uint64_t seed) {
  switch (man.experiment) {
    case Experiment::kBpNaive:
    case Experiment::kEpraNaive:
      return GenNaive(cell.m, cell.n, seed);
    case Experiment::kBpControlled:
    case Experiment::kEpraControlled:
    case Experiment::kRescaleModeCompare:
      return GenControlled(cell.m, cell.n, man.delta_cap.value_or(kDefaultDeltaCap),
                           std::nullopt, seed);
    case Experiment::kEpraPartition:
      return GenPartitioned(cell.n, seed, std::nullopt,
                            man.delta_cap.value_or(kPartitionedDeltaCap));
  }
  throw Error(ErrorCode::kInvalidInput, "unknown experiment");
}

std::vector<std::string> Variants(const ExperimentManifest& man) {
  std::vector<std::string> out;
  if (IsBpExperiment(man.experiment)) {
    if (man.schemes.empty()) {
      for (Scheme s : {Scheme::kPerceptron, Scheme::kVonNeumann, Scheme::kVonNeumannAway,
                       Scheme::kSmoothPerceptron}) {
        out.emplace_back(SchemeName(s));
      }
    } else {
      for (Scheme s : man.schemes) out.emplace_back(SchemeName(s));
    }
  } else if (man.experiment == Experiment::kRescaleModeCompare) {
    out = {"all", "single"};
  } else {
    out = {"smooth"};
  }
  return out;
}

void RunEpraVariant(const ExperimentManifest& man, const Instance& inst,
                    InstanceRecord& rec) {
  EpraConfig cfg;
  cfg.U = man.U;
  cfg.epsilon = man.epsilon.value_or(0.5);
  cfg.max_rounds = man.max_rounds;
  cfg.bp_max_iters = man.iter_limit > 0 ? man.iter_limit : kEmbeddedIterLimit;
  if (man.experiment == Experiment::kRescaleModeCompare) {
    cfg.rescale_mode = ParseRescaleMode(rec.variant);
  }
  const EpraResult result = Solve(inst, cfg);
  rec.status = EpraStatusName(result.status);
  rec.rounds = result.rounds;
  rec.bp_iterations = result.bp_iters_primal + result.bp_iters_dual;
  rec.iterations = rec.bp_iterations;
  rec.cpu_seconds = result.wall_time;
  rec.primal_feasible = result.status == EpraStatus::kTrivialPrimal;
  const oracle::VerificationReport report = oracle::VerifyRelintPair(inst, result, cfg.U);
  rec.verified = report.relint_ok;
  switch (man.experiment) {
    case Experiment::kEpraPartition:
      rec.success = report.partition_matches_ground_truth.value_or(false);
      break;
    case Experiment::kEpraNaive:
      rec.success = IsSolved(result.status);
      break;
    default:
      rec.success = result.status == EpraStatus::kTrivialPrimal && report.relint_ok;
      break;
  }
}

std::vector<InstanceRecord> RunJob(const ExperimentManifest& man, int cell_index, int index) {
  const Cell& cell = man.sizes[static_cast<size_t>(cell_index)];
  const std::uint64_t seed = MixSeed(MixSeed(man.base_seed, static_cast<std::uint64_t>(cell_index)),
                                     static_cast<std::uint64_t>(index));
  std::vector<InstanceRecord> records;
  for (const std::string& variant : Variants(man)) {
    InstanceRecord rec;
    rec.experiment = ExperimentName(man.experiment);
    rec.cell = cell_index;
    rec.m = cell.m;
    rec.n = cell.n;
    rec.index = index;
    rec.seed = seed;
    rec.variant = variant;
    records.push_back(std::move(rec));
  }
  try {
    const Instance inst = MakeInstance(man, cell, seed);
    for (InstanceRecord& rec : records) rec.m = inst.m();
    if (IsBpExperiment(man.experiment)) {
      const DenseMatrix P = ProjectorFromKernel(inst.A).P;
      const Vector start = UniformSimplexPoint(inst.n());
      for (InstanceRecord& rec : records) {
        try {
          const BpConfig cfg{man.epsilon.value_or(0.1), man.iter_limit, ParseScheme(rec.variant)};
          const auto started = std::chrono::steady_clock::now();
          const BpOutcome out = RunBasicProcedure(P, start, cfg);
          rec.cpu_seconds = Seconds(started);
          rec.status = BpStatusName(out.status);
          rec.iterations = out.iterations;
          rec.bp_iterations = out.iterations;
          rec.success = out.status != BpStatus::kIterLimit;
          rec.primal_feasible = out.status == BpStatus::kInteriorFound;
        } catch (const std::exception& e) {
          rec.status = "Error";
          rec.error = e.what();
        }
      }
    } else {
      for (InstanceRecord& rec : records) {
        try {
          RunEpraVariant(man, inst, rec);
        } catch (const std::exception& e) {
          rec.status = "Error";
          rec.error = e.what();
        }
      }
    }
  } catch (const std::exception& e) {
    for (InstanceRecord& rec : records) {
      rec.status = "Error";
      rec.error = e.what();
    }
  }
  return records;
}

}  // namespace

std::vector<InstanceRecord> RunInstances(const ExperimentManifest& man) {
  const int cells = static_cast<int>(man.sizes.size());
  const int total = cells * man.instances_per_cell;
  std::vector<std::vector<InstanceRecord>> slots(static_cast<size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int job = next++; job < total; job = next++) {
      slots[static_cast<size_t>(job)] =
          RunJob(man, job / man.instances_per_cell, job % man.instances_per_cell);
    }
  };
  const int threads = std::max(1, std::min(man.parallelism, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  std::vector<InstanceRecord> records;
  for (auto& slot : slots) {
    for (auto& rec : slot) records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ResultRow> Aggregate(const std::vector<InstanceRecord>& records) {
  std::vector<std::pair<int, std::string>> order;
  std::map<std::pair<int, std::string>, std::vector<const InstanceRecord*>> groups;
  for (const InstanceRecord& rec : records) {
    auto key = std::make_pair(rec.cell, rec.variant);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&rec);
  }

  std::vector<ResultRow> rows;
  for (const auto& key : order) {
    const auto& group = groups[key];
    const InstanceRecord& first = *group.front();
    const Experiment exp = ParseExperiment(first.experiment);
    ResultRow row;
    row.experiment = first.experiment;
    row.n = first.n;
    row.m = exp == Experiment::kEpraPartition ? 0 : first.m;
    row.scheme = first.variant;
    row.instances = static_cast<int>(group.size());

    int ok_runs = 0;
    double iters = 0, cpu = 0, rounds = 0, bp = 0, m_sum = 0;
    int successes = 0, feasible = 0;
    for (const InstanceRecord* r : group) {
      if (r->success) ++successes;
      if (r->primal_feasible) ++feasible;
      m_sum += r->m;
      if (!r->error.empty()) continue;
      ++ok_runs;
      iters += static_cast<double>(r->iterations);
      cpu += r->cpu_seconds;
      rounds += r->rounds;
      bp += static_cast<double>(r->bp_iterations);
    }
    const double runs = std::max(ok_runs, 1);
    const double count = static_cast<double>(group.size());
    row.avg_iterations = iters / runs;
    row.avg_cpu_seconds = cpu / runs;
    row.success_rate = successes / count;
    if (!IsBpExperiment(exp)) {
      row.avg_rescaling_rounds = rounds / runs;
      row.avg_total_bp_iterations = bp / runs;
      row.fraction_primal_feasible = feasible / count;
    }
    if (exp == Experiment::kEpraPartition) row.avg_m = m_sum / count;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string RowsToCsv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "experiment,m,n,scheme,instances,avg_iterations,avg_cpu_seconds,success_rate,"
         "avg_rescaling_rounds,avg_total_bp_iterations,fraction_primal_feasible,avg_m\n";
  auto opt = [&out](const std::optional<double>& v) {
    out << ',';
    if (v) out << *v;
  };
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << r.m << ',' << r.n << ',' << r.scheme << ',' << r.instances
        << ',' << r.avg_iterations << ',' << r.avg_cpu_seconds << ',' << r.success_rate;
    opt(r.avg_rescaling_rounds);
    opt(r.avg_total_bp_iterations);
    opt(r.fraction_primal_feasible);
    opt(r.avg_m);
    out << '\n';
  }
  return out.str();
}

std::string RecordsToJsonl(const std::vector<InstanceRecord>& records) {
  std::string out;
  for (const InstanceRecord& r : records) {
    json j = {{"experiment", r.experiment}, {"cell", r.cell},
              {"m", r.m}, {"n", r.n},
              {"index", r.index}, {"seed", r.seed},
              {"variant", r.variant}, {"status", r.status},
              {"iterations", r.iterations}, {"rounds", r.rounds},
              {"bp_iterations", r.bp_iterations}, {"cpu_seconds", r.cpu_seconds},
              {"success", r.success}, {"primal_feasible", r.primal_feasible},
              {"verified", r.verified}, {"error", r.error}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<InstanceRecord> RecordsFromJsonl(const std::string& text) {
  std::vector<InstanceRecord> records;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      InstanceRecord r;
      r.experiment = j.at("experiment").get<std::string>();
      r.cell = j.value("cell", 0);
      r.m = j.value("m", 0);
      r.n = j.value("n", 0);
      r.index = j.value("index", 0);
      r.seed = j.value("seed", std::uint64_t{0});
      r.variant = j.value("variant", std::string());
      r.status = j.value("status", std::string());
      r.iterations = j.value("iterations", std::int64_t{0});
      r.rounds = j.value("rounds", 0);
      r.bp_iterations = j.value("bp_iterations", std::int64_t{0});
      r.cpu_seconds = j.value("cpu_seconds", 0.0);
      r.success = j.value("success", false);
      r.primal_feasible = j.value("primal_feasible", false);
      r.verified = j.value("verified", false);
      r.error = j.value("error", std::string());
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidInput,
                  "bad record on line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::string EmitHistogram(const std::vector<InstanceRecord>& records, std::string_view field) {
  std::int64_t (*get)(const InstanceRecord&) = nullptr;
  if (field == "rounds") {
    get = [](const InstanceRecord& r) { return static_cast<std::int64_t>(r.rounds); };
  } else if (field == "iterations") {
    get = [](const InstanceRecord& r) { return r.iterations; };
  } else if (field == "bp_iterations") {
    get = [](const InstanceRecord& r) { return r.bp_iterations; };
  } else {
    throw Error(ErrorCode::kInvalidInput, "field '" + std::string(field) + "' is not a count");
  }
  std::map<std::int64_t, int> counts;
  for (const InstanceRecord& r : records) {
    if (r.error.empty()) ++counts[get(r)];
  }
  std::ostringstream out;
  out << "value,count\n";
  for (const auto& [value, count] : counts) out << value << ',' << count << '\n';
  return out.str();
}

ExperimentOutput RunExperiment(const ExperimentManifest& manifest, const std::string& out_dir) {
  ExperimentOutput output;
  output.records = RunInstances(manifest);
  output.rows = Aggregate(output.records);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir + ": " + ec.message());
    const std::filesystem::path dir(out_dir);
    WriteTextFile((dir / "instances.jsonl").string(), RecordsToJsonl(output.records));
    WriteTextFile((dir / "results.csv").string(), RowsToCsv(output.rows));
    json meta = {{"schema_version", kSchemaVersion},
                 {"manifest", json::parse(ManifestToJson(manifest))}};
    WriteTextFile((dir / "results.meta.json").string(), meta.dump(2) + "\n");
  }
  return output;
}

}  // namespace epra::bench
