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

#include "epra/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace epra {

using nlohmann::json;

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidInput, "cannot serialize a non-finite value");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

namespace {

void AppendVector(std::ostringstream& out, const Vector& v) {
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << FormatDouble(v(i));
  }
  out << ']';
}

void AppendIndices(std::ostringstream& out, const IndexSet& s) {
  out << '[';
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ", ";
    out << s[i] + 1;
  }
  out << ']';
}

Vector VectorFrom(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + " has a non-number entry");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

IndexSet IndicesFrom(const json& j, int n, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, std::string(what) + " must be an array");
  IndexSet s;
  for (const auto& e : j) {
    if (!e.is_number_integer()) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + " has a non-integer entry");
    }
    const int i = e.get<int>();
    if (i < 1 || i > n) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + " index out of range");
    }
    s.push_back(i - 1);
  }
  return s;
}

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string InstanceToJson(const Instance& inst) {
  std::ostringstream out;
  out << "{\n  \"n\": " << inst.n() << ",\n  \"m\": " << inst.m() << ",\n  \"A\": [";
  for (int i = 0; i < inst.m(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    AppendVector(out, inst.A.row(i).transpose());
  }
  out << (inst.m() ? "\n  ],\n" : "],\n");
  const InstanceMeta& meta = inst.meta;
  out << "  \"meta\": {\n    \"generator\": " << json(meta.generator).dump()
      << ",\n    \"seed\": " << meta.seed << ",\n    \"known_delta\": ";
  if (meta.delta_infeasible) {
    out << "\"infeasible\"";
  } else if (meta.known_delta) {
    out << FormatDouble(*meta.known_delta);
  } else {
    out << "null";
  }
  out << ",\n    \"known_interior_point\": ";
  if (meta.known_interior_point) {
    AppendVector(out, *meta.known_interior_point);
  } else {
    out << "null";
  }
  out << ",\n    \"known_partition\": ";
  if (meta.known_partition) {
    out << "{\"B\": ";
    AppendIndices(out, meta.known_partition->B);
    out << ", \"N\": ";
    AppendIndices(out, meta.known_partition->N);
    out << '}';
  } else {
    out << "null";
  }
  out << "\n  }\n}\n";
  return out.str();
}

Instance InstanceFromJson(const std::string& text) {
  const json j = Parse(text);
  try {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    if (n < 1 || m < 0) throw Error(ErrorCode::kInvalidInput, "bad dimensions");
    const json& rows = j.at("A");
    if (!rows.is_array() || static_cast<int>(rows.size()) != m) {
      throw Error(ErrorCode::kInvalidInput, "A must have m rows");
    }
    Instance inst;
    inst.A.resize(m, n);
    for (int i = 0; i < m; ++i) {
      const Vector row = VectorFrom(rows[static_cast<size_t>(i)], "A row");
      if (row.size() != n) throw Error(ErrorCode::kInvalidInput, "A row must have n entries");
      inst.A.row(i) = row.transpose();
    }
    if (j.contains("meta") && !j["meta"].is_null()) {
      const json& meta = j["meta"];
      InstanceMeta& out = inst.meta;
      out.generator = meta.value("generator", std::string());
      out.seed = meta.value("seed", std::uint64_t{0});
      if (meta.contains("known_delta")) {
        const json& d = meta["known_delta"];
        if (d.is_string()) {
          if (d.get<std::string>() != "infeasible") {
            throw Error(ErrorCode::kInvalidInput, "known_delta string must be \"infeasible\"");
          }
          out.delta_infeasible = true;
        } else if (d.is_number()) {
          out.known_delta = d.get<double>();
        }
      }
      if (meta.contains("known_interior_point") && !meta["known_interior_point"].is_null()) {
        out.known_interior_point = VectorFrom(meta["known_interior_point"], "known_interior_point");
      }
      if (meta.contains("known_partition") && !meta["known_partition"].is_null()) {
        const json& p = meta["known_partition"];
        out.known_partition = Partition{IndicesFrom(p.at("B"), n, "B"),
                                        IndicesFrom(p.at("N"), n, "N")};
      }
    }
    return inst;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad instance: ") + e.what());
  }
}

std::string ResultToJson(const EpraResult& r, const EpraConfig& cfg) {
  std::ostringstream out;
  out << "{\n  \"status\": \"" << EpraStatusName(r.status) << "\",\n  \"x\": ";
  AppendVector(out, r.x);
  out << ",\n  \"x_hat\": ";
  AppendVector(out, r.x_hat);
  out << ",\n  \"B\": ";
  AppendIndices(out, r.B);
  out << ",\n  \"N\": ";
  AppendIndices(out, r.N);
  out << ",\n  \"rounds\": " << r.rounds << ",\n  \"bp_iters_primal\": " << r.bp_iters_primal
      << ",\n  \"bp_iters_dual\": " << r.bp_iters_dual
      << ",\n  \"wall_time\": " << FormatDouble(r.wall_time) << ",\n  \"D\": ";
  AppendVector(out, r.D);
  out << ",\n  \"D_hat\": ";
  AppendVector(out, r.D_hat);
  out << ",\n  \"config\": {\"U\": " << FormatDouble(cfg.U)
      << ", \"epsilon\": " << FormatDouble(cfg.epsilon) << ", \"scheme\": \""
      << SchemeName(cfg.scheme) << "\", \"max_rounds\": " << cfg.max_rounds
      << ", \"bp_max_iters\": " << cfg.bp_max_iters << ", \"rescale_mode\": \""
      << RescaleModeName(cfg.rescale_mode)
      << "\", \"membership_tol\": " << FormatDouble(cfg.membership_tol) << "}\n}\n";
  return out.str();
}

EpraResult ResultFromJson(const std::string& text, EpraConfig* cfg) {
  const json j = Parse(text);
  try {
    EpraResult r;
    r.status = ParseEpraStatus(j.at("status").get<std::string>());
    r.x = VectorFrom(j.at("x"), "x");
    r.x_hat = VectorFrom(j.at("x_hat"), "x_hat");
    const int n = static_cast<int>(r.x.size());
    if (r.x_hat.size() != n) throw Error(ErrorCode::kInvalidInput, "x and x_hat differ in length");
    r.B = IndicesFrom(j.at("B"), n, "B");
    r.N = IndicesFrom(j.at("N"), n, "N");
    r.rounds = j.value("rounds", 0);
    r.bp_iters_primal = j.value("bp_iters_primal", std::int64_t{0});
    r.bp_iters_dual = j.value("bp_iters_dual", std::int64_t{0});
    r.wall_time = j.value("wall_time", 0.0);
    if (j.contains("D")) r.D = VectorFrom(j["D"], "D");
    if (j.contains("D_hat")) r.D_hat = VectorFrom(j["D_hat"], "D_hat");
    if (cfg && j.contains("config")) {
      const json& c = j["config"];
      cfg->U = c.value("U", cfg->U);
      cfg->epsilon = c.value("epsilon", cfg->epsilon);
      if (c.contains("scheme")) cfg->scheme = ParseScheme(c["scheme"].get<std::string>());
      cfg->max_rounds = c.value("max_rounds", cfg->max_rounds);
      cfg->bp_max_iters = c.value("bp_max_iters", cfg->bp_max_iters);
      if (c.contains("rescale_mode")) {
        cfg->rescale_mode = ParseRescaleMode(c["rescale_mode"].get<std::string>());
      }
      cfg->membership_tol = c.value("membership_tol", cfg->membership_tol);
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad result: ") + e.what());
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace epra
