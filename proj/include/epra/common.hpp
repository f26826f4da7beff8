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

#ifndef EPRA_COMMON_HPP_
#define EPRA_COMMON_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace epra {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

// Sorted 0-based coordinate indices. Files and reports use 1-based indices.
using IndexSet = std::vector<int>;

enum class ErrorCode {
  kInvalidInput,
  kDimensionMismatch,
  kRankDeficient,
  kFullRankSquare,
  kEmptySupport,
  kNoImprovingVertex,
  kDegenerateStep,
  kBothSidesInterior,
  kDegenerateMax,
  kZeroVector,
  kNoFeasibleStart,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epra

#endif  // EPRA_COMMON_HPP_
