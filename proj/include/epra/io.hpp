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

// JSON text formats for instances and solver results. Floats are written
// with 17 significant digits; index sets are 1-based on disk.

#ifndef EPRA_IO_HPP_
#define EPRA_IO_HPP_

#include <string>

#include "epra/epra.hpp"
#include "epra/subspace.hpp"

namespace epra {

std::string InstanceToJson(const Instance& inst);
// Throws kInvalidInput on malformed text; does not check rank.
Instance InstanceFromJson(const std::string& text);

// The config is stored alongside so a result can be verified on its own.
std::string ResultToJson(const EpraResult& result, const EpraConfig& cfg);
EpraResult ResultFromJson(const std::string& text, EpraConfig* cfg = nullptr);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Decimal with 17 significant digits, e.g. 5.0000000000000000e-01.
std::string FormatDouble(double value);

}  // namespace epra

#endif  // EPRA_IO_HPP_
