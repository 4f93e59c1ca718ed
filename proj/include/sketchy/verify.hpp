// Copyright 2026 The Sketchy Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKETCHY_VERIFY_HPP_
#define SKETCHY_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sketchy {

struct VerifyOptions {
  std::uint64_t seed = 7;
  /// Random cases per suite; 0 uses each suite's default.
  int cases = 0;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  int cases = 0;
  double seconds = 0.0;
  /// Worst observed value of each checked quantity with its limit.
  struct Metric {
    std::string name;
    double worst;
    double limit;
    bool upper;  // worst must be <= limit (else >= limit)
  };
  std::vector<Metric> metrics;
  std::string failure;  // first violated property, with the case seed

  nlohmann::json to_json() const;
};

/// linalg, escaped_mass, sandwich, ewfd, recovery, projection, optim,
/// shampoo, epoch.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);
/// "all" or a comma-separated list of suite names.
std::vector<SuiteResult> run_suites(const std::string& selector, const VerifyOptions& options);

/// True in the negative-control build that corrupts checked quantities.
bool fault_injected();

}  // namespace sketchy

#endif  // SKETCHY_VERIFY_HPP_
