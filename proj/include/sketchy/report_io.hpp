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

#ifndef SKETCHY_REPORT_IO_HPP_
#define SKETCHY_REPORT_IO_HPP_

#include <string>

#include "json.hpp"
#include "sketchy/harness.hpp"

namespace sketchy {

/// Creates parent directories as needed; throws std::runtime_error on I/O
/// failure.
void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& j);
void write_trace_csv(const std::string& path, const RegretTrace& trace);
std::string read_text_file(const std::string& path);

/// UTC time as an ISO-8601 string, for metadata fields only.
std::string utc_timestamp();

}  // namespace sketchy

#endif  // SKETCHY_REPORT_IO_HPP_
