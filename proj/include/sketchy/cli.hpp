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

#ifndef SKETCHY_CLI_HPP_
#define SKETCHY_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace sketchy {

/// Runs the `sketchy` command line with `args` (program name excluded).
/// Returns the process exit status: 0 on success, 1 when a run or an
/// invariant fails, 2 on bad usage. Errors go to `err` as one JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchy

#endif  // SKETCHY_CLI_HPP_
