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

#ifndef SKETCHY_SKETCH_IO_HPP_
#define SKETCHY_SKETCH_IO_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "sketchy/fd_sketch.hpp"

namespace sketchy {

/// {"dim", "sketch_size", "beta2", "step", "escaped_mass", "method",
///  "factor": [row-major d*l values]}. Doubles round-trip exactly.
nlohmann::json sketch_to_json(const FdSketchState& s);
FdSketchState sketch_from_json(const nlohmann::json& j);

/// Little-endian record: "SKFD", u32 version, i32 d, i32 l, u8 method,
/// f64 beta2, i64 step, f64 escaped mass, then d*l f64 row-major.
std::string sketch_to_binary(const FdSketchState& s);
FdSketchState sketch_from_binary(std::string_view bytes);

}  // namespace sketchy

#endif  // SKETCHY_SKETCH_IO_HPP_
