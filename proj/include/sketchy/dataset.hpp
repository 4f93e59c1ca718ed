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

#ifndef SKETCHY_DATASET_HPP_
#define SKETCHY_DATASET_HPP_

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sketchy/linalg.hpp"

namespace sketchy {

/// Sparse example with 0-based dense positions. The intercept is not stored;
/// it is the constant 1 at position dim - 1 of the owning Dataset.
struct Example {
  std::vector<int> index;
  std::vector<double> value;
  double label = 1.0;  // -1 or +1
};

struct Dataset {
  std::string name;
  int dim = 0;  // features + intercept
  std::vector<Example> examples;

  std::size_t size() const { return examples.size(); }
  /// Dense feature vector of example i, intercept included.
  Vector dense(std::size_t i) const;
  std::size_t positives() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line) : std::runtime_error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// LIBSVM text: "label idx:val idx:val ...", 1-based ascending indices.
/// Index i lands at dense position i - 1 and the intercept at max index, so
/// dim = max index + 1. Labels > 0 map to +1, the rest to -1. Blank lines and
/// '#' comments are skipped.
Dataset parse_libsvm(std::istream& in, const std::string& name = "stdin");
Dataset load_libsvm(const std::string& path);

}  // namespace sketchy

#endif  // SKETCHY_DATASET_HPP_
