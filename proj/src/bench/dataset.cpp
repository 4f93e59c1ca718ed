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

#include "sketchy/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace sketchy {
namespace {

[[noreturn]] void fail(long line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw ParseError(os.str(), line);
}

bool parse_double(std::string_view s, double* out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(*out);
}

bool parse_int(std::string_view s, long* out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Vector Dataset::dense(std::size_t i) const {
  const Example& ex = examples.at(i);
  Vector v = Vector::Zero(dim);
  for (std::size_t k = 0; k < ex.index.size(); ++k) v(ex.index[k]) = ex.value[k];
  v(dim - 1) = 1.0;
  return v;
}

std::size_t Dataset::positives() const {
  std::size_t n = 0;
  for (const Example& ex : examples) n += ex.label > 0;
  return n;
}

Dataset parse_libsvm(std::istream& in, const std::string& name) {
  Dataset ds;
  ds.name = name;
  long max_index = 0;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
      std::size_t end = pos;
      while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
      if (end > pos) tokens.push_back(rest.substr(pos, end - pos));
      pos = end;
    }
    if (tokens.empty()) continue;

    Example ex;
    double label;
    if (!parse_double(tokens[0], &label)) fail(lineno, "non-numeric label '" + std::string(tokens[0]) + "'");
    ex.label = label > 0 ? 1.0 : -1.0;
    long prev = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const std::string_view tok = tokens[k];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) fail(lineno, "expected idx:val, got '" + std::string(tok) + "'");
      long idx;
      double val;
      if (!parse_int(tok.substr(0, colon), &idx)) fail(lineno, "non-numeric index in '" + std::string(tok) + "'");
      if (!parse_double(tok.substr(colon + 1), &val)) fail(lineno, "non-numeric value in '" + std::string(tok) + "'");
      if (idx <= 0) fail(lineno, "index must be 1-based, got " + std::to_string(idx));
      if (idx == prev) fail(lineno, "duplicate index " + std::to_string(idx));
      if (idx < prev) fail(lineno, "indices must be ascending (" + std::to_string(idx) + " after " + std::to_string(prev) + ")");
      if (idx > (1L << 30)) fail(lineno, "index too large");
      prev = idx;
      ex.index.push_back(static_cast<int>(idx - 1));
      ex.value.push_back(val);
    }
    max_index = std::max(max_index, prev);
    ds.examples.push_back(std::move(ex));
  }
  if (ds.examples.empty()) throw ParseError("empty dataset: no examples in " + name, 0);
  ds.dim = static_cast<int>(max_index) + 1;
  return ds;
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  const auto slash = path.find_last_of('/');
  return parse_libsvm(in, slash == std::string::npos ? path : path.substr(slash + 1));
}

}  // namespace sketchy
