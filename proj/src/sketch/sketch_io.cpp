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

#include "sketchy/sketch_io.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace sketchy {
namespace {

constexpr char kMagic[4] = {'S', 'K', 'F', 'D'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary sketch records assume a little-endian host");

template <typename T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw std::invalid_argument("sketch record truncated");
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void check_shape(const FdSketchState& s) {
  if (s.dim < 1 || s.sketch_size < 1) throw std::invalid_argument("sketch record: bad shape");
}

}  // namespace

nlohmann::json sketch_to_json(const FdSketchState& s) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(s.factor.size()));
  for (Eigen::Index i = 0; i < s.factor.rows(); ++i)
    for (Eigen::Index j = 0; j < s.factor.cols(); ++j) flat.push_back(s.factor(i, j));
  return nlohmann::json{{"dim", s.dim},
                        {"sketch_size", s.sketch_size},
                        {"beta2", s.beta2},
                        {"step", s.step},
                        {"escaped_mass", s.escaped_mass},
                        {"method", to_string(s.method)},
                        {"factor", flat}};
}

FdSketchState sketch_from_json(const nlohmann::json& j) {
  FdSketchState s;
  try {
    s.dim = j.at("dim").get<int>();
    s.sketch_size = j.at("sketch_size").get<int>();
    s.beta2 = j.at("beta2").get<double>();
    s.step = j.at("step").get<std::int64_t>();
    s.escaped_mass = j.at("escaped_mass").get<double>();
    s.method = parse_fd_method(j.at("method").get<std::string>());
    check_shape(s);
    const auto flat = j.at("factor").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(s.dim) * static_cast<std::size_t>(s.sketch_size))
      throw std::invalid_argument("sketch record: factor length does not match d * l");
    s.factor.resize(s.dim, s.sketch_size);
    std::size_t k = 0;
    for (int i = 0; i < s.dim; ++i)
      for (int c = 0; c < s.sketch_size; ++c) s.factor(i, c) = flat[k++];
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sketch record: ") + e.what());
  }
  return s;
}

std::string sketch_to_binary(const FdSketchState& s) {
  std::string out;
  out.reserve(40 + static_cast<std::size_t>(s.factor.size()) * 8);
  out.append(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::int32_t>(out, s.dim);
  put<std::int32_t>(out, s.sketch_size);
  put<std::uint8_t>(out, s.method == FdMethod::kDense ? 1 : 0);
  put<double>(out, s.beta2);
  put<std::int64_t>(out, s.step);
  put<double>(out, s.escaped_mass);
  for (Eigen::Index i = 0; i < s.factor.rows(); ++i)
    for (Eigen::Index j = 0; j < s.factor.cols(); ++j) put<double>(out, s.factor(i, j));
  return out;
}

FdSketchState sketch_from_binary(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::invalid_argument("sketch record: bad magic");
  Reader r(bytes.substr(4));
  if (r.get<std::uint32_t>() != kVersion) throw std::invalid_argument("sketch record: unknown version");
  FdSketchState s;
  s.dim = r.get<std::int32_t>();
  s.sketch_size = r.get<std::int32_t>();
  const auto method = r.get<std::uint8_t>();
  if (method > 1) throw std::invalid_argument("sketch record: unknown method");
  s.method = method ? FdMethod::kDense : FdMethod::kFactored;
  s.beta2 = r.get<double>();
  s.step = r.get<std::int64_t>();
  s.escaped_mass = r.get<double>();
  check_shape(s);
  if (r.remaining() != static_cast<std::size_t>(s.dim) * static_cast<std::size_t>(s.sketch_size) * 8)
    throw std::invalid_argument("sketch record: factor length does not match d * l");
  s.factor.resize(s.dim, s.sketch_size);
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.sketch_size; ++j) s.factor(i, j) = r.get<double>();
  if (!r.done()) throw std::invalid_argument("sketch record: trailing bytes");
  return s;
}

}  // namespace sketchy
