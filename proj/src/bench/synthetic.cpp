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

#include "sketchy/synthetic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "sketchy/loss.hpp"

namespace sketchy {

SyntheticSpec SyntheticSpec::parse(const std::string& text) {
  SyntheticSpec s;
  std::string rest = text;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    s.kind = text.substr(0, colon);
    rest = text.substr(colon + 1);
  } else if (text.find('=') == std::string::npos) {
    s.kind = text;
    rest.clear();
  }
  if (s.kind != "logistic") throw std::invalid_argument("synthetic spec: unknown kind '" + s.kind + "'");
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("synthetic spec: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (key == "n") s.n = std::stoi(val, &used);
      else if (key == "d") s.d = std::stoi(val, &used);
      else if (key == "seed") s.seed = std::stoull(val, &used);
      else throw std::invalid_argument("synthetic spec: unknown key '" + key + "'");
      if (used != val.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("synthetic spec: bad value for '" + key + "': '" + val + "'");
    }
  }
  if (s.n < 1 || s.d < 1) throw std::invalid_argument("synthetic spec: n and d must be positive");
  return s;
}

std::string SyntheticSpec::to_string() const {
  std::ostringstream os;
  os << kind << ":n=" << n << ",d=" << d << ",seed=" << seed;
  return os.str();
}

Dataset synthetic_logistic(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  Rng model_rng = rng.split(0);
  Rng data_rng = rng.split(1);
  const Vector w = model_rng.normal_vector(spec.d) * (3.0 / std::sqrt(static_cast<double>(spec.d)));
  const double bias = 0.5 * model_rng.normal();
  const double scale = 1.0;
  Dataset ds;
  ds.name = spec.to_string();
  ds.dim = spec.d + 1;
  ds.examples.reserve(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    Example ex;
    double z = bias;
    for (int j = 0; j < spec.d; ++j) {
      const double a = data_rng.normal() * scale;
      ex.index.push_back(j);
      ex.value.push_back(a);
      z += w(j) * a;
    }
    ex.label = data_rng.uniform() < sigmoid(z) ? 1.0 : -1.0;
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

Matrix orthonormal_columns(int d, int r, Rng& rng) {
  if (r < 1 || r > d) throw std::invalid_argument("orthonormal_columns: need 1 <= r <= d");
  const Matrix a = rng.normal_matrix(d, r);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, r);
}

std::vector<Vector> gaussian_stream(int d, int rounds, Rng& rng) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(rounds));
  for (int t = 0; t < rounds; ++t) out.push_back(rng.normal_vector(d));
  return out;
}

std::vector<Vector> low_rank_stream(int d, int rank, int rounds, Rng& rng) {
  const Matrix u = orthonormal_columns(d, rank, rng);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(rounds));
  for (int t = 0; t < rounds; ++t) out.push_back(u * rng.normal_vector(rank));
  return out;
}

}  // namespace sketchy
