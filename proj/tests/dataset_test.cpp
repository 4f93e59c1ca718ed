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

#include <gtest/gtest.h>

#include <sstream>

#include <Eigen/SVD>

#include "sketchy/dataset.hpp"
#include "sketchy/synthetic.hpp"

namespace sketchy {
namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

TEST(Libsvm, SingleLine) {
  const Dataset ds = parse("+1 3:0.5\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.dim, 4);
  const Vector x = ds.dense(0);
  EXPECT_EQ(x(2), 0.5);
  EXPECT_EQ(x(3), 1.0);
  EXPECT_EQ(x(0), 0.0);
  EXPECT_EQ(ds.examples[0].label, 1.0);
}

TEST(Libsvm, LabelsCommentsAndBlanks) {
  const Dataset ds = parse("# header\n0 1:2\n\n-1 2:1 5:3 # trailing\n2 1:1\n");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.dim, 6);
  EXPECT_EQ(ds.examples[0].label, -1.0);
  EXPECT_EQ(ds.examples[1].label, -1.0);
  EXPECT_EQ(ds.examples[2].label, 1.0);
  EXPECT_EQ(ds.positives(), 1u);
  EXPECT_EQ(ds.dense(1)(4), 3.0);
}

TEST(Libsvm, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("# only\n\n"), ParseError);
  try {
    parse("+1 1:1\n+1 2:x\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse("+1 0:1\n"), ParseError);
  EXPECT_THROW(parse("+1 2:1 2:3\n"), ParseError);
  EXPECT_THROW(parse("abc 1:1\n"), ParseError);
}

TEST(Libsvm, A9aShape) {
  const Dataset ds = load_libsvm(std::string(SKETCHY_DATA_DIR) + "/a9a");
  EXPECT_EQ(ds.size(), 32561u);
  EXPECT_EQ(ds.dim, 124);
}

TEST(Libsvm, MissingFile) { EXPECT_ANY_THROW(load_libsvm("/nonexistent/a9a")); }

TEST(Synthetic, SpecParsing) {
  const auto s = SyntheticSpec::parse("logistic:d=7,n=10,seed=3");
  EXPECT_EQ(s.n, 10);
  EXPECT_EQ(s.d, 7);
  EXPECT_EQ(s.seed, 3u);
  EXPECT_EQ(SyntheticSpec::parse(s.to_string()).to_string(), s.to_string());
  EXPECT_EQ(SyntheticSpec::parse("logistic").n, 500);
  EXPECT_THROW(SyntheticSpec::parse("gaussian:n=3"), std::invalid_argument);
  EXPECT_THROW(SyntheticSpec::parse("logistic:n=0"), std::invalid_argument);
  EXPECT_THROW(SyntheticSpec::parse("logistic:q=1"), std::invalid_argument);
}

TEST(Synthetic, DeterministicAndShaped) {
  const auto spec = SyntheticSpec::parse("logistic:n=50,d=6,seed=9");
  const Dataset a = synthetic_logistic(spec), b = synthetic_logistic(spec);
  ASSERT_EQ(a.size(), 50u);
  EXPECT_EQ(a.dim, 7);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.dense(i), b.dense(i));
  EXPECT_GT(a.positives(), 0u);
  EXPECT_LT(a.positives(), 50u);
}

TEST(Synthetic, LowRankStreamRank) {
  Rng rng(5);
  const auto grads = low_rank_stream(8, 3, 40, rng);
  Matrix m(8, 40);
  for (int i = 0; i < 40; ++i) m.col(i) = grads[static_cast<std::size_t>(i)];
  const Eigen::JacobiSVD<Matrix> svd(m);
  EXPECT_GT(svd.singularValues()(2), 1e-6);
  EXPECT_LT(svd.singularValues()(3), 1e-10 * svd.singularValues()(0));
}

}  // namespace
}  // namespace sketchy
