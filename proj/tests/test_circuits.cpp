// Copyright 2026 The hqcnn Authors
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

#include "hqcnn/circuits.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dense_oracle.hpp"

using namespace hqcnn;

namespace {

std::vector<double> angles(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> v(count);
  for (auto& x : v) x = u(rng);
  return v;
}

oracle::CVec random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  oracle::CVec v(Eigen::Index{1} << n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v.normalized();
}

State to_state(const oracle::CVec& v) {
  return State::from_amplitudes(std::vector<Complex>(v.begin(), v.end()));
}

}  // namespace

TEST(Encode0Test, ZeroAngleIsHadamardLayer) {
  const auto c = encode0(0.0, 2);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.gates()[0], Gate::h(0));
  EXPECT_EQ(c.gates()[1], Gate::ry(0, 0.0));
  EXPECT_EQ(c.gates()[2], Gate::h(1));
  EXPECT_EQ(c.gates()[3], Gate::ry(1, 0.0));
}

TEST(Encode0Test, FourQubitsAtTrainingBond) {
  const auto c = encode0(0.45, 4);
  ASSERT_EQ(c.size(), 8u);
  for (std::size_t q = 0; q < 4; ++q) {
    EXPECT_EQ(c.gates()[2 * q], Gate::h(q));
    EXPECT_EQ(c.gates()[2 * q + 1], Gate::ry(q, 0.45));
  }
}

TEST(Encode0Test, PiAngleMatchesDenseOracle) {
  const auto s = encode0(std::numbers::pi, 1).run();
  const oracle::CVec v = oracle::circuit_matrix(encode0(std::numbers::pi, 1)) * oracle::basis(1, 0);
  EXPECT_LT((oracle::to_vec(s) - v).norm(), 1e-12);
  EXPECT_NEAR(z_expectation(s, 0), oracle::z_of(v, 0, 1), 1e-12);
  EXPECT_NEAR(z_expectation(s, 0), 0.0, 1e-12);
}

TEST(Encode0Test, RejectsNonFinite) {
  EXPECT_THROW(encode0(std::nan(""), 4), std::invalid_argument);
  EXPECT_THROW(encode0(INFINITY, 4), std::invalid_argument);
}

TEST(EncodeTest, ZeroAnglesEqualEncode0) {
  const std::vector<double> z(4, 0.0);
  EXPECT_EQ(encode(z), encode0(0.0, 4));
}

TEST(EncodeTest, SaturatedAngles) {
  const std::vector<double> a{std::numbers::pi, -std::numbers::pi, 0.0, 0.0};
  const auto c = encode(a);
  EXPECT_EQ(c.gates()[1], Gate::ry(0, std::numbers::pi));
  EXPECT_EQ(c.gates()[3], Gate::ry(1, -std::numbers::pi));
  const auto s = c.run();
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(EncodeTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(encode(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(encode(std::vector<double>{0.0, std::nan("")}), std::invalid_argument);
}

TEST(EncodeProperty, Encode0EqualsRepeatedAngles) {
  for (double b : {0.3, 0.735, 1.9, 2.5}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      EXPECT_EQ(encode0(b, n), encode(std::vector<double>(n, b)));
    }
  }
}

TEST(RealAmplitudesTest, FourQubitDepthTwoLayout) {
  std::vector<double> p{0, 1, 2, 3, 4, 5, 6, 7};
  const auto c = real_amplitudes(4, 2, PqcParams(4, 2, p));
  std::vector<Gate> expected;
  for (std::size_t d = 0; d < 2; ++d) {
    expected.push_back(Gate::cx(0, 1));
    expected.push_back(Gate::cx(2, 3));
    expected.push_back(Gate::cx(1, 2));
    for (std::size_t q = 0; q < 4; ++q) expected.push_back(Gate::ry(q, p[q + 4 * d]));
  }
  EXPECT_EQ(c.gates(), expected);
}

TEST(RealAmplitudesTest, FiveQubitBlockWiring) {
  const auto c = real_amplitudes(5, 1, PqcParams::zeros(5, 1));
  ASSERT_EQ(c.size(), 9u);
  EXPECT_EQ(c.gates()[0], Gate::cx(0, 1));
  EXPECT_EQ(c.gates()[1], Gate::cx(2, 3));
  EXPECT_EQ(c.gates()[2], Gate::cx(1, 2));
  EXPECT_EQ(c.gates()[3], Gate::cx(3, 4));
  for (std::size_t q = 0; q < 5; ++q) EXPECT_EQ(c.gates()[4 + q].kind, GateKind::RotationY);
}

TEST(RealAmplitudesTest, ZeroParamsKeepAllZeroState) {
  const auto s = real_amplitudes(4, 1, PqcParams::zeros(4, 1)).run();
  EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-15);
}

TEST(RealAmplitudesTest, Errors) {
  EXPECT_THROW(real_amplitudes(1, 1, PqcParams::zeros(1, 1)), std::invalid_argument);
  EXPECT_THROW(real_amplitudes(4, 2, PqcParams::zeros(4, 1)), std::invalid_argument);
  EXPECT_THROW(PqcParams(4, 2, std::vector<double>(7)), std::invalid_argument);
  EXPECT_THROW(PqcParams(4, 0, {}), std::invalid_argument);
}

TEST(RealAmplitudesProperty, GateCounts) {
  for (std::size_t d = 1; d <= 8; ++d) {
    EXPECT_EQ(real_amplitudes(4, d, PqcParams::zeros(4, d)).size(), d * (3 + 4));
    EXPECT_EQ(real_amplitudes(5, d, PqcParams::zeros(5, d)).size(), d * (4 + 5));
  }
}

TEST(CircuitProperty, MatchesDenseProductOnRandomStates) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t depth = 1 + trial % 3;
    Circuit c = encode(angles(n, rng));
    c.append(real_amplitudes(n, depth, PqcParams(n, depth, angles(n * depth, rng))));
    const auto v = random_vec(n, rng);
    const auto got = c.run(to_state(v));
    EXPECT_LT((oracle::to_vec(got) - oracle::circuit_matrix(c) * v).norm(), 1e-10);
  }
}

TEST(CircuitTest, RegisterChecks) {
  Circuit c(2);
  EXPECT_THROW(c.add(Gate::h(2)), std::out_of_range);
  EXPECT_THROW(c.add(Gate::cx(0, 0)), std::invalid_argument);
  EXPECT_THROW(c.append(Circuit(3)), std::invalid_argument);
  EXPECT_THROW(c.run(State(3)), std::invalid_argument);
}
