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

#include "hqcnn/statevector.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "hqcnn/circuits.hpp"
#include "hqcnn/pauli.hpp"

using namespace hqcnn;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Gate random_gate(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> q(0, n - 1);
  std::uniform_real_distribution<double> a(-6.0, 6.0);
  switch (kind(rng)) {
    case 0: return Gate::h(q(rng));
    case 1: return Gate::ry(q(rng), a(rng));
    default: {
      const auto c = q(rng);
      return Gate::cx(c, (c + 1 + q(rng) % (n - 1)) % n);
    }
  }
}

}  // namespace

TEST(BasisStateTest, ZeroAndOneOnFourQubits) {
  const auto s0 = basis_state(4, 0);
  EXPECT_EQ(s0[0], Complex(1.0));
  const auto s1 = basis_state(4, 1);
  EXPECT_EQ(s1[1], Complex(1.0));
  EXPECT_EQ(s1[0], Complex(0.0));
  // Little-endian: index 1 has qubit 0 excited.
  EXPECT_DOUBLE_EQ(z_expectation(s1, 0), -1.0);
  EXPECT_DOUBLE_EQ(z_expectation(s1, 3), 1.0);
}

TEST(BasisStateTest, IndexOutOfRange) {
  EXPECT_THROW(basis_state(1, 2), std::out_of_range);
}

TEST(StateTest, FromAmplitudesRejectsBadSize) {
  EXPECT_THROW(State::from_amplitudes({Complex(1.0), Complex(0.0), Complex(0.0)}),
               std::invalid_argument);
  EXPECT_THROW(State(kMaxStateQubits + 1), std::invalid_argument);
}

TEST(ApplyTest, HadamardOnZero) {
  const auto s = apply(State(1), Gate::h(0));
  EXPECT_NEAR(s[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(s[1].real(), kInvSqrt2, 1e-15);
}

TEST(ApplyTest, RotationYByPi) {
  const auto p = apply(State(1), Gate::ry(0, std::numbers::pi)).probabilities();
  EXPECT_NEAR(p[0], 0.0, 1e-15);
  EXPECT_NEAR(p[1], 1.0, 1e-15);
}

TEST(ApplyTest, ControlledXMakesBellState) {
  // (|00> + |01>)/sqrt2 has qubit 0 in superposition.
  auto s = State::from_amplitudes({kInvSqrt2, kInvSqrt2, 0.0, 0.0});
  s.apply(Gate::cx(0, 1));
  EXPECT_NEAR(s[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[2]), 0.0, 1e-15);
  EXPECT_NEAR(s[3].real(), kInvSqrt2, 1e-15);
}

TEST(ApplyTest, SAdjointPhase) {
  auto s = apply(State(1), Gate::h(0));
  s.apply(Gate::sdg(0));
  EXPECT_NEAR(std::abs(s[1] - Complex(0.0, -kInvSqrt2)), 0.0, 1e-15);
}

TEST(ApplyTest, RejectsBadIndices) {
  State s(2);
  EXPECT_THROW(s.apply(Gate::h(2)), std::out_of_range);
  EXPECT_THROW(s.apply(Gate::cx(2, 0)), std::out_of_range);
  EXPECT_THROW(s.apply(Gate::cx(1, 1)), std::invalid_argument);
}

TEST(ZExpectationTest, Examples) {
  EXPECT_DOUBLE_EQ(z_expectation(State(1), 0), 1.0);
  EXPECT_NEAR(z_expectation(apply(State(1), Gate::h(0)), 0), 0.0, 1e-15);
  auto bell = apply(State(2), Gate::h(0));
  bell.apply(Gate::cx(0, 1));
  EXPECT_NEAR(z_expectation(bell, 1), 0.0, 1e-15);
  EXPECT_THROW(z_expectation(bell, 2), std::out_of_range);
}

TEST(StatevectorProperty, NormPreservedOverRandomCircuits) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 5;
    State s(n);
    for (int g = 0; g < 50; ++g) s.apply(random_gate(n, rng));
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10) << "trial " << trial;
  }
}

TEST(StatevectorProperty, GateThenInverseRestoresAmplitudes) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 4;
    State s(n);
    for (int g = 0; g < 10; ++g) s.apply(random_gate(n, rng));
    const State before = s;
    const Gate g = random_gate(n, rng);
    s.apply(g);
    s.apply(g.inverse());
    for (std::size_t k = 0; k < s.dimension(); ++k) {
      ASSERT_LT(std::abs(s[k] - before[k]), 1e-12);
    }
  }
  EXPECT_EQ(Gate::ry(0, 0.3).inverse(), Gate::ry(0, -0.3));
  EXPECT_EQ(Gate::h(1).inverse(), Gate::h(1));
  EXPECT_THROW((void)Gate::sdg(0).inverse(), std::logic_error);
}

TEST(StatevectorProperty, ZExpectationMatchesPauliModule) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    State s(n);
    for (int g = 0; g < 20; ++g) s.apply(random_gate(n, rng));
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<Pauli> ops(n, Pauli::I);
      ops[q] = Pauli::Z;
      const double z = z_expectation(s, q);
      EXPECT_GE(z, -1.0);
      EXPECT_LE(z, 1.0);
      EXPECT_NEAR(z, expectation(PauliSum(n, {{1.0, PauliString(ops)}}), s), 1e-12);
    }
  }
}

TEST(StatevectorProperty, GatesMatchDenseOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    State s(n);
    for (int g = 0; g < 5; ++g) s.apply(random_gate(n, rng));
    const Gate g = random_gate(n, rng);
    const oracle::CVec expected = oracle::gate_matrix(g, n) * oracle::to_vec(s);
    s.apply(g);
    EXPECT_LT((oracle::to_vec(s) - expected).norm(), 1e-12);
  }
}

TEST(InnerProductTest, OrthogonalBasisStates) {
  EXPECT_EQ(inner_product(basis_state(3, 2), basis_state(3, 5)), Complex(0.0));
  EXPECT_EQ(inner_product(basis_state(3, 5), basis_state(3, 5)), Complex(1.0));
  EXPECT_THROW(inner_product(State(2), State(3)), std::invalid_argument);
}
