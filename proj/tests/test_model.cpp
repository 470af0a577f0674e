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

#include "hqcnn/model.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "hqcnn/persistence.hpp"
#include "hqcnn/spectra.hpp"

using namespace hqcnn;

namespace {

const Dataset& h2() {
  static const Dataset ds = load_dataset(std::string(HQCNN_DATA_DIR) + "/h2_sto3g_jw.json");
  return ds;
}

std::vector<double> angles(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> v(count);
  for (auto& x : v) x = u(rng);
  return v;
}

ModelConfig config(std::size_t depth, std::vector<double> weights = {1.0, 0.5}) {
  ModelConfig cfg;
  cfg.depth = depth;
  cfg.weights = std::move(weights);
  return cfg;
}

PauliSum identity4() { return PauliSum::from_labels(4, {{1.0, "IIII"}}); }

}  // namespace

TEST(ModelConfigTest, DefaultsAreValid) {
  const ModelConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.layer_size(), 24u);
  EXPECT_EQ(cfg.parameter_count(), 48u);
}

TEST(ModelConfigTest, RejectsBrokenInvariants) {
  auto bad = [](auto mutate) {
    ModelConfig cfg;
    mutate(cfg);
    return cfg;
  };
  EXPECT_THROW(bad([](auto& c) { c.depth = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.weights = {0.5, 1.0}; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.weights = {0.0, 0.0}; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.weights = {1.0, -0.1}; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.weights = {1.0}; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.reference_states = {1, 1}; }).validate(),
               std::invalid_argument);
  EXPECT_THROW(bad([](auto& c) { c.reference_states = {0, 16}; }).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW(bad([](auto& c) { c.weights = {1.0, 0.0}; }).validate());
}

TEST(ModelTest, ParameterPackingRoundTrip) {
  std::mt19937_64 rng(1);
  const auto cfg = config(3);
  const auto x = angles(cfg.parameter_count(), rng);
  const auto [th, tc] = unpack_parameters(x, cfg);
  EXPECT_EQ(pack_parameters(th, tc), x);
  EXPECT_THROW(unpack_parameters(std::vector<double>(5), cfg), std::invalid_argument);
}

TEST(FirstLayerTest, ZeroParametersAtZeroBondMatchOracle) {
  const auto cfg = config(2);
  const auto theta = PqcParams::zeros(4, 2);
  ExactEvaluator exact;
  const auto z = first_layer_z(0.0, theta, cfg, exact);
  Circuit c = encode0(0.0, 4);
  c.append(real_amplitudes(4, 2, theta));
  const oracle::CVec v = oracle::circuit_matrix(c) * oracle::basis(4, 0);
  ASSERT_EQ(z.size(), 4u);
  for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(z[q], oracle::z_of(v, q, 4), 1e-12);
}

TEST(FirstLayerTest, ZeroDepthIsRejected) {
  EXPECT_THROW(PqcParams(4, 0, {}), std::invalid_argument);
  EXPECT_THROW(config(0).validate(), std::invalid_argument);
}

TEST(ForwardEnergyTest, IdentityHamiltonian) {
  const auto cfg = config(2);
  ExactEvaluator exact;
  const auto zero = PqcParams::zeros(4, 2);
  EXPECT_NEAR(forward_energy(0.7, zero, zero, 0, identity4(), cfg, exact), 1.0, 1e-12);
}

TEST(ForwardEnergyTest, MatchesDenseOraclePipeline) {
  std::mt19937_64 rng(2);
  ExactEvaluator exact;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t depth = 1 + trial % 3;
    const auto cfg = config(depth);
    const auto th = angles(cfg.layer_size(), rng);
    const auto tc = angles(cfg.layer_size(), rng);
    const auto& e = h2().entries[static_cast<std::size_t>(trial) % h2().entries.size()];
    for (std::uint64_t ref : {0u, 1u}) {
      const auto v = oracle::branch_vector(e.bond_length, th, tc, depth, 4, ref);
      const double want = (v.adjoint() * oracle::pauli_sum(e.hamiltonian) * v)(0, 0).real();
      const double got = forward_energy(e.bond_length, PqcParams(4, depth, th),
                                        PqcParams(4, depth, tc), ref, e.hamiltonian, cfg, exact);
      EXPECT_NEAR(got, want, 1e-10);
    }
  }
}

TEST(ForwardEnergyTest, SecondLayerInputFromFirstLayerReadout) {
  // encode(pi * z) fed by a first layer at b = 0.85 reproduces the pipeline.
  std::mt19937_64 rng(3);
  const auto cfg = config(2);
  const PqcParams th(4, 2, angles(8, rng)), tc(4, 2, angles(8, rng));
  const auto& e = h2().at(0.85);
  ExactEvaluator exact;
  const auto z = first_layer_z(0.85, th, cfg, exact);
  std::vector<double> a(z);
  for (auto& x : a) x *= std::numbers::pi;
  Circuit c = encode(a);
  c.append(real_amplitudes(4, 2, tc));
  const double direct = expectation(e.hamiltonian, c.run(basis_state(4, 1)));
  EXPECT_NEAR(direct, forward_energy(0.85, th, tc, 1, e.hamiltonian, cfg, exact), 1e-12);
}

TEST(CostTest, GroundOnlyWeightsGiveMeanGroundEnergy) {
  std::mt19937_64 rng(4);
  const auto cfg = config(2, {1.0, 0.0});
  const PqcParams th(4, 2, angles(8, rng)), tc(4, 2, angles(8, rng));
  const auto pts = h2().points(std::vector<double>{0.45, 0.85, 1.25});
  ExactEvaluator exact;
  double mean = 0.0;
  for (const auto& p : pts) mean += forward_energy(p.bond_length, th, tc, 0, p.hamiltonian, cfg, exact);
  mean /= 3.0;
  EXPECT_EQ(cost(th, tc, pts, cfg), mean);
}

TEST(CostTest, TwoStateWeights) {
  std::mt19937_64 rng(5);
  const auto cfg = config(2);
  const PqcParams th(4, 2, angles(8, rng)), tc(4, 2, angles(8, rng));
  const auto pts = h2().points(std::vector<double>{0.45, 2.45});
  const auto m = branch_means(th, tc, pts, cfg);
  EXPECT_NEAR(cost(th, tc, pts, cfg), m[0] + 0.5 * m[1], 1e-15);
}

TEST(CostTest, IdentityHamiltonianSinglePoint) {
  std::mt19937_64 rng(6);
  const auto cfg = config(3);
  const std::vector<TrainingPoint> pts{{0.9, identity4()}};
  for (int trial = 0; trial < 5; ++trial) {
    const PqcParams th(4, 3, angles(12, rng)), tc(4, 3, angles(12, rng));
    EXPECT_NEAR(cost(th, tc, pts, cfg), 1.5, 1e-12);
  }
}

TEST(CostTest, EmptyTrainingSet) {
  const auto cfg = config(1);
  const auto p = PqcParams::zeros(4, 1);
  EXPECT_THROW(cost(p, p, std::vector<TrainingPoint>{}, cfg), std::invalid_argument);
}

TEST(InferTest, StateIndexOutOfRange) {
  Model m{config(1), PqcParams::zeros(4, 1), PqcParams::zeros(4, 1), {}, ""};
  ExactEvaluator exact;
  EXPECT_THROW(infer(0.7, m, 2, identity4(), exact), std::out_of_range);
  EXPECT_NO_THROW(infer(0.7, m, 1, identity4(), exact));
}

TEST(InferTest, TrainingPointMatchesCostTerm) {
  std::mt19937_64 rng(7);
  const auto cfg = config(2);
  Model m{cfg, PqcParams(4, 2, angles(8, rng)), PqcParams(4, 2, angles(8, rng)), {}, ""};
  const auto pts = h2().points(std::vector<double>{1.25});
  const auto means = branch_means(m.theta, m.theta_cap, pts, cfg);
  ExactEvaluator exact;
  EXPECT_EQ(infer(1.25, m, 0, pts[0].hamiltonian, exact), means[0]);
  EXPECT_EQ(infer(1.25, m, 1, pts[0].hamiltonian, exact), means[1]);
}

TEST(AblationTest, SingleDoubleDepthStack) {
  std::mt19937_64 rng(8);
  auto cfg = config(4, {1.0, 0.0});
  cfg.classical_layer = false;
  EXPECT_EQ(cfg.parameter_count(), 32u);
  const PqcParams th(4, 4, angles(16, rng)), tc(4, 4, angles(16, rng));
  Circuit c = encode0(0.6, 4);
  c.append(real_amplitudes(4, 8, PqcParams(4, 8, pack_parameters(th, tc))));
  const auto want = c.run();
  const auto got = branch_state(0.6, th, tc, 0, cfg);
  EXPECT_NEAR(std::abs(inner_product(want, got)), 1.0, 1e-12);
  ExactEvaluator exact;
  const auto& e = h2().at(0.6);
  EXPECT_NEAR(forward_energy(0.6, th, tc, 0, e.hamiltonian, cfg, exact),
              expectation(e.hamiltonian, want), 1e-12);
}

TEST(ModelProperty, BranchStatesAreOrthogonal) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    auto cfg = config(1 + trial % 6);
    cfg.classical_layer = trial % 7 != 0;
    const PqcParams th(4, cfg.depth, angles(cfg.layer_size(), rng));
    const PqcParams tc(4, cfg.depth, angles(cfg.layer_size(), rng));
    const double b = 0.3 + 0.05 * (trial % 45);
    const auto s0 = branch_state(b, th, tc, 0, cfg);
    const auto s1 = branch_state(b, th, tc, 1, cfg);
    ASSERT_LT(std::abs(inner_product(s0, s1)), 1e-10) << "trial " << trial;
  }
}

TEST(ModelProperty, VariationalBoundsHoldForRandomParameters) {
  std::mt19937_64 rng(10);
  ExactEvaluator exact;
  const auto& entries = h2().entries;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto cfg = config(1 + trial % 6);
    const PqcParams th(4, cfg.depth, angles(cfg.layer_size(), rng));
    const PqcParams tc(4, cfg.depth, angles(cfg.layer_size(), rng));
    const auto& e = entries[static_cast<std::size_t>(trial) % entries.size()];
    const auto [l0, l1] = reference_energies(e.hamiltonian);
    const auto E = forward_energies(e.bond_length, th, tc, e.hamiltonian, cfg, exact);
    ASSERT_GE(E[0], l0 - 1e-9);
    ASSERT_GE(E[1], l0 - 1e-9);
    ASSERT_GE(1.0 * E[0] + 0.5 * E[1], 1.0 * l0 + 0.5 * l1 - 1e-9);
  }
}

TEST(ModelProperty, IntermediateGlobalPhaseIsInvisible) {
  std::mt19937_64 rng(11);
  const auto cfg = config(2);
  const PqcParams th(4, 2, angles(8, rng));
  const auto s = first_layer_state(1.1, th, cfg);
  std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
  const Complex phase = std::polar(1.0, 0.73);
  for (auto& a : rotated) a *= phase;
  const auto z0 = z_expectations(s);
  const auto z1 = z_expectations(State::from_amplitudes(std::move(rotated)));
  for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(z0[q], z1[q], 1e-15);
}
