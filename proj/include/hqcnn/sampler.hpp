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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hqcnn/circuits.hpp"
#include "hqcnn/model.hpp"
#include "hqcnn/pauli.hpp"
#include "hqcnn/rng.hpp"
#include "hqcnn/statevector.hpp"

namespace hqcnn {

/**
 * @brief Shot budget for sampled readout.
 *
 * `shots_per_term` is spent on every non-identity Pauli term and on the
 * single Z-basis run of the intermediate layer. Terms are never grouped.
 */
struct ShotPlan {
  std::uint64_t shots_per_term = 100000;
  std::uint64_t seed = 0;
  std::size_t repetitions = 1;

  void validate() const;
};

/// Multinomial draw of `shots` computational-basis outcomes from |a_k|^2.
std::map<std::uint64_t, std::uint64_t> sample_counts(const State& s,
                                                     std::uint64_t shots, Rng& rng);

/// Rotates `s` so that measuring every qubit in Z measures `term`
/// (H for X, S^dagger then H for Y).
void rotate_to_measurement_basis(State& s, const PauliString& term);

/// Shot estimate of <term> on an already prepared state. The identity term
/// returns 1 without drawing.
double estimate_pauli(const State& prepared, const PauliString& term,
                      std::uint64_t shots, Rng& rng);
double estimate_pauli(const Circuit& prep, const PauliString& term,
                      std::uint64_t shots, Rng& rng);

/// sum_P h_P estimate_pauli(P) with fresh shots for every term.
double estimate_energy(const State& prepared, const PauliSum& h,
                       std::uint64_t shots_per_term, Rng& rng);
double estimate_energy(const Circuit& prep, const PauliSum& h,
                       std::uint64_t shots_per_term, Rng& rng);
/// Single estimate seeded from plan.seed.
double estimate_energy(const Circuit& prep, const PauliSum& h, const ShotPlan& plan);

/// Shot-based readout; <Z_i> for all qubits share one Z-basis run.
class SampledEvaluator final : public Evaluator {
 public:
  SampledEvaluator(std::uint64_t shots_per_term, std::uint64_t seed)
      : shots_(shots_per_term), rng_(seed) {}

  std::vector<double> z_expectations(const State& prepared) override;
  double energy(const State& prepared, const PauliSum& h) override;

  std::uint64_t shots_per_term() const noexcept { return shots_; }
  /// Measurement shots drawn so far.
  std::uint64_t shots_used() const noexcept { return used_; }

 private:
  std::uint64_t shots_;
  Rng rng_;
  std::uint64_t used_ = 0;
};

/// Inference with both the intermediate <Z_i> and the final energy sampled.
double noisy_inference(double bond_length, const Model& model,
                       std::size_t state_index, const PauliSum& h,
                       const ShotPlan& plan);

/// All branches at once; the branches share one sampled first layer.
std::vector<double> noisy_inference_all(double bond_length, const Model& model,
                                        const PauliSum& h, std::uint64_t shots,
                                        std::uint64_t seed);

/// Test point of a noise sweep: Hamiltonian plus exact reference energies.
struct SweepPoint {
  double bond_length = 0.0;
  PauliSum hamiltonian;
  std::vector<double> reference;  // one entry per model branch
};

struct SweepSample {
  std::uint64_t shots = 0;
  double bond_length = 0.0;
  std::size_t repetition = 0;
  std::vector<double> energies;
  std::vector<double> abs_errors;
};

struct SweepAggregate {
  std::uint64_t shots = 0;
  std::size_t samples = 0;
  std::vector<double> mean_abs_error;  // per branch
  std::vector<double> std_abs_error;   // per branch; NaN when samples < 2
  /// Measurement shots behind one bond-length estimate of all branches.
  std::uint64_t total_shots_per_point = 0;
};

struct SweepResult {
  std::vector<SweepSample> samples;  // ordered by shots, point, repetition
  std::vector<SweepAggregate> aggregates;  // ordered as the shot list
};

/**
 * Repeats noisy inference over every point and shot level. Each (shot level,
 * point, repetition) cell draws from its own seed derived from `seed`, so
 * results do not depend on `jobs`.
 */
SweepResult noise_sweep(const Model& model, std::span<const SweepPoint> points,
                        std::span<const std::uint64_t> shot_levels,
                        std::size_t repetitions, std::uint64_t seed,
                        std::size_t jobs = 0);

}  // namespace hqcnn
