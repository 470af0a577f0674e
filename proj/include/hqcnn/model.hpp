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
#include <span>
#include <string>
#include <vector>

#include "hqcnn/circuits.hpp"
#include "hqcnn/pauli.hpp"
#include "hqcnn/statevector.hpp"

namespace hqcnn {

/// Bond-length-tagged Hamiltonian used as a training or test point.
struct TrainingPoint {
  double bond_length = 0.0;  // angstrom
  PauliSum hamiltonian;
};

/**
 * @brief Architecture of the two-layer network.
 *
 * `weights[j]` multiplies the mean energy of reference state
 * `reference_states[j]`. With `classical_layer` false the model is a single
 * RealAmplitudes stack of depth 2D acting on G0(b)|phi_j>.
 */
struct ModelConfig {
  std::size_t num_qubits = 4;
  std::size_t depth = 6;
  std::vector<double> weights{1.0, 0.5};
  std::vector<std::uint64_t> reference_states{0, 1};
  bool classical_layer = true;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;

  std::size_t num_references() const noexcept { return reference_states.size(); }
  /// Length of each of theta and theta_cap (n * D).
  std::size_t layer_size() const noexcept { return num_qubits * depth; }
  /// Length of the packed optimizer vector theta || theta_cap.
  std::size_t parameter_count() const noexcept { return 2 * layer_size(); }
};

struct TrainingMetadata {
  std::vector<double> cost_trace;
  std::size_t iterations = 0;
  double final_cost = 0.0;
  double final_gradient_norm = 0.0;
  std::size_t restart_index = 0;
  bool converged = false;
  std::vector<double> restart_costs;
};

struct Model {
  ModelConfig config;
  PqcParams theta;      // first-layer PQC
  PqcParams theta_cap;  // second-layer PQC
  TrainingMetadata training;
  std::string dataset_fingerprint;

  void validate() const;
};

/// Readout backend for circuit outputs. Implementations may be stateful.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  /// <Z_i> of `prepared` for every qubit i.
  virtual std::vector<double> z_expectations(const State& prepared) = 0;
  /// <prepared|h|prepared>.
  virtual double energy(const State& prepared, const PauliSum& h) = 0;
};

/// Reads amplitudes directly.
class ExactEvaluator final : public Evaluator {
 public:
  std::vector<double> z_expectations(const State& prepared) override;
  double energy(const State& prepared, const PauliSum& h) override;
};

/// Splits theta || theta_cap into the two per-layer parameter sets.
std::pair<PqcParams, PqcParams> unpack_parameters(std::span<const double> packed,
                                                  const ModelConfig& cfg);
std::vector<double> pack_parameters(const PqcParams& theta,
                                    const PqcParams& theta_cap);

/// U(theta) G0(b) |0>.
State first_layer_state(double bond_length, const PqcParams& theta,
                        const ModelConfig& cfg);

/// <Z_i> of the first-layer output, one entry per qubit.
std::vector<double> first_layer_z(double bond_length, const PqcParams& theta,
                                  const ModelConfig& cfg, Evaluator& evaluator);

/// U(theta_cap) G(pi z) |ref>, the state whose energy is read out.
State second_layer_state(std::span<const double> z, const PqcParams& theta_cap,
                         std::uint64_t reference, const ModelConfig& cfg);

/// U(theta || theta_cap) G0(b) |ref> for the model without classical layer.
State ablation_state(double bond_length, const PqcParams& theta,
                     const PqcParams& theta_cap, std::uint64_t reference,
                     const ModelConfig& cfg);

/// Exact output state of branch `reference` at bond length b.
State branch_state(double bond_length, const PqcParams& theta,
                   const PqcParams& theta_cap, std::uint64_t reference,
                   const ModelConfig& cfg);

double forward_energy(double bond_length, const PqcParams& theta,
                      const PqcParams& theta_cap, std::uint64_t reference,
                      const PauliSum& h, const ModelConfig& cfg,
                      Evaluator& evaluator);

/// Energies of every reference branch; the first layer is read out once.
std::vector<double> forward_energies(double bond_length, const PqcParams& theta,
                                     const PqcParams& theta_cap,
                                     const PauliSum& h, const ModelConfig& cfg,
                                     Evaluator& evaluator);

/// Per-branch mean energies <L_j> over the training points (exact readout).
std::vector<double> branch_means(const PqcParams& theta,
                                 const PqcParams& theta_cap,
                                 std::span<const TrainingPoint> training,
                                 const ModelConfig& cfg);

/// Weighted cost sum_j w_j <L_j>.
double cost(const PqcParams& theta, const PqcParams& theta_cap,
            std::span<const TrainingPoint> training, const ModelConfig& cfg);

/// cost() on a packed theta || theta_cap vector; this is the optimizer's
/// objective.
double packed_cost(std::span<const double> packed,
                   std::span<const TrainingPoint> training,
                   const ModelConfig& cfg);

/// Surrogate energy E_j(b) of a trained model; no optimization is done.
double infer(double bond_length, const Model& model, std::size_t state_index,
             const PauliSum& h, Evaluator& evaluator);

/// E_j(b) for every reference state of the model.
std::vector<double> infer_all(double bond_length, const Model& model,
                              const PauliSum& h, Evaluator& evaluator);

}  // namespace hqcnn
