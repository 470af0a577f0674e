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

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqcnn {

void ModelConfig::validate() const {
  if (num_qubits < 2 || num_qubits > kMaxStateQubits) {
    throw std::invalid_argument("model qubit count must be in [2, " +
                                std::to_string(kMaxStateQubits) + "]");
  }
  if (depth < 1) throw std::invalid_argument("model depth must be at least 1");
  if (reference_states.empty()) {
    throw std::invalid_argument("model needs at least one reference state");
  }
  if (weights.size() != reference_states.size()) {
    throw std::invalid_argument("model has " + std::to_string(weights.size()) +
                                " weights for " +
                                std::to_string(reference_states.size()) +
                                " reference states");
  }
  if (!(weights.front() > 0.0)) {
    throw std::invalid_argument("first weight must be positive");
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] >= 0.0)) {
      throw std::invalid_argument("weights must be non-negative");
    }
    if (j > 0 && weights[j] > weights[j - 1]) {
      throw std::invalid_argument("weights must be non-increasing");
    }
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  for (std::size_t j = 0; j < reference_states.size(); ++j) {
    if (reference_states[j] >= dim) {
      throw std::invalid_argument("reference state index " +
                                  std::to_string(reference_states[j]) +
                                  " out of range");
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (reference_states[i] == reference_states[j]) {
        throw std::invalid_argument("reference states must be distinct");
      }
    }
  }
}

void Model::validate() const {
  config.validate();
  for (const PqcParams* p : {&theta, &theta_cap}) {
    if (p->num_qubits() != config.num_qubits || p->depth() != config.depth ||
        p->size() != config.layer_size()) {
      throw std::invalid_argument(
          "model parameters do not match n * D = " +
          std::to_string(config.layer_size()));
    }
  }
}

std::vector<double> ExactEvaluator::z_expectations(const State& prepared) {
  return hqcnn::z_expectations(prepared);
}

double ExactEvaluator::energy(const State& prepared, const PauliSum& h) {
  return expectation(h, prepared);
}

std::pair<PqcParams, PqcParams> unpack_parameters(std::span<const double> packed,
                                                  const ModelConfig& cfg) {
  const std::size_t m = cfg.layer_size();
  if (packed.size() != 2 * m) {
    throw std::invalid_argument("expected " + std::to_string(2 * m) +
                                " packed parameters, got " +
                                std::to_string(packed.size()));
  }
  return {PqcParams(cfg.num_qubits, cfg.depth,
                    {packed.begin(), packed.begin() + static_cast<long>(m)}),
          PqcParams(cfg.num_qubits, cfg.depth,
                    {packed.begin() + static_cast<long>(m), packed.end()})};
}

std::vector<double> pack_parameters(const PqcParams& theta,
                                    const PqcParams& theta_cap) {
  std::vector<double> x(theta.values().begin(), theta.values().end());
  x.insert(x.end(), theta_cap.values().begin(), theta_cap.values().end());
  return x;
}

State first_layer_state(double bond_length, const PqcParams& theta,
                        const ModelConfig& cfg) {
  Circuit c = encode0(bond_length, cfg.num_qubits);
  c.append(real_amplitudes(cfg.num_qubits, cfg.depth, theta));
  return c.run();
}

std::vector<double> first_layer_z(double bond_length, const PqcParams& theta,
                                  const ModelConfig& cfg, Evaluator& evaluator) {
  return evaluator.z_expectations(first_layer_state(bond_length, theta, cfg));
}

State second_layer_state(std::span<const double> z, const PqcParams& theta_cap,
                         std::uint64_t reference, const ModelConfig& cfg) {
  if (z.size() != cfg.num_qubits) {
    throw std::invalid_argument("intermediate readout has wrong length");
  }
  std::vector<double> angles(z.begin(), z.end());
  for (auto& a : angles) a *= std::numbers::pi;
  Circuit c = encode(angles);
  c.append(real_amplitudes(cfg.num_qubits, cfg.depth, theta_cap));
  return c.run(basis_state(cfg.num_qubits, reference));
}

State ablation_state(double bond_length, const PqcParams& theta,
                     const PqcParams& theta_cap, std::uint64_t reference,
                     const ModelConfig& cfg) {
  Circuit c = encode0(bond_length, cfg.num_qubits);
  c.append(real_amplitudes(cfg.num_qubits, 2 * cfg.depth,
                           PqcParams(cfg.num_qubits, 2 * cfg.depth,
                                     pack_parameters(theta, theta_cap))));
  return c.run(basis_state(cfg.num_qubits, reference));
}

State branch_state(double bond_length, const PqcParams& theta,
                   const PqcParams& theta_cap, std::uint64_t reference,
                   const ModelConfig& cfg) {
  if (!cfg.classical_layer) {
    return ablation_state(bond_length, theta, theta_cap, reference, cfg);
  }
  const auto z = hqcnn::z_expectations(first_layer_state(bond_length, theta, cfg));
  return second_layer_state(z, theta_cap, reference, cfg);
}

double forward_energy(double bond_length, const PqcParams& theta,
                      const PqcParams& theta_cap, std::uint64_t reference,
                      const PauliSum& h, const ModelConfig& cfg,
                      Evaluator& evaluator) {
  if (!cfg.classical_layer) {
    return evaluator.energy(
        ablation_state(bond_length, theta, theta_cap, reference, cfg), h);
  }
  const auto z = first_layer_z(bond_length, theta, cfg, evaluator);
  return evaluator.energy(second_layer_state(z, theta_cap, reference, cfg), h);
}

std::vector<double> forward_energies(double bond_length, const PqcParams& theta,
                                     const PqcParams& theta_cap,
                                     const PauliSum& h, const ModelConfig& cfg,
                                     Evaluator& evaluator) {
  std::vector<double> out;
  out.reserve(cfg.num_references());
  if (!cfg.classical_layer) {
    for (auto ref : cfg.reference_states) {
      out.push_back(evaluator.energy(
          ablation_state(bond_length, theta, theta_cap, ref, cfg), h));
    }
    return out;
  }
  const auto z = first_layer_z(bond_length, theta, cfg, evaluator);
  for (auto ref : cfg.reference_states) {
    out.push_back(evaluator.energy(second_layer_state(z, theta_cap, ref, cfg), h));
  }
  return out;
}

std::vector<double> branch_means(const PqcParams& theta,
                                 const PqcParams& theta_cap,
                                 std::span<const TrainingPoint> training,
                                 const ModelConfig& cfg) {
  if (training.empty()) throw std::invalid_argument("training set is empty");
  ExactEvaluator exact;
  std::vector<double> means(cfg.num_references(), 0.0);
  for (const auto& pt : training) {
    const auto e = forward_energies(pt.bond_length, theta, theta_cap,
                                    pt.hamiltonian, cfg, exact);
    for (std::size_t j = 0; j < e.size(); ++j) means[j] += e[j];
  }
  for (auto& m : means) m /= static_cast<double>(training.size());
  return means;
}

double cost(const PqcParams& theta, const PqcParams& theta_cap,
            std::span<const TrainingPoint> training, const ModelConfig& cfg) {
  const auto means = branch_means(theta, theta_cap, training, cfg);
  double acc = 0.0;
  for (std::size_t j = 0; j < means.size(); ++j) {
    acc += cfg.weights[j] * means[j];
  }
  return acc;
}

double packed_cost(std::span<const double> packed,
                   std::span<const TrainingPoint> training,
                   const ModelConfig& cfg) {
  const auto [theta, theta_cap] = unpack_parameters(packed, cfg);
  return cost(theta, theta_cap, training, cfg);
}

double infer(double bond_length, const Model& model, std::size_t state_index,
             const PauliSum& h, Evaluator& evaluator) {
  if (state_index >= model.config.num_references()) {
    throw std::out_of_range("state index " + std::to_string(state_index) +
                            " out of range for a model with " +
                            std::to_string(model.config.num_references()) +
                            " reference states");
  }
  return forward_energy(bond_length, model.theta, model.theta_cap,
                        model.config.reference_states[state_index], h,
                        model.config, evaluator);
}

std::vector<double> infer_all(double bond_length, const Model& model,
                              const PauliSum& h, Evaluator& evaluator) {
  return forward_energies(bond_length, model.theta, model.theta_cap, h,
                          model.config, evaluator);
}

}  // namespace hqcnn
