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
#include <span>
#include <vector>

#include "hqcnn/statevector.hpp"

namespace hqcnn {

/// Ordered gate list on a fixed register.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  /// Appends g after validating its qubit indices.
  Circuit& add(const Gate& g);
  /// Appends every gate of `other` (same register).
  Circuit& append(const Circuit& other);

  /// Runs the circuit on `s` in place.
  void apply_to(State& s) const;
  /// Runs the circuit on |0...0>.
  State run() const;
  /// Runs the circuit on a copy of `input`.
  State run(State input) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

/**
 * @brief Rotation angles of a RealAmplitudes block stack.
 *
 * Block d (0-based) owns values[d * n, (d + 1) * n), one angle per qubit.
 */
class PqcParams {
 public:
  PqcParams(std::size_t num_qubits, std::size_t depth, std::vector<double> values);

  static PqcParams zeros(std::size_t num_qubits, std::size_t depth);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t depth() const noexcept { return depth_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_.at(i); }

  friend bool operator==(const PqcParams&, const PqcParams&) = default;

 private:
  std::size_t num_qubits_;
  std::size_t depth_;
  std::vector<double> values_;
};

/// First encode layer: H then Ry(b) on every qubit.
Circuit encode0(double bond_length, std::size_t num_qubits);

/// General encode layer: H then Ry(angles[i]) on qubit i.
Circuit encode(std::span<const double> angles);

/// CX pairs of one entangling layer, in application order.
std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs(
    std::size_t num_qubits);

/**
 * RealAmplitudes ansatz: `depth` blocks, each the CX entangling layer
 * followed by Ry(params[i + n d]) on every qubit i. No trailing rotation
 * layer.
 */
Circuit real_amplitudes(std::size_t num_qubits, std::size_t depth,
                        const PqcParams& params);

}  // namespace hqcnn
