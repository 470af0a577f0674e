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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hqcnn {

using Complex = std::complex<double>;

/// Largest register the simulator will allocate.
inline constexpr std::size_t kMaxStateQubits = 20;

/// Tolerance on the squared norm of a state fed to observables.
inline constexpr double kNormTolerance = 1e-8;

enum class GateKind : std::uint8_t { Hadamard, RotationY, ControlledX, SAdjoint };

/**
 * @brief A single gate of the simulator's native set.
 *
 * `target` is the acted-on qubit; `control` is only meaningful for
 * ControlledX and `angle` only for RotationY (radians).
 */
struct Gate {
  GateKind kind = GateKind::Hadamard;
  std::size_t target = 0;
  std::size_t control = 0;
  double angle = 0.0;

  static Gate h(std::size_t q) { return {GateKind::Hadamard, q, 0, 0.0}; }
  static Gate ry(std::size_t q, double theta) {
    return {GateKind::RotationY, q, 0, theta};
  }
  static Gate cx(std::size_t control, std::size_t target) {
    return {GateKind::ControlledX, target, control, 0.0};
  }
  static Gate sdg(std::size_t q) { return {GateKind::SAdjoint, q, 0, 0.0}; }

  /// Gate g' with g' g = identity.
  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/**
 * @brief Pure state of n qubits stored as 2^n amplitudes.
 *
 * Basis index k encodes qubit i in bit i (little-endian): |0001> is index 1
 * with qubit 0 excited.
 */
class State {
 public:
  /// |0...0> on n qubits.
  explicit State(std::size_t num_qubits);

  /// Takes ownership of raw amplitudes; size must be a power of two.
  static State from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

  double norm_squared() const noexcept;

  /// Applies g in place. Throws std::out_of_range on bad qubit indices.
  void apply(const Gate& g);

  /// Outcome probabilities |a_k|^2.
  std::vector<double> probabilities() const;

 private:
  State(std::size_t num_qubits, std::vector<Complex> amplitudes);

  std::size_t num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Computational basis state |index> on n qubits.
State basis_state(std::size_t num_qubits, std::uint64_t index);

/// Returns a copy of s with g applied.
State apply(State s, const Gate& g);

/// <Z_qubit> = sum_k (-1)^{bit(k, qubit)} |a_k|^2.
double z_expectation(const State& s, std::size_t qubit);

/// <Z_i> for every qubit in one pass over the amplitudes.
std::vector<double> z_expectations(const State& s);

/// <a|b>.
Complex inner_product(const State& a, const State& b);

/// Throws std::invalid_argument if |s|^2 deviates from 1 by more than
/// kNormTolerance.
void require_normalized(const State& s);

}  // namespace hqcnn
