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

#include <cmath>
#include <stdexcept>
#include <string>

namespace hqcnn {

Circuit& Circuit::add(const Gate& g) {
  if (g.target >= num_qubits_ ||
      (g.kind == GateKind::ControlledX && g.control >= num_qubits_)) {
    throw std::out_of_range("gate addresses a qubit outside the " +
                            std::to_string(num_qubits_) + "-qubit register");
  }
  if (g.kind == GateKind::ControlledX && g.control == g.target) {
    throw std::invalid_argument("ControlledX control equals target");
  }
  gates_.push_back(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("appending a circuit on a different register");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

void Circuit::apply_to(State& s) const {
  if (s.num_qubits() != num_qubits_) {
    throw std::invalid_argument("circuit and state register sizes differ");
  }
  for (const auto& g : gates_) s.apply(g);
}

State Circuit::run() const { return run(State(num_qubits_)); }

State Circuit::run(State input) const {
  apply_to(input);
  return input;
}

PqcParams::PqcParams(std::size_t num_qubits, std::size_t depth,
                     std::vector<double> values)
    : num_qubits_(num_qubits), depth_(depth), values_(std::move(values)) {
  if (depth_ < 1) throw std::invalid_argument("PQC depth must be at least 1");
  if (values_.size() != num_qubits_ * depth_) {
    throw std::invalid_argument(
        "PQC expects " + std::to_string(num_qubits_ * depth_) +
        " parameters (n * D), got " + std::to_string(values_.size()));
  }
}

PqcParams PqcParams::zeros(std::size_t num_qubits, std::size_t depth) {
  return PqcParams(num_qubits, depth,
                   std::vector<double>(num_qubits * depth, 0.0));
}

Circuit encode0(double bond_length, std::size_t num_qubits) {
  if (!std::isfinite(bond_length)) {
    throw std::invalid_argument("encode angle must be finite");
  }
  if (num_qubits < 1) throw std::invalid_argument("encode needs a qubit");
  const std::vector<double> angles(num_qubits, bond_length);
  return encode(angles);
}

Circuit encode(std::span<const double> angles) {
  if (angles.empty()) throw std::invalid_argument("encode needs a qubit");
  Circuit c(angles.size());
  for (std::size_t q = 0; q < angles.size(); ++q) {
    if (!std::isfinite(angles[q])) {
      throw std::invalid_argument("encode angle must be finite");
    }
    c.add(Gate::h(q));
    c.add(Gate::ry(q, angles[q]));
  }
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> entangler_pairs(
    std::size_t num_qubits) {
  // Even-control pairs first, then odd-control pairs. This reproduces both
  // the even-n and odd-n wirings.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t c = 0; c + 1 < num_qubits; c += 2) pairs.emplace_back(c, c + 1);
  for (std::size_t c = 1; c + 1 < num_qubits; c += 2) pairs.emplace_back(c, c + 1);
  return pairs;
}

Circuit real_amplitudes(std::size_t num_qubits, std::size_t depth,
                        const PqcParams& params) {
  if (num_qubits < 2) {
    throw std::invalid_argument("RealAmplitudes needs at least 2 qubits");
  }
  if (depth < 1) throw std::invalid_argument("PQC depth must be at least 1");
  if (params.size() != num_qubits * depth) {
    throw std::invalid_argument(
        "PQC expects " + std::to_string(num_qubits * depth) +
        " parameters (n * D), got " + std::to_string(params.size()));
  }
  const auto pairs = entangler_pairs(num_qubits);
  Circuit c(num_qubits);
  for (std::size_t d = 0; d < depth; ++d) {
    for (const auto& [ctrl, tgt] : pairs) c.add(Gate::cx(ctrl, tgt));
    for (std::size_t q = 0; q < num_qubits; ++q) {
      c.add(Gate::ry(q, params[q + num_qubits * d]));
    }
  }
  return c;
}

}  // namespace hqcnn
