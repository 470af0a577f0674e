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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqcnn {

namespace {

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) {
    throw std::out_of_range("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n) +
                            "-qubit state");
  }
}

// Visits each pair (k0, k1) of basis indices differing only in bit q, k0
// having the bit clear.
template <typename F>
void for_each_pair(std::size_t dim, std::size_t q, F&& f) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      f(base + off, base + off + stride);
    }
  }
}

}  // namespace

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == GateKind::RotationY) g.angle = -angle;
  // S is not a native gate.
  if (kind == GateKind::SAdjoint) {
    throw std::logic_error("SAdjoint has no inverse in the native gate set");
  }
  return g;
}

State::State(std::size_t num_qubits) : State(basis_state(num_qubits, 0)) {}

State::State(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

State State::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  if (n > kMaxStateQubits) {
    throw std::invalid_argument("state exceeds " +
                                std::to_string(kMaxStateQubits) + " qubits");
  }
  return State(n, std::move(amplitudes));
}

double State::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

std::vector<double> State::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(amplitudes_[k]);
  return p;
}

void State::apply(const Gate& g) {
  check_qubit(g.target, num_qubits_);
  const std::size_t dim = amplitudes_.size();
  auto& a = amplitudes_;
  switch (g.kind) {
    case GateKind::Hadamard: {
      const double r = std::numbers::sqrt2 / 2.0;
      for_each_pair(dim, g.target, [&](std::size_t k0, std::size_t k1) {
        const Complex x = a[k0];
        const Complex y = a[k1];
        a[k0] = r * (x + y);
        a[k1] = r * (x - y);
      });
      break;
    }
    case GateKind::RotationY: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      for_each_pair(dim, g.target, [&](std::size_t k0, std::size_t k1) {
        const Complex x = a[k0];
        const Complex y = a[k1];
        a[k0] = c * x - s * y;
        a[k1] = s * x + c * y;
      });
      break;
    }
    case GateKind::ControlledX: {
      check_qubit(g.control, num_qubits_);
      if (g.control == g.target) {
        throw std::invalid_argument("ControlledX control equals target");
      }
      const std::size_t cmask = std::size_t{1} << g.control;
      for_each_pair(dim, g.target, [&](std::size_t k0, std::size_t k1) {
        if (k0 & cmask) std::swap(a[k0], a[k1]);
      });
      break;
    }
    case GateKind::SAdjoint: {
      const Complex minus_i{0.0, -1.0};
      for_each_pair(dim, g.target,
                    [&](std::size_t, std::size_t k1) { a[k1] *= minus_i; });
      break;
    }
  }
}

State basis_state(std::size_t num_qubits, std::uint64_t index) {
  if (num_qubits > kMaxStateQubits) {
    throw std::invalid_argument("state exceeds " +
                                std::to_string(kMaxStateQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) +
                            " out of range for " + std::to_string(num_qubits) +
                            " qubits");
  }
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[index] = 1.0;
  return State::from_amplitudes(std::move(amps));
}

State apply(State s, const Gate& g) {
  s.apply(g);
  return s;
}

double z_expectation(const State& s, std::size_t qubit) {
  check_qubit(qubit, s.num_qubits());
  double acc = 0.0;
  const auto amps = s.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double p = std::norm(amps[k]);
    acc += ((k >> qubit) & 1U) ? -p : p;
  }
  // Rounding can push a saturated value just past +-1.
  return std::clamp(acc, -1.0, 1.0);
}

std::vector<double> z_expectations(const State& s) {
  std::vector<double> z(s.num_qubits(), 0.0);
  const auto amps = s.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double p = std::norm(amps[k]);
    for (std::size_t q = 0; q < z.size(); ++q) {
      z[q] += ((k >> q) & 1U) ? -p : p;
    }
  }
  for (auto& v : z) v = std::clamp(v, -1.0, 1.0);
  return z;
}

Complex inner_product(const State& a, const State& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("inner product of states of unequal size");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    acc += std::conj(a[k]) * b[k];
  }
  return acc;
}

void require_normalized(const State& s) {
  const double dev = std::abs(s.norm_squared() - 1.0);
  if (dev > kNormTolerance) {
    throw std::invalid_argument("state is not normalized (|norm^2 - 1| = " +
                                std::to_string(dev) + ")");
  }
}

}  // namespace hqcnn
