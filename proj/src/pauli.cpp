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

#include "hqcnn/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hqcnn {

namespace {

Pauli parse_label(char c, std::size_t pos) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("invalid Pauli label '") + c +
                                  "' at position " + std::to_string(pos));
  }
}

// i^k for k mod 4.
Complex i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {
  if (ops_.size() > 64) {
    throw std::invalid_argument("Pauli strings are limited to 64 qubits");
  }
}

PauliString PauliString::identity(std::size_t num_qubits) {
  return PauliString(std::vector<Pauli>(num_qubits, Pauli::I));
}

PauliString PauliString::parse(std::string_view text, std::size_t num_qubits) {
  if (text.size() != num_qubits) {
    throw std::invalid_argument("Pauli string \"" + std::string(text) +
                                "\" has length " + std::to_string(text.size()) +
                                ", expected " + std::to_string(num_qubits));
  }
  std::vector<Pauli> ops;
  ops.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    ops.push_back(parse_label(text[i], i));
  }
  return PauliString(std::move(ops));
}

bool PauliString::is_identity() const noexcept {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::uint64_t PauliString::x_mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

std::uint64_t PauliString::z_mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::Z || ops_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

std::size_t PauliString::y_count() const noexcept {
  return static_cast<std::size_t>(
      std::count(ops_.begin(), ops_.end(), Pauli::Y));
}

std::string PauliString::to_string() const {
  static constexpr char kLabels[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  s.reserve(ops_.size());
  for (Pauli p : ops_) s.push_back(kLabels[static_cast<int>(p)]);
  return s;
}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  for (const auto& t : terms) {
    if (t.string.num_qubits() != num_qubits) {
      throw std::invalid_argument(
          "term " + t.string.to_string() + " does not act on " +
          std::to_string(num_qubits) + " qubits");
    }
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("non-finite coefficient on term " +
                                  t.string.to_string());
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PauliTerm& a, const PauliTerm& b) {
                     return a.string < b.string;
                   });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().string == t.string) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const PauliTerm& t) {
    return std::abs(t.coefficient) < kCoefficientCutoff;
  });
}

PauliSum PauliSum::from_labels(
    std::size_t num_qubits,
    const std::vector<std::pair<double, std::string>>& terms) {
  std::vector<PauliTerm> out;
  out.reserve(terms.size());
  for (const auto& [c, label] : terms) {
    out.push_back({c, PauliString::parse(label, num_qubits)});
  }
  return PauliSum(num_qubits, std::move(out));
}

double PauliSum::identity_coefficient() const noexcept {
  for (const auto& t : terms_) {
    if (t.string.is_identity()) return t.coefficient;
  }
  return 0.0;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits_ != b.num_qubits_) {
    throw std::invalid_argument("adding Pauli sums on different registers");
  }
  std::vector<PauliTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return PauliSum(a.num_qubits_, std::move(terms));
}

PauliSum operator*(double alpha, const PauliSum& h) {
  std::vector<PauliTerm> terms = h.terms_;
  for (auto& t : terms) t.coefficient *= alpha;
  return PauliSum(h.num_qubits_, std::move(terms));
}

void apply_pauli(const PauliString& p, std::span<Complex> amplitudes) {
  if (amplitudes.size() != (std::size_t{1} << p.num_qubits())) {
    throw std::invalid_argument("Pauli string and state dimension mismatch");
  }
  // P|k> = i^{#Y} (-1)^{popcount(k & zmask)} |k ^ xmask>
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  const Complex phase = i_power(p.y_count());
  std::vector<Complex> out(amplitudes.size());
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    const double sign = (std::popcount(k & zm) & 1) ? -1.0 : 1.0;
    out[k ^ xm] = phase * sign * amplitudes[k];
  }
  std::copy(out.begin(), out.end(), amplitudes.begin());
}

double pauli_expectation(const PauliString& p, const State& s) {
  if (s.num_qubits() != p.num_qubits()) {
    throw std::invalid_argument("Pauli string and state dimension mismatch");
  }
  std::vector<Complex> copy(s.amplitudes().begin(), s.amplitudes().end());
  apply_pauli(p, copy);
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < copy.size(); ++k) {
    acc += std::conj(s[k]) * copy[k];
  }
  return acc.real();
}

DenseMatrix dense_matrix(const PauliSum& h, std::size_t max_qubits) {
  const std::size_t n = h.num_qubits();
  if (n > max_qubits) {
    throw std::invalid_argument("dense matrix of " + std::to_string(n) +
                                " qubits exceeds the limit of " +
                                std::to_string(max_qubits));
  }
  DenseMatrix m;
  m.dim = std::size_t{1} << n;
  m.data.assign(m.dim * m.dim, Complex{0.0, 0.0});
  for (const auto& t : h.terms()) {
    const std::uint64_t xm = t.string.x_mask();
    const std::uint64_t zm = t.string.z_mask();
    const Complex phase = t.coefficient * i_power(t.string.y_count());
    for (std::size_t c = 0; c < m.dim; ++c) {
      const double sign = (std::popcount(c & zm) & 1) ? -1.0 : 1.0;
      m(c ^ xm, c) += sign * phase;
    }
  }
  return m;
}

double expectation(const PauliSum& h, const State& s) {
  if (s.num_qubits() != h.num_qubits()) {
    throw std::invalid_argument(
        "Hamiltonian acts on " + std::to_string(h.num_qubits()) +
        " qubits but the state has " + std::to_string(s.num_qubits()));
  }
  require_normalized(s);
  double acc = 0.0;
  for (const auto& t : h.terms()) {
    acc += t.coefficient * pauli_expectation(t.string, s);
  }
  return acc;
}

}  // namespace hqcnn
