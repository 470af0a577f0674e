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
#include <string>
#include <string_view>
#include <vector>

#include "hqcnn/statevector.hpp"

namespace hqcnn {

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Coefficients below this magnitude are dropped when a PauliSum is built.
inline constexpr double kCoefficientCutoff = 1e-14;

/// Largest qubit count for which dense_matrix will allocate.
inline constexpr std::size_t kMaxDenseQubits = 12;

/**
 * @brief Tensor product of single-qubit Paulis.
 *
 * Text form is one label per qubit with position i addressing qubit i, so
 * "ZIII" is Z on qubit 0.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> ops);

  /// Identity on n qubits.
  static PauliString identity(std::size_t num_qubits);

  /// Parses `text`, which must hold exactly `num_qubits` labels from IXYZ.
  static PauliString parse(std::string_view text, std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return ops_.size(); }
  Pauli operator[](std::size_t q) const { return ops_.at(q); }
  const std::vector<Pauli>& ops() const noexcept { return ops_; }

  bool is_identity() const noexcept;

  /// Bit q set where the operator on qubit q flips the basis bit (X or Y).
  std::uint64_t x_mask() const noexcept;
  /// Bit q set where the operator on qubit q carries a phase (Z or Y).
  std::uint64_t z_mask() const noexcept;
  std::size_t y_count() const noexcept;

  std::string to_string() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/**
 * @brief Real linear combination of Pauli strings on a fixed register.
 *
 * Construction canonicalizes: duplicate strings are merged and terms with
 * |coefficient| < kCoefficientCutoff are dropped. Terms are kept sorted by
 * string. An empty term list is the zero operator.
 */
class PauliSum {
 public:
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  /// Convenience for literals: {{1.0, "ZI"}, {0.5, "XX"}}.
  static PauliSum from_labels(
      std::size_t num_qubits,
      const std::vector<std::pair<double, std::string>>& terms);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

  /// Coefficient of the all-identity string (0 when absent).
  double identity_coefficient() const noexcept;

  friend PauliSum operator+(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator*(double alpha, const PauliSum& h);

 private:
  std::size_t num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Row-major dense complex matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  Complex& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data[r * dim + c];
  }
};

/// In place: amplitudes <- P amplitudes.
void apply_pauli(const PauliString& p, std::span<Complex> amplitudes);

/// <s|P|s>, real for Hermitian P.
double pauli_expectation(const PauliString& p, const State& s);

/**
 * Dense 2^n x 2^n realization sum_P h_P (P_{n-1} (x) ... (x) P_0), i.e.
 * entry (r, c) is <r|H|c> in the little-endian basis.
 */
DenseMatrix dense_matrix(const PauliSum& h,
                         std::size_t max_qubits = kMaxDenseQubits);

/// sum_P h_P <s|P|s>, evaluated term by term without forming the matrix.
double expectation(const PauliSum& h, const State& s);

}  // namespace hqcnn
