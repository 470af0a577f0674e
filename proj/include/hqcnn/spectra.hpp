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
#include <utility>
#include <vector>

#include "hqcnn/pauli.hpp"

namespace hqcnn {

/// Eigenvalues of a qubit Hamiltonian, ascending, in hartree.
struct Spectrum {
  std::vector<double> eigenvalues;
  double bond_length = 0.0;  // angstrom, 0 when not tied to a geometry
};

struct Eigensystem {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<Complex>> vectors;  // vectors[k] pairs with values[k]
};

/**
 * Cyclic complex Jacobi diagonalization of a Hermitian matrix. Each
 * rotation first removes the phase of the pivot and then applies a real
 * Givens rotation. Throws std::invalid_argument for non-Hermitian input.
 */
Eigensystem hermitian_eigensystem(const DenseMatrix& m);

/// Full spectrum of h via dense diagonalization.
Spectrum eigenvalues(const PauliSum& h, double bond_length = 0.0);

/// The two lowest eigenvalues of h (equal when degenerate).
std::pair<double, double> reference_energies(const PauliSum& h);

/**
 * Spectrum of h restricted to basis states with exactly `particles` set
 * bits, i.e. the fixed electron-number block under Jordan-Wigner. Throws
 * std::invalid_argument if h couples that block to the rest of the space.
 */
Spectrum sector_eigenvalues(const PauliSum& h, std::size_t particles,
                            double bond_length = 0.0);

/// The two lowest eigenvalues inside the `particles`-electron block.
std::pair<double, double> reference_energies(const PauliSum& h,
                                             std::size_t particles);

}  // namespace hqcnn
