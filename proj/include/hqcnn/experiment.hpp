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

// Glue shared by the command-line tool and the acceptance suite: exact
// reference levels, PES evaluation over a grid and noise-sweep setup.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hqcnn/model.hpp"
#include "hqcnn/persistence.hpp"
#include "hqcnn/sampler.hpp"

namespace hqcnn {

/// Chemical accuracy, 1 kcal/mol in hartree.
inline constexpr double kChemicalAccuracy = 0.001593;

/// Training bond lengths (angstrom) of the reference H2 experiments.
inline constexpr std::array<double, 6> kDefaultTrainingBonds{0.45, 0.85, 1.25,
                                                             1.65, 2.05, 2.45};

struct ReferenceLevels {
  /// Two lowest levels within the molecule's electron-number sector (the
  /// full spectrum when the electron count is unknown).
  double e0 = 0.0;
  double e1 = 0.0;
  /// Two lowest levels of the full 2^n spectrum.
  double full_e0 = 0.0;
  double full_e1 = 0.0;

  /// True when the full-spectrum first excited level lies outside the sector.
  bool sector_differs(double tol = 1e-9) const;
};

ReferenceLevels reference_levels(const PauliSum& h,
                                 std::optional<std::size_t> electrons);

/// Indices of branches with a positive weight (the ones the cost trains).
std::vector<std::size_t> trained_branches(const Model& model);

struct PesRow {
  double bond_length = 0.0;
  std::vector<double> energies;    // per model branch
  std::vector<double> reference;   // per model branch (e0, e1, then NaN)
  std::vector<double> abs_errors;  // per model branch
  ReferenceLevels levels;
};

/// Exact inference on every bond length of `grid` (all entries when empty).
std::vector<PesRow> evaluate_pes(const Model& model, const Dataset& dataset,
                                 std::span<const double> grid = {});

/// Max |E_j - reference_j| over rows, per branch.
std::vector<double> max_abs_errors(std::span<const PesRow> rows);

/// Noise-sweep inputs for `grid` (all entries when empty).
std::vector<SweepPoint> sweep_points(const Model& model, const Dataset& dataset,
                                     std::span<const double> grid = {});

}  // namespace hqcnn
