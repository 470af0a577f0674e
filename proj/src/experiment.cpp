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

#include "hqcnn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hqcnn/spectra.hpp"

namespace hqcnn {

namespace {

std::vector<double> resolve_grid(const Dataset& dataset, std::span<const double> grid) {
  if (grid.empty()) return dataset.bond_lengths();
  return {grid.begin(), grid.end()};
}

std::vector<double> branch_references(const ReferenceLevels& lv, std::size_t branches) {
  std::vector<double> ref(branches, std::numeric_limits<double>::quiet_NaN());
  if (branches > 0) ref[0] = lv.e0;
  if (branches > 1) ref[1] = lv.e1;
  return ref;
}

}  // namespace

bool ReferenceLevels::sector_differs(double tol) const {
  return std::abs(e1 - full_e1) > tol;
}

ReferenceLevels reference_levels(const PauliSum& h,
                                 std::optional<std::size_t> electrons) {
  ReferenceLevels lv;
  std::tie(lv.full_e0, lv.full_e1) = reference_energies(h);
  if (electrons) {
    std::tie(lv.e0, lv.e1) = reference_energies(h, *electrons);
  } else {
    lv.e0 = lv.full_e0;
    lv.e1 = lv.full_e1;
  }
  return lv;
}

std::vector<std::size_t> trained_branches(const Model& model) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < model.config.weights.size(); ++j) {
    if (model.config.weights[j] > 0.0) out.push_back(j);
  }
  return out;
}

std::vector<PesRow> evaluate_pes(const Model& model, const Dataset& dataset,
                                 std::span<const double> grid) {
  const auto bonds = resolve_grid(dataset, grid);
  const std::size_t branches = model.config.num_references();
  std::vector<PesRow> rows;
  rows.reserve(bonds.size());
  ExactEvaluator exact;
  for (double b : bonds) {
    const auto& entry = dataset.at(b);
    PesRow row;
    row.bond_length = entry.bond_length;
    row.levels = reference_levels(entry.hamiltonian, dataset.num_electrons);
    row.energies = infer_all(entry.bond_length, model, entry.hamiltonian, exact);
    row.reference = branch_references(row.levels, branches);
    row.abs_errors.resize(branches);
    for (std::size_t j = 0; j < branches; ++j) {
      row.abs_errors[j] = std::abs(row.energies[j] - row.reference[j]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> max_abs_errors(std::span<const PesRow> rows) {
  std::vector<double> out;
  for (const auto& r : rows) {
    out.resize(std::max(out.size(), r.abs_errors.size()), 0.0);
    for (std::size_t j = 0; j < r.abs_errors.size(); ++j) {
      out[j] = std::max(out[j], r.abs_errors[j]);
    }
  }
  return out;
}

std::vector<SweepPoint> sweep_points(const Model& model, const Dataset& dataset,
                                     std::span<const double> grid) {
  const auto bonds = resolve_grid(dataset, grid);
  std::vector<SweepPoint> pts;
  pts.reserve(bonds.size());
  for (double b : bonds) {
    const auto& entry = dataset.at(b);
    const auto lv = reference_levels(entry.hamiltonian, dataset.num_electrons);
    pts.push_back({entry.bond_length, entry.hamiltonian,
                   branch_references(lv, model.config.num_references())});
  }
  return pts;
}

}  // namespace hqcnn
