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
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hqcnn/model.hpp"
#include "hqcnn/pauli.hpp"

namespace hqcnn {

inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr int kModelSchemaVersion = 1;

/// Base of every file-format error.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON; `byte_offset` locates the failure in the input.
class ParseError : public FormatError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : FormatError(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed JSON that violates the schema. `entry_index` is set for
/// problems inside a dataset entry.
class SchemaError : public FormatError {
 public:
  SchemaError(const std::string& field, std::optional<std::size_t> entry_index,
              const std::string& detail);
  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> entry_index() const noexcept { return entry_; }

 private:
  std::string field_;
  std::optional<std::size_t> entry_;
};

struct DatasetEntry {
  double bond_length = 0.0;  // angstrom
  PauliSum hamiltonian;
  /// Ground energy reported by the generating electronic-structure code.
  std::optional<double> fci_ground_energy;
};

/// Bond lengths closer than this are treated as the same geometry.
inline constexpr double kBondLengthTolerance = 1e-9;

/**
 * @brief Bond-length-indexed Hamiltonians with provenance.
 *
 * Entries are sorted by strictly increasing bond length and share one
 * qubit count.
 */
class Dataset {
 public:
  int schema_version = kDatasetSchemaVersion;
  std::string molecule;
  std::string basis;
  std::string mapping;
  std::size_t num_qubits = 0;
  /// Electron count of the molecule; selects the sector of reference
  /// energies when set.
  std::optional<std::size_t> num_electrons;
  std::vector<DatasetEntry> entries;
  /// "sha256:<hex>" of serialize_dataset(*this); formatting, term order and
  /// provenance of the source file do not affect it.
  std::string fingerprint;

  /// Entry at bond length b, or nullptr.
  const DatasetEntry* find(double bond_length) const noexcept;
  /// Entry at bond length b; throws std::out_of_range if absent.
  const DatasetEntry& at(double bond_length) const;

  std::vector<double> bond_lengths() const;

  /// Training points for the requested bond lengths, in the given order.
  std::vector<TrainingPoint> points(std::span<const double> bond_lengths) const;
  std::vector<TrainingPoint> all_points() const;
};

Dataset parse_dataset(std::string_view text);
Dataset load_dataset(const std::filesystem::path& path);
std::string serialize_dataset(const Dataset& dataset);

std::string serialize_model(const Model& model);
Model parse_model(std::string_view text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// True when the model was trained against `dataset`.
bool fingerprint_matches(const Model& model, const Dataset& dataset) noexcept;

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace hqcnn
