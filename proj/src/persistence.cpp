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

#include "hqcnn/persistence.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace hqcnn {

using nlohmann::json;

namespace {

std::string where(std::optional<std::size_t> entry) {
  return entry ? " (entry " + std::to_string(*entry) + ")" : "";
}

const json& require(const json& obj, const std::string& key,
                    std::optional<std::size_t> entry = std::nullopt) {
  if (!obj.is_object()) throw SchemaError(key, entry, "parent is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(key, entry, "missing field");
  return *it;
}

std::string get_string(const json& obj, const std::string& key,
                       std::optional<std::size_t> entry = std::nullopt) {
  const json& v = require(obj, key, entry);
  if (!v.is_string()) throw SchemaError(key, entry, "expected a string");
  return v.get<std::string>();
}

double to_double(const json& v, const std::string& key,
                 std::optional<std::size_t> entry) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw SchemaError(key, entry, "expected a number");
  return v.get<double>();
}

double get_finite(const json& obj, const std::string& key,
                  std::optional<std::size_t> entry = std::nullopt) {
  const json& v = require(obj, key, entry);
  if (!v.is_number()) throw SchemaError(key, entry, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(key, entry, "expected a finite number");
  return d;
}

std::uint64_t get_uint(const json& obj, const std::string& key,
                       std::optional<std::size_t> entry = std::nullopt) {
  const json& v = require(obj, key, entry);
  if (!v.is_number_unsigned()) {
    throw SchemaError(key, entry, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& key) {
  const json& v = require(obj, key);
  if (!v.is_boolean()) throw SchemaError(key, std::nullopt, "expected a boolean");
  return v.get<bool>();
}

const json& get_array(const json& obj, const std::string& key,
                      std::optional<std::size_t> entry = std::nullopt) {
  const json& v = require(obj, key, entry);
  if (!v.is_array()) throw SchemaError(key, entry, "expected an array");
  return v;
}

std::vector<double> get_reals(const json& obj, const std::string& key,
                              bool allow_nan = false) {
  std::vector<double> out;
  for (const auto& v : get_array(obj, key)) {
    const double d = to_double(v, key, std::nullopt);
    if (!allow_nan && !std::isfinite(d)) {
      throw SchemaError(key, std::nullopt, "expected finite numbers");
    }
    out.push_back(d);
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  } catch (const json::out_of_range& e) {
    // Number overflow; the message quotes the literal, so locate it.
    const std::string what = e.what();
    const auto open = what.find('\'');
    const auto close = what.rfind('\'');
    std::size_t offset = 0;
    if (open != std::string::npos && close > open) {
      const auto at = text.find(what.substr(open + 1, close - open - 1));
      if (at != std::string_view::npos) offset = at;
    }
    throw ParseError("number out of range at byte " + std::to_string(offset) + ": " + what,
                     offset);
  }
}

void check_schema_version(const json& doc, int supported) {
  const std::uint64_t v = get_uint(doc, "schema_version");
  if (v != static_cast<std::uint64_t>(supported)) {
    throw SchemaError("schema_version", std::nullopt,
                      "unsupported version " + std::to_string(v));
  }
}

json reals_to_json(std::span<const double> values) {
  json arr = json::array();
  for (double v : values) {
    if (std::isfinite(v)) {
      arr.push_back(v);
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

SchemaError::SchemaError(const std::string& field,
                         std::optional<std::size_t> entry_index,
                         const std::string& detail)
    : FormatError("schema violation in field '" + field + "'" +
                  where(entry_index) + ": " + detail),
      field_(field),
      entry_(entry_index) {}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const DatasetEntry* Dataset::find(double bond_length) const noexcept {
  for (const auto& e : entries) {
    if (std::abs(e.bond_length - bond_length) <= kBondLengthTolerance) return &e;
  }
  return nullptr;
}

const DatasetEntry& Dataset::at(double bond_length) const {
  if (const auto* e = find(bond_length)) return *e;
  std::ostringstream msg;
  msg.precision(17);
  msg << "bond length " << bond_length << " is not in the dataset";
  throw std::out_of_range(msg.str());
}

std::vector<double> Dataset::bond_lengths() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.bond_length);
  return out;
}

std::vector<TrainingPoint> Dataset::points(std::span<const double> bond_lengths) const {
  std::vector<TrainingPoint> out;
  out.reserve(bond_lengths.size());
  for (double b : bond_lengths) {
    const auto& e = at(b);
    out.push_back({e.bond_length, e.hamiltonian});
  }
  return out;
}

std::vector<TrainingPoint> Dataset::all_points() const {
  return points(bond_lengths());
}

Dataset parse_dataset(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("<root>", std::nullopt, "expected an object");
  check_schema_version(doc, kDatasetSchemaVersion);

  Dataset ds;
  ds.molecule = get_string(doc, "molecule");
  ds.basis = get_string(doc, "basis");
  ds.mapping = get_string(doc, "mapping");
  std::optional<std::size_t> declared_qubits;
  if (doc.contains("num_qubits")) declared_qubits = get_uint(doc, "num_qubits");
  if (doc.contains("num_electrons")) ds.num_electrons = get_uint(doc, "num_electrons");

  const json& entries = get_array(doc, "entries");
  if (entries.empty()) throw SchemaError("entries", std::nullopt, "no entries");

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& e = entries[i];
    if (!e.is_object()) throw SchemaError("entries", i, "expected an object");
    const double b = get_finite(e, "bond_length_angstrom", i);
    if (!(b > 0.0)) throw SchemaError("bond_length_angstrom", i, "must be positive");
    const json& terms = get_array(e, "terms", i);
    if (terms.empty()) throw SchemaError("terms", i, "no terms");

    std::vector<PauliTerm> parsed;
    parsed.reserve(terms.size());
    std::size_t n = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string label = get_string(terms[t], "pauli", i);
      const double coeff = get_finite(terms[t], "coeff", i);
      if (t == 0) n = label.size();
      const std::size_t expected = declared_qubits.value_or(
          ds.entries.empty() ? n : ds.num_qubits);
      try {
        parsed.push_back({coeff, PauliString::parse(label, expected)});
      } catch (const std::invalid_argument& err) {
        throw SchemaError("pauli", i, err.what());
      }
    }
    if (ds.entries.empty()) ds.num_qubits = declared_qubits.value_or(n);
    if (ds.num_qubits == 0 || ds.num_qubits > kMaxStateQubits) {
      throw SchemaError("pauli", i, "unsupported qubit count");
    }
    if (ds.num_electrons && *ds.num_electrons > ds.num_qubits) {
      throw SchemaError("num_electrons", std::nullopt, "exceeds the qubit count");
    }

    if (!ds.entries.empty()) {
      const double prev = ds.entries.back().bond_length;
      if (std::abs(b - prev) <= kBondLengthTolerance) {
        throw SchemaError("bond_length_angstrom", i, "duplicate bond length");
      }
      if (b < prev) {
        throw SchemaError("bond_length_angstrom", i,
                          "bond lengths must be strictly increasing");
      }
    }

    DatasetEntry entry{b, PauliSum(ds.num_qubits, std::move(parsed)), std::nullopt};
    if (e.contains("fci_ground_energy")) {
      entry.fci_ground_energy = get_finite(e, "fci_ground_energy", i);
    }
    ds.entries.push_back(std::move(entry));
  }
  ds.fingerprint = "sha256:" + sha256_hex(serialize_dataset(ds));
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_file(path));
}

std::string serialize_dataset(const Dataset& ds) {
  json doc;
  doc["schema_version"] = ds.schema_version;
  doc["molecule"] = ds.molecule;
  doc["basis"] = ds.basis;
  doc["mapping"] = ds.mapping;
  doc["num_qubits"] = ds.num_qubits;
  if (ds.num_electrons) doc["num_electrons"] = *ds.num_electrons;
  json entries = json::array();
  for (const auto& e : ds.entries) {
    json je;
    je["bond_length_angstrom"] = e.bond_length;
    json terms = json::array();
    for (const auto& t : e.hamiltonian.terms()) {
      terms.push_back({{"pauli", t.string.to_string()}, {"coeff", t.coefficient}});
    }
    je["terms"] = std::move(terms);
    if (e.fci_ground_energy) je["fci_ground_energy"] = *e.fci_ground_energy;
    entries.push_back(std::move(je));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

std::string serialize_model(const Model& model) {
  model.validate();
  const auto& c = model.config;
  const auto& t = model.training;
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["kind"] = "hqcnn-model";
  doc["config"] = {
      {"num_qubits", c.num_qubits},
      {"depth", c.depth},
      {"weights", reals_to_json(c.weights)},
      {"reference_states", c.reference_states},
      {"classical_layer", c.classical_layer},
      {"seed", c.seed},
  };
  doc["theta"] = reals_to_json(model.theta.values());
  doc["theta_cap"] = reals_to_json(model.theta_cap.values());
  doc["training"] = {
      {"cost_trace", reals_to_json(t.cost_trace)},
      {"iterations", t.iterations},
      {"final_cost", t.final_cost},
      {"final_gradient_norm", t.final_gradient_norm},
      {"restart_index", t.restart_index},
      {"converged", t.converged},
      {"restart_costs", reals_to_json(t.restart_costs)},
  };
  doc["dataset_fingerprint"] = model.dataset_fingerprint;
  return doc.dump(1) + "\n";
}

Model parse_model(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("<root>", std::nullopt, "expected an object");
  check_schema_version(doc, kModelSchemaVersion);
  if (get_string(doc, "kind") != "hqcnn-model") {
    throw SchemaError("kind", std::nullopt, "not an hqcnn model file");
  }

  const json& jc = require(doc, "config");
  ModelConfig cfg;
  cfg.num_qubits = get_uint(jc, "num_qubits");
  cfg.depth = get_uint(jc, "depth");
  cfg.weights = get_reals(jc, "weights");
  cfg.reference_states.clear();
  for (const auto& v : get_array(jc, "reference_states")) {
    if (!v.is_number_unsigned()) {
      throw SchemaError("reference_states", std::nullopt,
                        "expected non-negative integers");
    }
    cfg.reference_states.push_back(v.get<std::uint64_t>());
  }
  cfg.classical_layer = get_bool(jc, "classical_layer");
  cfg.seed = get_uint(jc, "seed");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError("config", std::nullopt, e.what());
  }
  if (cfg.num_qubits > kMaxStateQubits || cfg.depth > 10000) {
    throw SchemaError("config", std::nullopt, "model is too large");
  }

  auto params = [&](const std::string& key) {
    auto values = get_reals(doc, key);
    if (values.size() != cfg.layer_size()) {
      throw SchemaError(key, std::nullopt,
                        "expected " + std::to_string(cfg.layer_size()) +
                            " values (n * D), got " + std::to_string(values.size()));
    }
    return PqcParams(cfg.num_qubits, cfg.depth, std::move(values));
  };
  Model model{cfg, params("theta"), params("theta_cap"), {}, {}};

  const json& jt = require(doc, "training");
  model.training.cost_trace = get_reals(jt, "cost_trace", true);
  model.training.iterations = get_uint(jt, "iterations");
  model.training.final_cost = to_double(require(jt, "final_cost"), "final_cost", std::nullopt);
  model.training.final_gradient_norm = to_double(
      require(jt, "final_gradient_norm"), "final_gradient_norm", std::nullopt);
  model.training.restart_index = get_uint(jt, "restart_index");
  model.training.converged = get_bool(jt, "converged");
  model.training.restart_costs = get_reals(jt, "restart_costs", true);
  model.dataset_fingerprint = get_string(doc, "dataset_fingerprint");
  return model;
}

void save_model(const Model& model, const std::filesystem::path& path) {
  write_file(path, serialize_model(model));
}

Model load_model(const std::filesystem::path& path) {
  return parse_model(read_file(path));
}

bool fingerprint_matches(const Model& model, const Dataset& dataset) noexcept {
  return model.dataset_fingerprint == dataset.fingerprint;
}

}  // namespace hqcnn
