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

// hqcnn command-line front end.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hqcnn/experiment.hpp"
#include "hqcnn/persistence.hpp"
#include "hqcnn/sampler.hpp"
#include "hqcnn/spectra.hpp"
#include "hqcnn/trainer.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hqcnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

// Settings shared by the subcommands. Values come from flags, then the
// --config file, then defaults.
struct Options {
  std::string config_path;
  std::string dataset;
  std::string model;
  std::string out_dir = ".";
  std::string output;
  std::string trace;
  std::string samples;
  std::string grid;
  std::string reference = "sector";
  std::size_t depth = 6;
  std::vector<double> weights{1.0, 0.5};
  std::vector<double> train_bonds{kDefaultTrainingBonds.begin(), kDefaultTrainingBonds.end()};
  bool classical_layer = true;
  std::size_t restarts = 5;
  std::size_t max_iterations = 1000;
  double gradient_tolerance = 1e-5;
  double fd_step = 1e-6;
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  std::vector<std::uint64_t> shots{1000, 5000, 10000, 40000, 100000};
  std::size_t repetitions = 10;
};

class Merger {
 public:
  Merger(const CLI::App& app, const json& config) : app_(app), config_(config) {}

  template <class T>
  void apply(const std::string& flag, const std::string& key, T& target) {
    used_.push_back(key);
    if (app_.count("--" + flag) > 0) return;
    auto it = config_.find(key);
    if (it == config_.end()) return;
    try {
      target = it->get<T>();
    } catch (const json::exception&) {
      throw UsageError("config key '" + key + "' has the wrong type");
    }
  }

  void reject_unknown() const {
    for (auto it = config_.begin(); it != config_.end(); ++it) {
      if (std::find(used_.begin(), used_.end(), it.key()) == used_.end()) {
        throw UsageError("unknown config key '" + it.key() + "'");
      }
    }
  }

 private:
  const CLI::App& app_;
  const json& config_;
  std::vector<std::string> used_;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw UsageError("config file " + path + " is not a JSON object");
  }
  return doc;
}

std::string resolve_dataset(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("HQCNN_DATASET"); env && *env) path = env;
  }
  if (path.empty()) throw UsageError("no dataset given: pass --dataset or set HQCNN_DATASET");
  if (!fs::is_regular_file(path)) throw UsageError("dataset " + path + " does not exist");
  return path;
}

// "a,b,c" or "start:stop:step"; empty means every dataset entry.
std::vector<double> parse_grid(const std::string& text, const Dataset& ds) {
  if (text.empty()) return ds.bond_lengths();
  auto to_double = [&](const std::string& s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw UsageError("bad grid value '" + s + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid range must be start:stop:step");
    const double start = to_double(parts[0]), stop = to_double(parts[1]),
                 step = to_double(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("bad grid range '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) out.push_back(start + double(k) * step);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  }
  for (double& b : out) b = ds.at(b).bond_length;
  return out;
}

std::string config_hash(const json& effective) {
  return sha256_hex(effective.dump()).substr(0, 16);
}

class CsvOut {
 public:
  explicit CsvOut(const std::string& path) {
    if (!path.empty() && path != "-") {
      if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
      }
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }
  void header(const std::string& hash, const std::vector<std::string>& comments,
              const std::vector<std::string>& columns) {
    out() << "# hqcnn " << HQCNN_VERSION << " config=" << hash << "\n";
    for (const auto& c : comments) out() << "# " << c << "\n";
    row(columns);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out() << (i ? "," : "") << cells[i];
    out() << "\n";
  }

 private:
  std::ofstream file_;
};

ReferenceLevels levels_for(const PauliSum& h, const Dataset& ds, const std::string& mode) {
  if (mode == "full") return reference_levels(h, std::nullopt);
  return reference_levels(h, ds.num_electrons);
}

std::vector<double> branch_reference(const ReferenceLevels& lv, std::size_t branches) {
  std::vector<double> ref(branches, std::nan(""));
  if (branches > 0) ref[0] = lv.e0;
  if (branches > 1) ref[1] = lv.e1;
  return ref;
}

void check_reference_mode(const std::string& mode) {
  if (mode != "sector" && mode != "full") {
    throw UsageError("--reference must be 'sector' or 'full'");
  }
}

void warn_fingerprint(const Model& m, const Dataset& ds) {
  if (!fingerprint_matches(m, ds)) {
    std::cerr << "warning: model was trained on dataset " << m.dataset_fingerprint
              << ", not " << ds.fingerprint << "\n";
  }
}

int cmd_validate(const Options& o) {
  const auto ds = load_dataset(resolve_dataset(o.dataset));
  std::cout << "ok: " << ds.entries.size() << " entries, " << ds.num_qubits << " qubits, "
            << ds.molecule << "/" << ds.basis << "/" << ds.mapping << ", bond lengths "
            << num(ds.entries.front().bond_length) << "-" << num(ds.entries.back().bond_length)
            << " A";
  if (ds.num_electrons) std::cout << ", " << *ds.num_electrons << " electrons";
  std::cout << "\n" << ds.fingerprint << "\n";
  return kExitOk;
}

int cmd_train(const Options& o) {
  const auto ds = load_dataset(resolve_dataset(o.dataset));
  ModelConfig cfg;
  cfg.num_qubits = ds.num_qubits;
  cfg.depth = o.depth;
  cfg.weights = o.weights;
  cfg.reference_states.clear();
  for (std::size_t j = 0; j < o.weights.size(); ++j) cfg.reference_states.push_back(j);
  cfg.classical_layer = o.classical_layer;
  OptimizerSettings st;
  st.max_iterations = o.max_iterations;
  st.gradient_norm_tolerance = o.gradient_tolerance;
  st.finite_difference_step = o.fd_step;
  st.restarts = o.restarts;
  st.seed = o.seed;
  st.jobs = o.jobs;
  try {
    cfg.validate();
    st.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto points = ds.points(o.train_bonds);

  auto model = train(cfg, points, st);
  model.dataset_fingerprint = ds.fingerprint;

  const json effective = {{"command", "train"},     {"dataset", ds.fingerprint},
                          {"depth", cfg.depth},     {"weights", cfg.weights},
                          {"train_bonds", o.train_bonds},
                          {"classical_layer", cfg.classical_layer},
                          {"restarts", st.restarts}, {"max_iterations", st.max_iterations},
                          {"gradient_tolerance", st.gradient_norm_tolerance},
                          {"fd_step", st.finite_difference_step}, {"seed", st.seed}};
  const std::string model_path =
      o.model.empty() ? (fs::path(o.out_dir) / "model.json").string() : o.model;
  const std::string trace_path =
      o.trace.empty() ? (fs::path(o.out_dir) / "trace.csv").string() : o.trace;
  if (const auto parent = fs::path(model_path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  save_model(model, model_path);

  CsvOut csv(trace_path);
  csv.header(config_hash(effective),
             {"restart=" + std::to_string(model.training.restart_index)},
             {"iteration", "cost"});
  for (std::size_t i = 0; i < model.training.cost_trace.size(); ++i) {
    csv.row({std::to_string(i), num(model.training.cost_trace[i])});
  }
  std::cerr << "trained D=" << cfg.depth << ": cost " << num(model.training.final_cost)
            << " after " << model.training.iterations << " iterations (restart "
            << model.training.restart_index << ", "
            << (model.training.converged ? "converged" : "not converged") << ")\n"
            << "wrote " << model_path << " and " << trace_path << "\n";
  return kExitOk;
}

int cmd_infer(const Options& o) {
  check_reference_mode(o.reference);
  if (o.model.empty()) throw UsageError("infer needs --model");
  const auto ds = load_dataset(resolve_dataset(o.dataset));
  const std::string model_text = read_file(o.model);
  const auto model = parse_model(model_text);
  warn_fingerprint(model, ds);
  if (model.config.num_qubits != ds.num_qubits) {
    throw std::runtime_error("model and dataset qubit counts differ");
  }
  const auto grid = parse_grid(o.grid, ds);
  const auto branches = trained_branches(model);
  const std::size_t k = model.config.num_references();

  std::vector<std::string> columns{"b"};
  for (auto j : branches) columns.push_back("E" + std::to_string(j));
  for (auto j : branches) columns.push_back("FCI" + std::to_string(j));
  for (auto j : branches) columns.push_back("dE" + std::to_string(j));

  const json effective = {{"command", "infer"}, {"dataset", ds.fingerprint},
                          {"model", "sha256:" + sha256_hex(model_text)},
                          {"grid", grid}, {"reference", o.reference}};
  std::vector<std::string> comments{"reference=" + o.reference};
  if (o.reference == "sector" && ds.num_electrons) {
    comments.back() += " electrons=" + std::to_string(*ds.num_electrons);
  }
  std::vector<std::vector<std::string>> rows;
  ExactEvaluator exact;
  for (double b : grid) {
    const auto& h = ds.at(b).hamiltonian;
    const auto lv = levels_for(h, ds, o.reference);
    const auto ref = branch_reference(lv, k);
    const auto e = infer_all(b, model, h, exact);
    std::vector<std::string> cells{num(b)};
    for (auto j : branches) cells.push_back(num(e[j]));
    for (auto j : branches) cells.push_back(num(ref[j]));
    for (auto j : branches) cells.push_back(num(std::abs(e[j] - ref[j])));
    rows.push_back(std::move(cells));
    if (o.reference == "sector" && k > 1 && lv.sector_differs()) {
      comments.push_back("b=" + num(b) + ": full-spectrum E1=" + num(lv.full_e1) +
                         " lies outside the electron-number sector");
    }
  }
  CsvOut csv(o.output);
  csv.header(config_hash(effective), comments, columns);
  for (const auto& r : rows) csv.row(r);
  return kExitOk;
}

int cmd_fci(const Options& o) {
  check_reference_mode(o.reference);
  const auto ds = load_dataset(resolve_dataset(o.dataset));
  const auto grid = parse_grid(o.grid, ds);
  const json effective = {{"command", "fci"}, {"dataset", ds.fingerprint},
                          {"grid", grid}, {"reference", o.reference}};
  CsvOut csv(o.output);
  std::vector<std::string> comments{"reference=" + o.reference};
  if (o.reference == "sector" && ds.num_electrons) {
    comments.back() += " electrons=" + std::to_string(*ds.num_electrons);
  }
  csv.header(config_hash(effective), comments,
             {"b", "E0", "E1", "full_E0", "full_E1", "sector_differs"});
  for (double b : grid) {
    const auto lv = levels_for(ds.at(b).hamiltonian, ds, o.reference);
    csv.row({num(b), num(lv.e0), num(lv.e1), num(lv.full_e0), num(lv.full_e1),
             lv.sector_differs() ? "1" : "0"});
  }
  return kExitOk;
}

int cmd_noise_sweep(const Options& o) {
  check_reference_mode(o.reference);
  if (o.model.empty()) throw UsageError("noise-sweep needs --model");
  if (o.shots.empty()) throw UsageError("--shots needs at least one value");
  if (o.repetitions < 1) throw UsageError("--repetitions must be at least 1");
  for (auto s : o.shots) {
    if (s < 1) throw UsageError("--shots values must be positive");
  }
  const auto ds = load_dataset(resolve_dataset(o.dataset));
  const std::string model_text = read_file(o.model);
  const auto model = parse_model(model_text);
  warn_fingerprint(model, ds);
  const auto grid = parse_grid(o.grid, ds);
  const auto branches = trained_branches(model);
  const std::size_t k = model.config.num_references();

  std::vector<SweepPoint> points;
  for (double b : grid) {
    const auto& h = ds.at(b).hamiltonian;
    points.push_back({b, h, branch_reference(levels_for(h, ds, o.reference), k)});
  }
  const auto res = noise_sweep(model, points, o.shots, o.repetitions, o.seed, o.jobs);

  const json effective = {{"command", "noise-sweep"}, {"dataset", ds.fingerprint},
                          {"model", "sha256:" + sha256_hex(model_text)},
                          {"grid", grid}, {"reference", o.reference},
                          {"shots", o.shots}, {"repetitions", o.repetitions},
                          {"seed", o.seed}};
  const std::string hash = config_hash(effective);
  const std::vector<std::string> comments{
      "reference=" + o.reference + " shots are per measured Pauli term"};

  if (!o.samples.empty()) {
    std::vector<std::string> columns{"shots", "b", "repetition"};
    for (auto j : branches) columns.push_back("E" + std::to_string(j));
    for (auto j : branches) columns.push_back("dE" + std::to_string(j));
    CsvOut csv(o.samples);
    csv.header(hash, comments, columns);
    for (const auto& s : res.samples) {
      std::vector<std::string> cells{std::to_string(s.shots), num(s.bond_length),
                                     std::to_string(s.repetition)};
      for (auto j : branches) cells.push_back(num(s.energies[j]));
      for (auto j : branches) cells.push_back(num(s.abs_errors[j]));
      csv.row(cells);
    }
  }

  std::vector<std::string> columns{"shots", "total_shots_per_point", "samples"};
  for (auto j : branches) {
    columns.push_back("mean_dE" + std::to_string(j));
    columns.push_back("std_dE" + std::to_string(j));
  }
  CsvOut csv(o.output);
  csv.header(hash, comments, columns);
  for (const auto& a : res.aggregates) {
    std::vector<std::string> cells{std::to_string(a.shots),
                                   std::to_string(a.total_shots_per_point),
                                   std::to_string(a.samples)};
    for (auto j : branches) {
      cells.push_back(num(a.mean_abs_error[j]));
      // Spread across repetitions only; a single repetition leaves it empty.
      cells.push_back(o.repetitions > 1 ? num(a.std_abs_error[j]) : "");
    }
    csv.row(cells);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum-classical network surrogate for H2 potential energy surfaces"};
  app.set_version_flag("--version", std::string("hqcnn ") + HQCNN_VERSION);
  app.require_subcommand(1);
  Options o;

  auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("--dataset", o.dataset, "Dataset JSON (default: $HQCNN_DATASET)");
    sub->add_option("--config", o.config_path, "JSON run configuration; flags override it");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", o.grid, "Bond lengths: a,b,c or start:stop:step (default: all)");
    sub->add_option("--reference", o.reference,
                    "Reference levels: 'sector' (electron-number block) or 'full'");
    sub->add_option("--output", o.output, "CSV output path (default: stdout)");
  };

  auto* validate = app.add_subcommand("validate-dataset", "Check a dataset file");
  add_dataset(validate);

  auto* train_cmd = app.add_subcommand("train", "Train a model");
  add_dataset(train_cmd);
  train_cmd->add_option("--depth", o.depth, "PQC depth D");
  train_cmd->add_option("--weights", o.weights, "Branch weights, e.g. 1,0.5")->delimiter(',');
  train_cmd->add_option("--train-bonds", o.train_bonds, "Training bond lengths")
      ->delimiter(',');
  train_cmd->add_flag("--classical-layer,!--no-classical-layer", o.classical_layer,
                      "Keep or drop the intermediate measurement layer");
  train_cmd->add_option("--restarts", o.restarts, "Random restarts");
  train_cmd->add_option("--max-iterations", o.max_iterations, "BFGS iteration cap");
  train_cmd->add_option("--gradient-tolerance", o.gradient_tolerance,
                        "Stop when max |gradient component| drops below this");
  train_cmd->add_option("--fd-step", o.fd_step, "Finite-difference step");
  train_cmd->add_option("--seed", o.seed, "Base RNG seed");
  train_cmd->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  train_cmd->add_option("--out-dir", o.out_dir, "Directory for model.json and trace.csv");
  train_cmd->add_option("--model", o.model, "Model output path");
  train_cmd->add_option("--trace", o.trace, "Cost-trace CSV path");

  auto* infer_cmd = app.add_subcommand("infer", "Evaluate a trained model on a grid");
  add_dataset(infer_cmd);
  add_grid(infer_cmd);
  infer_cmd->add_option("--model", o.model, "Trained model JSON");

  auto* fci_cmd = app.add_subcommand("fci", "Exact reference energies");
  add_dataset(fci_cmd);
  add_grid(fci_cmd);

  auto* sweep_cmd = app.add_subcommand("noise-sweep", "Shot-noise study of a trained model");
  add_dataset(sweep_cmd);
  add_grid(sweep_cmd);
  sweep_cmd->add_option("--model", o.model, "Trained model JSON");
  sweep_cmd->add_option("--shots", o.shots, "Shots per measured term, e.g. 1000,100000")
      ->delimiter(',');
  sweep_cmd->add_option("--repetitions", o.repetitions, "Repetitions per point");
  sweep_cmd->add_option("--seed", o.seed, "Base RNG seed");
  sweep_cmd->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  sweep_cmd->add_option("--samples", o.samples, "Per-sample CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const json config = load_config(o.config_path);
    Merger m(*sub, config);
    m.apply("dataset", "dataset", o.dataset);
    if (sub == train_cmd) {
      m.apply("depth", "depth", o.depth);
      m.apply("weights", "weights", o.weights);
      m.apply("train-bonds", "train_bonds", o.train_bonds);
      m.apply("classical-layer", "classical_layer", o.classical_layer);
      m.apply("restarts", "restarts", o.restarts);
      m.apply("max-iterations", "max_iterations", o.max_iterations);
      m.apply("gradient-tolerance", "gradient_tolerance", o.gradient_tolerance);
      m.apply("fd-step", "fd_step", o.fd_step);
      m.apply("seed", "seed", o.seed);
      m.apply("jobs", "jobs", o.jobs);
      m.apply("out-dir", "out_dir", o.out_dir);
      m.apply("model", "model", o.model);
      m.apply("trace", "trace", o.trace);
    }
    if (sub == infer_cmd || sub == fci_cmd || sub == sweep_cmd) {
      m.apply("grid", "grid", o.grid);
      m.apply("reference", "reference", o.reference);
      m.apply("output", "output", o.output);
    }
    if (sub == infer_cmd || sub == sweep_cmd) m.apply("model", "model", o.model);
    if (sub == sweep_cmd) {
      m.apply("shots", "shots", o.shots);
      m.apply("repetitions", "repetitions", o.repetitions);
      m.apply("seed", "seed", o.seed);
      m.apply("jobs", "jobs", o.jobs);
      m.apply("samples", "samples", o.samples);
    }
    m.reject_unknown();

    if (sub == validate) return cmd_validate(o);
    if (sub == train_cmd) return cmd_train(o);
    if (sub == infer_cmd) return cmd_infer(o);
    if (sub == fci_cmd) return cmd_fci(o);
    return cmd_noise_sweep(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
