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

#include "hqcnn/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hqcnn {

void ShotPlan::validate() const {
  if (shots_per_term < 1) throw std::invalid_argument("shots must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const State& s,
                                                     std::uint64_t shots, Rng& rng) {
  // Sequential conditional binomials: count_k ~ Bin(remaining, p_k / rest).
  const auto p = s.probabilities();
  double rest = 0.0;
  for (double x : p) rest += x;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t remaining = shots;
  for (std::size_t k = 0; k < p.size() && remaining > 0; ++k) {
    std::uint64_t c = 0;
    if (k + 1 == p.size() || p[k] >= rest) {
      c = remaining;
    } else if (p[k] > 0.0) {
      std::binomial_distribution<std::uint64_t> bin(remaining,
                                                    std::clamp(p[k] / rest, 0.0, 1.0));
      c = bin(rng);
    }
    rest -= p[k];
    if (c > 0) {
      counts[k] = c;
      remaining -= c;
    }
  }
  return counts;
}

void rotate_to_measurement_basis(State& s, const PauliString& term) {
  if (term.num_qubits() != s.num_qubits()) {
    throw std::invalid_argument("Pauli term and state register sizes differ");
  }
  for (std::size_t q = 0; q < term.num_qubits(); ++q) {
    switch (term[q]) {
      case Pauli::X:
        s.apply(Gate::h(q));
        break;
      case Pauli::Y:
        s.apply(Gate::sdg(q));
        s.apply(Gate::h(q));
        break;
      case Pauli::I:
      case Pauli::Z:
        break;
    }
  }
}

double estimate_pauli(const State& prepared, const PauliString& term,
                      std::uint64_t shots, Rng& rng) {
  if (term.num_qubits() != prepared.num_qubits()) {
    throw std::invalid_argument("Pauli term and state register sizes differ");
  }
  if (term.is_identity()) return 1.0;
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  State rotated = prepared;
  rotate_to_measurement_basis(rotated, term);
  std::uint64_t support = 0;
  for (std::size_t q = 0; q < term.num_qubits(); ++q) {
    if (term[q] != Pauli::I) support |= std::uint64_t{1} << q;
  }
  std::int64_t parity_sum = 0;
  for (const auto& [outcome, count] : sample_counts(rotated, shots, rng)) {
    const bool odd = std::popcount(outcome & support) & 1;
    parity_sum += odd ? -static_cast<std::int64_t>(count)
                      : static_cast<std::int64_t>(count);
  }
  return static_cast<double>(parity_sum) / static_cast<double>(shots);
}

double estimate_pauli(const Circuit& prep, const PauliString& term,
                      std::uint64_t shots, Rng& rng) {
  return estimate_pauli(prep.run(), term, shots, rng);
}

double estimate_energy(const State& prepared, const PauliSum& h,
                       std::uint64_t shots_per_term, Rng& rng) {
  double acc = 0.0;
  for (const auto& t : h.terms()) {
    acc += t.coefficient * estimate_pauli(prepared, t.string, shots_per_term, rng);
  }
  return acc;
}

double estimate_energy(const Circuit& prep, const PauliSum& h,
                       std::uint64_t shots_per_term, Rng& rng) {
  return estimate_energy(prep.run(), h, shots_per_term, rng);
}

double estimate_energy(const Circuit& prep, const PauliSum& h, const ShotPlan& plan) {
  plan.validate();
  Rng rng(plan.seed);
  return estimate_energy(prep, h, plan.shots_per_term, rng);
}

std::vector<double> SampledEvaluator::z_expectations(const State& prepared) {
  const std::size_t n = prepared.num_qubits();
  std::vector<double> z(n, 0.0);
  for (const auto& [outcome, count] : sample_counts(prepared, shots_, rng_)) {
    for (std::size_t q = 0; q < n; ++q) {
      z[q] += ((outcome >> q) & 1U) ? -static_cast<double>(count)
                                    : static_cast<double>(count);
    }
  }
  for (auto& v : z) v /= static_cast<double>(shots_);
  used_ += shots_;
  return z;
}

double SampledEvaluator::energy(const State& prepared, const PauliSum& h) {
  for (const auto& t : h.terms()) {
    if (!t.string.is_identity()) used_ += shots_;
  }
  return estimate_energy(prepared, h, shots_, rng_);
}

double noisy_inference(double bond_length, const Model& model,
                       std::size_t state_index, const PauliSum& h,
                       const ShotPlan& plan) {
  plan.validate();
  SampledEvaluator sampled(plan.shots_per_term, plan.seed);
  return infer(bond_length, model, state_index, h, sampled);
}

std::vector<double> noisy_inference_all(double bond_length, const Model& model,
                                        const PauliSum& h, std::uint64_t shots,
                                        std::uint64_t seed) {
  SampledEvaluator sampled(shots, seed);
  return infer_all(bond_length, model, h, sampled);
}

SweepResult noise_sweep(const Model& model, std::span<const SweepPoint> points,
                        std::span<const std::uint64_t> shot_levels,
                        std::size_t repetitions, std::uint64_t seed,
                        std::size_t jobs) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const std::size_t branches = model.config.num_references();
  for (const auto& pt : points) {
    if (pt.reference.size() != branches) {
      throw std::invalid_argument("sweep point reference energies do not match "
                                  "the model's branch count");
    }
  }
  for (auto s : shot_levels) {
    if (s < 1) throw std::invalid_argument("shots must be >= 1");
  }

  const std::size_t cells = shot_levels.size() * points.size() * repetitions;
  SweepResult result;
  result.samples.resize(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const std::size_t rep = c % repetitions;
      const std::size_t pi = (c / repetitions) % points.size();
      const std::size_t si = c / (repetitions * points.size());
      const auto& pt = points[pi];
      SweepSample& out = result.samples[c];
      out.shots = shot_levels[si];
      out.bond_length = pt.bond_length;
      out.repetition = rep;
      out.energies = noisy_inference_all(pt.bond_length, model, pt.hamiltonian,
                                         out.shots, derive_seed(seed, {si, pi, rep}));
      out.abs_errors.resize(branches);
      for (std::size_t j = 0; j < branches; ++j) {
        out.abs_errors[j] = std::abs(out.energies[j] - pt.reference[j]);
      }
    }
  };
  std::size_t threads = jobs ? jobs : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(cells, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  const std::size_t per_level = points.size() * repetitions;
  for (std::size_t si = 0; si < shot_levels.size(); ++si) {
    SweepAggregate agg;
    agg.shots = shot_levels[si];
    agg.samples = per_level;
    agg.mean_abs_error.assign(branches, 0.0);
    agg.std_abs_error.assign(branches, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < branches; ++j) {
      double sum = 0.0;
      for (std::size_t c = si * per_level; c < (si + 1) * per_level; ++c) {
        sum += result.samples[c].abs_errors[j];
      }
      const double mean = per_level ? sum / static_cast<double>(per_level) : 0.0;
      agg.mean_abs_error[j] = mean;
      if (per_level > 1) {
        double ss = 0.0;
        for (std::size_t c = si * per_level; c < (si + 1) * per_level; ++c) {
          const double d = result.samples[c].abs_errors[j] - mean;
          ss += d * d;
        }
        agg.std_abs_error[j] = std::sqrt(ss / static_cast<double>(per_level - 1));
      }
    }
    if (!points.empty()) {
      std::size_t measured = 0;
      for (const auto& t : points.front().hamiltonian.terms()) {
        if (!t.string.is_identity()) ++measured;
      }
      const std::uint64_t first = model.config.classical_layer ? agg.shots : 0;
      agg.total_shots_per_point = first + branches * measured * agg.shots;
    }
    result.aggregates.push_back(std::move(agg));
  }
  return result;
}

}  // namespace hqcnn
