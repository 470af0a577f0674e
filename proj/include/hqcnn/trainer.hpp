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
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqcnn/model.hpp"

namespace hqcnn {

using Objective = std::function<double(std::span<const double>)>;
using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

struct OptimizerSettings {
  std::size_t max_iterations = 1000;
  /// Stop once the largest gradient component falls below this.
  double gradient_norm_tolerance = 1e-5;
  double finite_difference_step = 1e-6;
  /// Curvature constant c2 of the strong Wolfe conditions. Small values
  /// make line searches nearly exact.
  double wolfe_curvature = 0.9;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  /// Worker threads for restarts; 0 picks hardware concurrency.
  std::size_t jobs = 0;

  void validate() const;
};

struct TrainReport {
  /// Objective at the start point and after every accepted step.
  std::vector<double> cost_trace;
  double final_cost = 0.0;
  double final_gradient_norm = 0.0;
  std::size_t iterations = 0;
  std::size_t function_evaluations = 0;
  bool converged = false;
  std::size_t restart_index = 0;
  /// Final cost of every restart, by restart index (train() only).
  std::vector<double> restart_costs;
};

/// Raised when the objective returns NaN or infinity.
class NonFiniteObjective : public std::runtime_error {
 public:
  NonFiniteObjective(const std::string& what, std::vector<double> point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> numerical_gradient(const Objective& f,
                                       std::span<const double> x, double step);

struct MinimizeResult {
  std::vector<double> x;
  TrainReport report;
};

/**
 * @brief Quasi-Newton minimization with the BFGS inverse-Hessian update.
 *
 * Each step runs a line search enforcing the strong Wolfe conditions
 * (c1 = 1e-4, c2 = settings.wolfe_curvature). Gradients come from
 * `gradient` when given, otherwise from numerical_gradient with
 * settings.finite_difference_step. The returned point is the best iterate
 * or line-search trial; difference probes are not candidates.
 */
MinimizeResult bfgs_minimize(const Objective& f, std::vector<double> x0,
                             const OptimizerSettings& settings,
                             const GradientFn& gradient = {});

/// Per-restart seed derived from the base seed.
std::uint64_t restart_seed(std::uint64_t base, std::size_t restart);

/// Uniform [0, 2 pi) start point for one restart.
std::vector<double> initial_parameters(std::size_t count, std::uint64_t seed);

/**
 * Trains theta and theta_cap on `training` from settings.restarts uniform
 * random starts and keeps the lowest final cost. The result depends only on
 * the inputs, not on settings.jobs.
 */
Model train(const ModelConfig& cfg, std::span<const TrainingPoint> training,
            const OptimizerSettings& settings);

}  // namespace hqcnn
