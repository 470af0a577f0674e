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

#include "hqcnn/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "hqcnn/rng.hpp"

namespace hqcnn {

namespace {

constexpr double kWolfeC1 = 1e-4;
constexpr int kMaxBracketSteps = 40;
constexpr int kMaxZoomSteps = 40;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Objective wrapper that counts calls, rejects non-finite values and keeps
// the best point seen.
class TrackedObjective {
 public:
  TrackedObjective(const Objective& f, const GradientFn& g, double step)
      : f_(f), g_(g), step_(step) {}

  double value(std::span<const double> x) {
    const double v = f_(x);
    ++evaluations_;
    if (!std::isfinite(v)) {
      throw NonFiniteObjective("objective is not finite", {x.begin(), x.end()});
    }
    if (v < best_value_) {
      best_value_ = v;
      best_x_.assign(x.begin(), x.end());
    }
    return v;
  }

  // Difference probes are counted but never become the best point.
  std::vector<double> gradient(std::span<const double> x) {
    if (g_) return g_(x);
    Objective counted = [this](std::span<const double> p) {
      ++evaluations_;
      return f_(p);
    };
    return numerical_gradient(counted, x, step_);
  }

  std::size_t evaluations() const { return evaluations_; }
  double best_value() const { return best_value_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  const GradientFn& g_;
  double step_;
  std::size_t evaluations_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

struct LinePoint {
  double alpha = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative
  std::vector<double> grad;
};

// Minimizer of the cubic interpolating (a, fa, da) and (b, fb, db); falls
// back to bisection when the cubic is degenerate or leaves the interval.
double cubic_step(const LinePoint& a, const LinePoint& b) {
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  double t = 0.5 * (lo + hi);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0) {
      t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
    }
  }
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) {
    t = 0.5 * (lo + hi);
  }
  return t;
}

class LineSearch {
 public:
  LineSearch(TrackedObjective& obj, std::span<const double> x,
             std::span<const double> dir, double c2)
      : obj_(obj), x_(x), dir_(dir), c2_(c2), trial_(x.size()) {}

  LinePoint evaluate(double alpha) {
    for (std::size_t i = 0; i < x_.size(); ++i) trial_[i] = x_[i] + alpha * dir_[i];
    LinePoint p;
    p.alpha = alpha;
    p.value = obj_.value(trial_);
    p.grad = obj_.gradient(trial_);
    p.slope = dot(p.grad, dir_);
    return p;
  }

  // Strong Wolfe search; returns nothing when no acceptable step is found.
  std::optional<LinePoint> run(const LinePoint& start, double alpha0) {
    LinePoint prev = start;
    double alpha = alpha0;
    for (int i = 0; i < kMaxBracketSteps; ++i) {
      LinePoint cur = evaluate(alpha);
      if (cur.value > start.value + kWolfeC1 * alpha * start.slope ||
          (i > 0 && cur.value >= prev.value)) {
        return zoom(start, prev, cur);
      }
      if (std::abs(cur.slope) <= -c2_ * start.slope) return cur;
      if (cur.slope >= 0.0) return zoom(start, cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }

 private:
  std::optional<LinePoint> zoom(const LinePoint& start, LinePoint lo, LinePoint hi) {
    for (int i = 0; i < kMaxZoomSteps; ++i) {
      if (std::abs(hi.alpha - lo.alpha) < 1e-14 * std::max(1.0, lo.alpha)) break;
      LinePoint cur = evaluate(cubic_step(lo, hi));
      if (cur.value > start.value + kWolfeC1 * cur.alpha * start.slope ||
          cur.value >= lo.value) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -c2_ * start.slope) return cur;
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
    }
    // Accept a sufficient-decrease point even if curvature failed.
    if (lo.alpha > 0.0 && lo.value < start.value) return lo;
    return std::nullopt;
  }

  TrackedObjective& obj_;
  std::span<const double> x_;
  std::span<const double> dir_;
  double c2_;
  std::vector<double> trial_;
};

}  // namespace

void OptimizerSettings::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(gradient_norm_tolerance > 0.0)) {
    throw std::invalid_argument("gradient tolerance must be positive");
  }
  if (!(finite_difference_step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  if (!(wolfe_curvature > 1e-4 && wolfe_curvature < 1.0)) {
    throw std::invalid_argument("Wolfe curvature constant must lie in (1e-4, 1)");
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
}

std::vector<double> numerical_gradient(const Objective& f,
                                       std::span<const double> x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NonFiniteObjective("objective is not finite near coordinate " +
                                   std::to_string(i),
                               probe);
    }
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

MinimizeResult bfgs_minimize(const Objective& f, std::vector<double> x0,
                             const OptimizerSettings& settings,
                             const GradientFn& gradient) {
  settings.validate();
  const std::size_t n = x0.size();
  TrackedObjective obj(f, gradient, settings.finite_difference_step);

  MinimizeResult result;
  TrainReport& report = result.report;

  std::vector<double> x = std::move(x0);
  double fx = obj.value(x);
  std::vector<double> g = obj.gradient(x);
  report.cost_trace.push_back(fx);

  // Row-major inverse Hessian approximation, starts at the identity.
  std::vector<double> hinv(n * n, 0.0);
  auto reset_hessian = [&] {
    std::fill(hinv.begin(), hinv.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
  };
  reset_hessian();
  bool first_update = true;

  std::vector<double> dir(n), s(n), y(n), hy(n);
  std::size_t iter = 0;
  for (; iter < settings.max_iterations; ++iter) {
    if (inf_norm(g) < settings.gradient_norm_tolerance) {
      report.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc -= hinv[i * n + j] * g[j];
      dir[i] = acc;
    }
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      reset_hessian();
      first_update = true;
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      slope = dot(g, dir);
    }

    LinePoint start{0.0, fx, slope, g};
    LineSearch search(obj, x, dir, settings.wolfe_curvature);
    auto step = search.run(start, 1.0);
    if (!step && !first_update) {
      // Retry from steepest descent with a fresh curvature model.
      reset_hessian();
      first_update = true;
      for (std::size_t i = 0; i < n; ++i) dir[i] = -g[i];
      start.slope = dot(g, dir);
      LineSearch retry(obj, x, dir, settings.wolfe_curvature);
      step = retry.run(start, 1.0);
    }
    if (!step) break;

    for (std::size_t i = 0; i < n; ++i) {
      s[i] = step->alpha * dir[i];
      y[i] = step->grad[i] - g[i];
      x[i] += s[i];
    }
    fx = step->value;
    g = std::move(step->grad);
    report.cost_trace.push_back(fx);

    const double sy = dot(s, y);
    if (sy > 1e-14 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (first_update) {
        const double scale = sy / dot(y, y);
        for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = scale;
        first_update = false;
      }
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += hinv[i * n + j] * y[j];
        hy[i] = acc;
      }
      const double yhy = dot(y, hy);
      // H <- H - rho (s hy' + hy s') + (rho^2 y'Hy + rho) s s'
      const double coef = rho * rho * yhy + rho;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) + coef * s[i] * s[j];
        }
      }
    }
  }

  report.iterations = iter;
  if (obj.best_value() < fx) {
    // Only reachable when the search broke down after probing a lower point.
    x = obj.best_x();
    fx = obj.best_value();
    g = obj.gradient(x);
    report.cost_trace.push_back(fx);
  }
  report.final_cost = fx;
  report.final_gradient_norm = inf_norm(g);
  report.function_evaluations = obj.evaluations();
  result.x = std::move(x);
  return result;
}

std::uint64_t restart_seed(std::uint64_t base, std::size_t restart) {
  return derive_seed(base, {restart});
}

std::vector<double> initial_parameters(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(count);
  for (auto& v : x) v = 2.0 * std::numbers::pi * uniform01(rng);
  return x;
}

Model train(const ModelConfig& cfg, std::span<const TrainingPoint> training,
            const OptimizerSettings& settings) {
  cfg.validate();
  settings.validate();
  if (training.empty()) throw std::invalid_argument("training set is empty");
  for (const auto& pt : training) {
    if (pt.hamiltonian.num_qubits() != cfg.num_qubits) {
      throw std::invalid_argument("training Hamiltonian qubit count mismatch");
    }
  }

  const Objective objective = [&](std::span<const double> x) {
    return packed_cost(x, training, cfg);
  };

  const std::size_t restarts = settings.restarts;
  std::vector<std::optional<MinimizeResult>> results(restarts);
  std::vector<std::string> failures(restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < restarts; r = next++) {
      try {
        auto x0 = initial_parameters(cfg.parameter_count(),
                                     restart_seed(settings.seed, r));
        results[r] = bfgs_minimize(objective, std::move(x0), settings);
        results[r]->report.restart_index = r;
      } catch (const std::exception& e) {
        failures[r] = e.what();
      }
    }
  };
  std::size_t jobs = settings.jobs ? settings.jobs : std::thread::hardware_concurrency();
  jobs = std::clamp<std::size_t>(jobs, 1, restarts);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  std::optional<std::size_t> best;
  std::vector<double> restart_costs(restarts, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t r = 0; r < restarts; ++r) {
    if (!results[r]) continue;
    restart_costs[r] = results[r]->report.final_cost;
    if (!best || results[r]->report.final_cost < results[*best]->report.final_cost) {
      best = r;
    }
  }
  if (!best) {
    throw std::runtime_error("optimizer failed on every restart: " + failures[0]);
  }

  MinimizeResult& win = *results[*best];
  auto [theta, theta_cap] = unpack_parameters(win.x, cfg);
  Model model{cfg, std::move(theta), std::move(theta_cap), {}, {}};
  model.config.seed = settings.seed;
  model.training.cost_trace = win.report.cost_trace;
  model.training.iterations = win.report.iterations;
  model.training.final_cost = win.report.final_cost;
  model.training.final_gradient_norm = win.report.final_gradient_norm;
  model.training.restart_index = *best;
  model.training.converged = win.report.converged;
  model.training.restart_costs = restart_costs;
  return model;
}

}  // namespace hqcnn
