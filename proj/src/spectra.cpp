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

#include "hqcnn/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hqcnn {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const DenseMatrix& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t c = 0; c < a.dim; ++c) {
      if (r != c) acc += std::norm(a(r, c));
    }
  }
  return acc;
}

}  // namespace

Eigensystem hermitian_eigensystem(const DenseMatrix& m) {
  const std::size_t n = m.dim;
  double scale = 0.0;
  for (const auto& z : m.data) scale = std::max(scale, std::abs(z));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > 1e-10 * std::max(1.0, scale)) {
        throw std::invalid_argument("matrix is not Hermitian");
      }
    }
  }

  DenseMatrix a = m;
  DenseMatrix v;
  v.dim = n;
  v.data.assign(n * n, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double total = std::accumulate(
      a.data.begin(), a.data.end(), 0.0,
      [](double acc, const Complex& z) { return acc + std::norm(z); });
  const double target = 1e-30 * std::max(total, 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        // Rotate the pivot onto the positive real axis: A <- P^H A P with
        // P = diag(.., e^{-i phi} at q, ..).
        const Complex phase = std::conj(a(p, q)) / r;
        for (std::size_t k = 0; k < n; ++k) {
          a(k, q) *= phase;
          v(k, q) *= phase;
        }
        for (std::size_t k = 0; k < n; ++k) a(q, k) *= std::conj(phase);
        a(p, q) = r;
        a(q, p) = r;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (off_diagonal_norm2(a) > 1e-20 * std::max(total, 1.0)) {
    throw std::runtime_error("Jacobi eigensolver did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  Eigensystem out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k).real());
    std::vector<Complex> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, k);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

Spectrum eigenvalues(const PauliSum& h, double bond_length) {
  Spectrum s;
  s.eigenvalues = hermitian_eigensystem(dense_matrix(h)).values;
  s.bond_length = bond_length;
  return s;
}

std::pair<double, double> reference_energies(const PauliSum& h) {
  const auto s = eigenvalues(h);
  if (s.eigenvalues.size() < 2) {
    throw std::invalid_argument("reference energies need at least 2 levels");
  }
  return {s.eigenvalues[0], s.eigenvalues[1]};
}

Spectrum sector_eigenvalues(const PauliSum& h, std::size_t particles,
                            double bond_length) {
  const DenseMatrix full = dense_matrix(h);
  std::vector<std::size_t> basis;
  for (std::size_t k = 0; k < full.dim; ++k) {
    if (static_cast<std::size_t>(std::popcount(k)) == particles) basis.push_back(k);
  }
  if (basis.empty()) {
    throw std::invalid_argument("no basis states with " + std::to_string(particles) +
                                " particles");
  }
  for (std::size_t r = 0; r < full.dim; ++r) {
    const bool r_in = static_cast<std::size_t>(std::popcount(r)) == particles;
    for (std::size_t c = 0; c < full.dim; ++c) {
      const bool c_in = static_cast<std::size_t>(std::popcount(c)) == particles;
      if (r_in != c_in && std::abs(full(r, c)) > 1e-12) {
        throw std::invalid_argument("Hamiltonian does not conserve particle number");
      }
    }
  }
  DenseMatrix block;
  block.dim = basis.size();
  block.data.resize(block.dim * block.dim);
  for (std::size_t i = 0; i < block.dim; ++i) {
    for (std::size_t j = 0; j < block.dim; ++j) block(i, j) = full(basis[i], basis[j]);
  }
  Spectrum s;
  s.eigenvalues = hermitian_eigensystem(block).values;
  s.bond_length = bond_length;
  return s;
}

std::pair<double, double> reference_energies(const PauliSum& h,
                                             std::size_t particles) {
  const auto s = sector_eigenvalues(h, particles);
  if (s.eigenvalues.size() < 2) {
    throw std::invalid_argument("reference energies need at least 2 levels");
  }
  return {s.eigenvalues[0], s.eigenvalues[1]};
}

}  // namespace hqcnn
