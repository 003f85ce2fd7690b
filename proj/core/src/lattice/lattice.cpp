// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mfake/lattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfake/error.hpp"

namespace mfake::lattice {

namespace {

void check_dim(const LatticeBasis& basis, std::size_t got, const char* what) {
  if (got != basis.n()) throw DimensionError(what, basis.n(), got);
}

}  // namespace

bool LatticePoint::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

double LatticeBasis::entry(std::size_t row, std::size_t col) const {
  if (row >= n() || col >= n()) throw DimensionError("basis entry", n(), std::max(row, col));
  if (row == col) return r_[row];
  return row < col ? w_[row] : 0.0;
}

std::vector<double> LatticeBasis::column(std::size_t k) const {
  std::vector<double> out(n(), 0.0);
  for (std::size_t i = 0; i <= k && i < n(); ++i) out[i] = entry(i, k);
  return out;
}

std::vector<double> LatticeBasis::multiply(std::span<const double> v) const {
  check_dim(*this, v.size(), "basis multiply");
  std::vector<double> out(n());
  double suffix = 0;  // sum of v_k for k > i
  for (std::size_t i = n(); i-- > 0;) {
    out[i] = r_[i] * v[i] + w_[i] * suffix;
    suffix += v[i];
  }
  return out;
}

std::vector<double> LatticeBasis::solve(std::span<const double> x) const {
  check_dim(*this, x.size(), "basis solve");
  std::vector<double> out(n());
  double suffix = 0;
  for (std::size_t i = n(); i-- > 0;) {
    out[i] = (x[i] - w_[i] * suffix) / r_[i];
    suffix += out[i];
  }
  return out;
}

double LatticeBasis::norm_squared(std::span<const double> u) const {
  check_dim(*this, u.size(), "basis norm");
  double sum = 0, sum_sq = 0;
  for (double v : u) {
    sum += v;
    sum_sq += v * v;
  }
  return d_ * d_ / 2 * (sum_sq + sum * sum);
}

LatticeBasis build_triangular_basis(std::size_t n, double d) {
  if (n == 0) throw ParameterError("lattice dimension must be positive");
  if (!(d > 0) || !std::isfinite(d)) throw ParameterError("basis length must be positive");

  LatticeBasis b;
  b.d_ = d;
  b.r_.resize(n);
  b.w_.resize(n);
  const double d2 = d * d;
  double acc = 0;  // sum of w_i^2 for i < k
  for (std::size_t k = 0; k < n; ++k) {
    b.r_[k] = std::sqrt(d2 - acc);
    b.w_[k] = (d2 / 2 - acc) / b.r_[k];
    acc += b.w_[k] * b.w_[k];
  }

  // Back-substitution, one unit vector at a time. Column j of the inverse is
  // zero below row j.
  b.inverse_.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double suffix = 0;
    for (std::size_t i = j + 1; i-- > 0;) {
      const double rhs = (i == j ? 1.0 : 0.0) - b.w_[i] * suffix;
      const double v = rhs / b.r_[i];
      b.inverse_[i * n + j] = v;
      suffix += v;
    }
  }
  return b;
}

BasisCoords to_basis_coords(const LatticeBasis& basis, std::span<const double> x) {
  return {basis.solve(x)};
}

std::vector<double> from_basis_coords(const LatticeBasis& basis, const BasisCoords& v) {
  return basis.multiply(v.coords);
}

LatticePoint closest_vector(const LatticeBasis& basis, const BasisCoords& x) {
  const std::size_t n = basis.n();
  check_dim(basis, x.coords.size(), "closest vector");

  std::vector<double> base(n), frac(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x.coords[i]) || std::fabs(x.coords[i]) > 0x1p62) {
      throw ParameterError("closest vector: coordinate out of range");
    }
    base[i] = std::floor(x.coords[i]);
    frac[i] = x.coords[i] - base[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] < frac[b]; });

  // Candidate k (0-based) rounds down the k smallest fractional parts and up
  // the rest. Track u = frac - y through its sum and sum of squares.
  double sum = 0, sum_sq = 0;
  for (double f : frac) {
    sum += f - 1;
    sum_sq += (f - 1) * (f - 1);
  }
  double best = sum_sq + sum * sum;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double f = frac[order[k - 1]];
    sum += 1;
    sum_sq += 2 * f - 1;
    const double cost = sum_sq + sum * sum;
    if (cost < best) {
      best = cost;
      best_k = k;
    }
  }

  LatticePoint y;
  y.coords.resize(n);
  for (std::size_t i = 0; i < n; ++i) y.coords[i] = static_cast<std::int64_t>(base[i]) + 1;
  for (std::size_t k = 0; k < best_k; ++k) y.coords[order[k]] -= 1;
  return y;
}

bool in_acceptance_region(const LatticeBasis& basis, std::span<const double> x0,
                          std::span<const double> x1) {
  check_dim(basis, x0.size(), "acceptance region");
  check_dim(basis, x1.size(), "acceptance region");
  std::vector<double> diff(x0.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = x0[i] - x1[i];
  return closest_vector(basis, to_basis_coords(basis, diff)).is_zero();
}

}  // namespace mfake::lattice
