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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mfake::lattice {

// Coordinates with respect to a basis B; the vector itself is B * coords.
struct BasisCoords {
  std::vector<double> coords;
};

// Integer combination of basis columns.
struct LatticePoint {
  std::vector<std::int64_t> coords;

  bool is_zero() const;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

// Triangular lattice: n columns of length d with pairwise inner product d^2/2.
//
// Column k is (w_1, ..., w_{k-1}, r_k, 0, ..., 0), so entry (i, k) equals w_i
// for every k > i. That structure makes products and solves O(n); the dense
// inverse is still precomputed for callers that want the matrix.
class LatticeBasis {
 public:
  std::size_t n() const { return r_.size(); }
  double d() const { return d_; }

  // Matrix entry B[row][col].
  double entry(std::size_t row, std::size_t col) const;
  std::vector<double> column(std::size_t k) const;
  // Row-major n x n inverse.
  const std::vector<double>& inverse() const { return inverse_; }
  double inverse_entry(std::size_t row, std::size_t col) const { return inverse_[row * n() + col]; }

  // B * v and B^{-1} * x without touching the dense matrices.
  std::vector<double> multiply(std::span<const double> v) const;
  std::vector<double> solve(std::span<const double> x) const;

  // ||B u||^2 from the Gram matrix: d^2/2 * (sum u_i^2 + (sum u_i)^2).
  double norm_squared(std::span<const double> u) const;

 private:
  friend LatticeBasis build_triangular_basis(std::size_t n, double d);
  LatticeBasis() = default;

  double d_ = 0;
  std::vector<double> r_;  // diagonal
  std::vector<double> w_;  // row i above the diagonal
  std::vector<double> inverse_;
};

// Throws ParameterError for n = 0 or d <= 0 (or d not finite).
LatticeBasis build_triangular_basis(std::size_t n, double d);

BasisCoords to_basis_coords(const LatticeBasis& basis, std::span<const double> x);
std::vector<double> from_basis_coords(const LatticeBasis& basis, const BasisCoords& v);

// Closest lattice point to B*x, input and output in basis coordinates. Ties go
// to the first candidate in the enumeration order.
LatticePoint closest_vector(const LatticeBasis& basis, const BasisCoords& x);

// True iff x1 lies in the Voronoi cell of x0.
bool in_acceptance_region(const LatticeBasis& basis, std::span<const double> x0,
                          std::span<const double> x1);

}  // namespace mfake::lattice
