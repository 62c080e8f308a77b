// Copyright 2026 The fsad Authors
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

// Semiring vectors, a compressed-sparse-row matrix, the semiring dot product
// and its tape-free vector-Jacobian product.

#ifndef FSAD_LINALG_HPP_
#define FSAD_LINALG_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsad/errors.hpp"
#include "fsad/semiring.hpp"

namespace fsad {

template <DifferentiableSemiring S>
class SemiringVector {
 public:
  using Value = typename S::Value;

  explicit SemiringVector(S semiring = S{}) : semiring_(std::move(semiring)) {}
  SemiringVector(S semiring, std::vector<Value> values)
      : semiring_(std::move(semiring)), values_(std::move(values)) {}
  // n copies of zero().
  SemiringVector(S semiring, std::size_t n)
      : semiring_(std::move(semiring)), values_(n, semiring_.zero()) {}

  const S& semiring() const { return semiring_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  const Value& operator[](std::size_t i) const { return values_[i]; }
  Value& operator[](std::size_t i) { return values_[i]; }

  std::span<const Value> values() const { return values_; }
  std::span<Value> values() { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  S semiring_;
  std::vector<Value> values_;
};

template <DifferentiableSemiring S>
using CotangentVector = std::vector<typename S::Cotangent>;

template <DifferentiableSemiring S>
struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  typename S::Value value{};
};

// Square sparse matrix in row-compressed form. Column indices are strictly
// increasing within a row; when strictly_upper() holds every stored (i, j)
// has j > i.
template <DifferentiableSemiring S>
class CsrMatrix {
 public:
  using Value = typename S::Value;

  CsrMatrix() = default;
  CsrMatrix(S semiring, std::size_t dimension,
            std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols,
            std::vector<Value> values, bool strictly_upper)
      : semiring_(std::move(semiring)),
        dimension_(dimension),
        row_ptr_(std::move(row_ptr)),
        cols_(std::move(cols)),
        values_(std::move(values)),
        strictly_upper_(strictly_upper) {
    if (row_ptr_.size() != dimension_ + 1 || row_ptr_.front() != 0 ||
        row_ptr_.back() != cols_.size() || cols_.size() != values_.size()) {
      throw InvalidArgument("csr matrix: inconsistent storage arrays");
    }
  }

  const S& semiring() const { return semiring_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t num_entries() const { return values_.size(); }
  bool strictly_upper() const { return strictly_upper_; }

  // Entries of row i occupy [row_begin(i), row_end(i)).
  std::size_t row_begin(std::size_t i) const { return row_ptr_[i]; }
  std::size_t row_end(std::size_t i) const { return row_ptr_[i + 1]; }
  std::size_t col(std::size_t k) const { return cols_[k]; }
  const Value& value(std::size_t k) const { return values_[k]; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> cols() const { return cols_; }
  std::span<const Value> values() const { return values_; }

  // Stored index of (i, j), or num_entries() if absent.
  std::size_t find(std::size_t i, std::size_t j) const {
    auto first = cols_.begin() + row_ptr_[i];
    auto last = cols_.begin() + row_ptr_[i + 1];
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return num_entries();
    return static_cast<std::size_t>(it - cols_.begin());
  }

 private:
  S semiring_{};
  std::size_t dimension_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<Value> values_;
  bool strictly_upper_ = true;
};

namespace internal {

// Row-compressed assembly shared by csr_from_triplets and build_matrix.
// Entries with equal coordinates are (+)-folded in input order. `order`
// receives the input positions sorted by (row, col, position), and
// `group_ptr[k]..group_ptr[k+1]` indexes the inputs merged into stored
// entry k.
template <DifferentiableSemiring S>
struct Assembly {
  CsrMatrix<S> matrix;
  std::vector<std::size_t> group_ptr;
  std::vector<std::size_t> order;
};

template <DifferentiableSemiring S, typename RowFn, typename ColFn,
          typename ValueFn>
Assembly<S> assemble_csr(const S& semiring, std::size_t dimension,
                         std::size_t count, RowFn row_of, ColFn col_of,
                         ValueFn value_of, bool require_strict_upper,
                         bool drop_zeros) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t r = row_of(k);
    const std::size_t c = col_of(k);
    if (r >= dimension || c >= dimension) {
      throw StructureError("csr: coordinate (" + std::to_string(r) + ", " +
                               std::to_string(c) + ") outside dimension " +
                               std::to_string(dimension),
                           r, c);
    }
    if (require_strict_upper && c <= r) {
      throw StructureError("csr: entry (" + std::to_string(r) + ", " +
                               std::to_string(c) +
                               ") is not strictly upper triangular",
                           r, c);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const std::size_t ra = row_of(a), rb = row_of(b);
                     if (ra != rb) return ra < rb;
                     return col_of(a) < col_of(b);
                   });

  std::vector<std::size_t> row_ptr(dimension + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<typename S::Value> values;
  std::vector<std::size_t> group_ptr{0};
  std::vector<std::size_t> kept_order;
  kept_order.reserve(count);
  for (std::size_t k = 0; k < count;) {
    const std::size_t r = row_of(order[k]);
    const std::size_t c = col_of(order[k]);
    std::size_t end = k + 1;
    typename S::Value acc = value_of(order[k]);
    while (end < count && row_of(order[end]) == r && col_of(order[end]) == c) {
      acc = semiring.plus(acc, value_of(order[end]));
      ++end;
    }
    if (!(drop_zeros && semiring.is_zero(acc))) {
      cols.push_back(c);
      values.push_back(acc);
      ++row_ptr[r + 1];
      kept_order.insert(kept_order.end(), order.begin() + k,
                        order.begin() + end);
      group_ptr.push_back(kept_order.size());
    }
    k = end;
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());

  bool upper = true;
  for (std::size_t i = 0; i < dimension && upper; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (cols[k] <= i) {
        upper = false;
        break;
      }
    }
  }
  return {CsrMatrix<S>(semiring, dimension, std::move(row_ptr),
                       std::move(cols), std::move(values), upper),
          std::move(group_ptr), std::move(kept_order)};
}

}  // namespace internal

// Builds a CSR matrix from (row, col, value) triplets. Duplicates are
// (+)-combined in input order and entries equal to zero() are dropped.
template <DifferentiableSemiring S>
CsrMatrix<S> csr_from_triplets(const S& semiring, std::size_t dimension,
                               std::span<const Triplet<S>> entries,
                               bool require_strict_upper) {
  return internal::assemble_csr(
             semiring, dimension, entries.size(),
             [&](std::size_t k) { return entries[k].row; },
             [&](std::size_t k) { return entries[k].col; },
             [&](std::size_t k) { return entries[k].value; },
             require_strict_upper, /*drop_zeros=*/true)
      .matrix;
}

template <DifferentiableSemiring S>
void require_compatible(const SemiringVector<S>& x,
                        const SemiringVector<S>& y) {
  require_same_semiring(x.semiring(), y.semiring());
  if (x.size() != y.size()) {
    throw InvalidArgument("vector lengths differ: " + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()));
  }
}

// (x1 (x) y1) (+) ... (+) (xK (x) yK), accumulated left to right. Returns
// zero() for empty vectors. Allocates nothing.
template <DifferentiableSemiring S>
typename S::Value dot(const SemiringVector<S>& x, const SemiringVector<S>& y) {
  require_compatible(x, y);
  const S& s = x.semiring();
  if (x.empty()) return s.zero();
  typename S::Value acc = s.times(x[0], y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    acc = s.plus(acc, s.times(x[i], y[i]));
  }
  return acc;
}

template <DifferentiableSemiring S>
struct DotGradients {
  CotangentVector<S> x;
  CotangentVector<S> y;
};

// Vector-Jacobian product of z = dot(x, y). Each product u_i = x_i (x) y_i is
// recomputed rather than stored, and dz/du_i comes straight from the
// morphism, so the backward pass is one flat loop with no intermediate
// storage beyond the two output vectors.
template <DifferentiableSemiring S>
DotGradients<S> dot_vjp(const SemiringVector<S>& x, const SemiringVector<S>& y,
                        const typename S::Value& z,
                        const typename S::Cotangent& delta_z) {
  require_compatible(x, y);
  const S& s = x.semiring();
  DotGradients<S> grads;
  grads.x.reserve(x.size());
  grads.y.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto u = s.times(x[i], y[i]);
    const auto du = s.pullback_through_sum(z, u, delta_z);
    grads.x.push_back(s.vjp_mul_left(x[i], y[i], du));
    grads.y.push_back(s.vjp_mul_right(x[i], y[i], du));
  }
  return grads;
}

}  // namespace fsad

#endif  // FSAD_LINALG_HPP_
