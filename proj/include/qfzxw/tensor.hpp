// Copyright 2026 The qfzxw Authors
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
#include <optional>
#include <span>
#include <vector>

#include "qfzxw/types.hpp"

namespace qfzxw {

/// Dense complex tensor viewed as a linear map from the input legs to the
/// output legs. Entries are row-major over (output multi-index, input
/// multi-index); within each group the first leg is most significant.
class Tensor {
 public:
  /// The scalar 1.
  Tensor() : entries_(1, Complex(1.0, 0.0)) {}
  /// Zero tensor.
  Tensor(DimList out_dims, DimList in_dims);
  Tensor(DimList out_dims, DimList in_dims, std::vector<Complex> entries);

  static Tensor scalar(Complex c);
  static Tensor identity(Dim d);
  /// A state (no inputs) from its amplitudes.
  static Tensor state(DimList dims, std::vector<Complex> amplitudes);

  const DimList& out_dims() const { return out_dims_; }
  const DimList& in_dims() const { return in_dims_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_scalar() const { return out_dims_.empty() && in_dims_.empty(); }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * cols_ + col]; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * cols_ + col]; }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  Tensor scaled(Complex c) const;
  /// Conjugate transpose.
  Tensor adjoint() const;
  /// Plain transpose: inputs and outputs exchanged, order preserved.
  Tensor transposed() const;
  double max_abs() const;

 private:
  DimList out_dims_;
  DimList in_dims_;
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
  std::vector<Complex> entries_;
};

/// Parallel composition: outputs and inputs of `a` come first.
Tensor kron(const Tensor& a, const Tensor& b);

/// Sequential composition a . b (b applied first). Throws SignatureError.
Tensor matmul(const Tensor& a, const Tensor& b);

/// New output leg k is old output leg out_perm[k]; same for inputs.
Tensor permute_legs(const Tensor& t, std::span<const std::size_t> out_perm,
                    std::span<const std::size_t> in_perm);

/// Contracts output leg `out_leg` against input leg `in_leg`.
Tensor partial_trace(const Tensor& t, std::size_t out_leg, std::size_t in_leg);

/// Map-state duality: inputs become extra outputs appended in reverse order.
Tensor bend_to_state(const Tensor& t);

/// Inverse of bend_to_state: the trailing `n_in` outputs, read in reverse,
/// become the inputs.
Tensor unbend(const Tensor& state, std::size_t n_in);

/// Equal signatures and max-norm difference at most `tol`.
bool allclose(const Tensor& a, const Tensor& b, double tol);

/// Max-norm difference; infinity when signatures differ.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// lambda with a ~= lambda * b, when b is nonzero and such a lambda exists.
std::optional<Complex> proportional(const Tensor& a, const Tensor& b, double tol);

/// Row-major strides for a multi-index over `dims`.
std::vector<std::size_t> strides_of(const DimList& dims);

}  // namespace qfzxw
