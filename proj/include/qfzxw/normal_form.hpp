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
#include <vector>

#include "qfzxw/diagram.hpp"
#include "qfzxw/tensor.hpp"

namespace qfzxw {

/// Mixed-radix digits of an index, most significant leg first.
struct IndexDigits {
  DimList dims;
  std::vector<std::size_t> digits;
  bool operator==(const IndexDigits&) const = default;
};

/// The unique decomposition k = sum_i e_i * prod_{l > i} dims[l] with
/// 0 <= e_i < dims[i]. Throws std::out_of_range when k >= product(dims).
IndexDigits digits(std::size_t k, const DimList& dims);
std::size_t recompose(const IndexDigits& d);

/// Canonical representative of a diagram: the coefficient vector of its
/// interpretation bent into a state.
struct NormalForm {
  DimList out_dims;
  std::vector<Complex> coeffs;
  bool operator==(const NormalForm&) const = default;
};

/// Magnitudes below this are stored as exact zeros by synthesize.
inline constexpr double kZeroCoefficient = 1e-14;

/// Builds the normal-form diagram of a state.
///
/// Layout, for coefficients a_k over output legs of dims m_{s-1} .. m_0:
///   - a dim-2 root Z box |0> + |1> feeds a chain of binary W nodes, one
///     branch per index k with a nonzero branch weight c_k, where
///     c_0 = a_0 - 1 and c_k = a_k otherwise (the all-|0> term of the root
///     supplies the missing 1 on index 0);
///   - branch k is a mixed Z box with parameter c_k that copies the
///     excitation onto one wire per leg i with digit e_{k,i} != 0;
///   - that wire passes through Multiplier(m_i, e_{k,i}) (omitted when the
///     digit is 1) and is summed into leg i by a chain of 2->1 X spiders.
/// Legs with no contribution end in the X state |0>. Every wire on the path
/// of leg i has dimension m_i; only the W backbone is qubit-valued.
///
/// Throws std::invalid_argument if `state` has inputs.
Diagram synthesize(const Tensor& state);

/// Synthesizes an arbitrary map by bending it to a state and back.
Diagram synthesize_map(const Tensor& t);

/// Normal form of a tensor's bent state.
NormalForm normal_form_of(const Tensor& t);

/// Normal form of a diagram. Throws ValidationError.
NormalForm normalize(const Diagram& d);

/// The state a normal form represents.
Tensor to_tensor(const NormalForm& nf);

/// Same leg dimensions and coefficients within `tol` (no rescaling).
bool nf_equal(const NormalForm& a, const NormalForm& b, double tol);

/// Index of the first coefficient differing by more than `tol`. Returns 0
/// when the leg dimensions differ.
std::optional<std::size_t> first_difference(const NormalForm& a, const NormalForm& b,
                                            double tol);

/// Coefficient-level tensor product: legs of `a` first.
NormalForm nf_tensor_product(const NormalForm& a, const NormalForm& b);

/// Contracts legs s and t of equal dimension against each other.
NormalForm nf_partial_trace(const NormalForm& a, std::size_t s, std::size_t t);

}  // namespace qfzxw
