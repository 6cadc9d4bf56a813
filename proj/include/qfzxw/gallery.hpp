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
#include <string>
#include <string_view>
#include <vector>

#include "qfzxw/diagram.hpp"
#include "qfzxw/rewrite.hpp"
#include "qfzxw/tensor.hpp"

namespace qfzxw {

enum class Comparison { exact, up_to_scalar };

/// An application diagram with a brute-force oracle for its interpretation.
struct GalleryEntry {
  std::string name;
  Diagram diagram;
  Tensor oracle;
  Comparison comparison = Comparison::exact;
};

struct GalleryCheck {
  bool pass = false;
  /// Max entrywise deviation after rescaling by `lambda`.
  double deviation = 0.0;
  /// eval(diagram) = lambda * oracle; 1 for exact comparisons that pass.
  std::optional<Complex> lambda;
};

GalleryCheck check_entry(const GalleryEntry& entry, double tol = 1e-9);

/// Merge n qubits, Hadamard(2^n), split back, reverse the wire order.
/// Oracle: the unnormalized DFT with bit-reversed rows.
/// Throws std::out_of_range unless 1 <= n_qubits <= 8.
GalleryEntry build_qft(std::size_t n_qubits);

/// Unnormalized DFT of size 2^n with row r holding DFT row bitrev(r).
Tensor qft_oracle(std::size_t n_qubits);

/// Qubit control, d-level target: |c, t> -> |c, t + c mod d>. Throws
/// std::out_of_range for d < 2.
GalleryEntry build_mixed_cnot(Dim d);
Tensor mixed_cnot_oracle(Dim d);

struct CnotPowerVerdict {
  std::size_t copies = 0;
  SimplifyResult simplified;
  /// simplify left no nodes and wired input i straight to output i.
  bool rewrites_to_identity = false;
  /// The composite evaluates to the identity.
  bool semantically_identity = false;
};

/// Composes `copies` mixed CNOTs (default d) and simplifies the result.
CnotPowerVerdict cnot_power_identity(Dim d, std::optional<std::size_t> copies = std::nullopt);

/// Spin-n/2 symmetrizer on n qubits. Each qubit is embedded in dimension
/// n + 1, an X spider sums them to the excitation count k, a Z box weights k
/// by 1 / C(n, k), and an X spider with qubit projections fans it back out.
/// Throws std::out_of_range unless 1 <= n <= 4.
GalleryEntry build_symmetrizer(std::size_t n);

/// (1/n!) sum over permutations of the n qubit wires.
Tensor symmetrizer_oracle(std::size_t n);

/// |n> -> sum_k C(n, k)^(1/2) |k>|n - k>, for n < d.
Tensor white_triangle_tensor(Dim d);

/// The white triangle realized as a synthesized normal-form map.
GalleryEntry build_white_triangle(Dim d);

/// Names accepted by build_gallery.
const std::vector<std::string>& gallery_names();

/// Builds a gallery entry by name with its size parameter: qubit count for
/// qft and symmetrizer, d for cnot and triangle. Throws std::invalid_argument
/// for unknown names.
GalleryEntry build_gallery(std::string_view name, std::size_t param);

}  // namespace qfzxw
