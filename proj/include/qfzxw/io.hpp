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

#include <string>
#include <string_view>

#include "qfzxw/diagram.hpp"
#include "qfzxw/normal_form.hpp"
#include "qfzxw/tensor.hpp"

namespace qfzxw {

/// Version string written to and accepted from diagram documents.
inline constexpr std::string_view kDocumentVersion = "1";

/// JSON document for a diagram.
///
///   {"version": "1", "inputs": [..], "outputs": [..],
///    "nodes": [{"id": 0, "kind": "zbox", "dims": [..], "n_in": 1,
///               "params": [[re, im], ..]}, ..],
///    "edges": [[{"node": 0, "port": 1}, {"boundary": "out", "index": 0}], ..]}
///
/// Kind-specific fields: zbox n_in and params; w fanout; w_dagger fanin;
/// x n_in and n_out; multiplier label (reduced mod d); scalar params holds
/// the single value. Splitter, merger and swap list dims [m, n].
std::string serialize(const Diagram& d);

/// Throws ParseError for malformed documents and unknown kind tags, and
/// ValidationError when a node violates its generator invariants. The
/// result is not validated as a whole.
Diagram parse_diagram(std::string_view text);

/// Graphviz rendering. Output only.
std::string to_dot(const Diagram& d);

/// "(re+imi)" with up to 17 significant digits.
std::string format_complex(Complex c);

/// "dims: (2, 3), coeffs: (1+0i), .."
std::string format_normal_form(const NormalForm& nf);

/// Header lines "out_dims: .." and "in_dims: ..", then one "re im" line per
/// entry in row-major order, 17 significant digits.
std::string format_tensor_text(const Tensor& t);

/// {"out_dims": [..], "in_dims": [..], "entries": [[re, im], ..]}
std::string format_tensor_json(const Tensor& t);

}  // namespace qfzxw
