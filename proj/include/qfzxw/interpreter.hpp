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

#include "qfzxw/diagram.hpp"
#include "qfzxw/generator.hpp"
#include "qfzxw/tensor.hpp"

namespace qfzxw {

/// The standard interpretation of a single generator, as a map from its
/// input ports to its output ports.
///
/// Conventions that the formulas leave open are fixed as follows:
///   - Hadamard(d) has entries w^{jk}, w = e^{2 pi i / d}, unnormalized.
///   - XSpider is 1 on every basis assignment whose inputs and outputs have
///     equal sums modulo d, 0 elsewhere.
///   - Multiplier(d, m) sends |j> to |m j mod d>.
Tensor generator_semantics(const Generator& g);

/// Evaluates a diagram by contracting its internal wires. Output legs follow
/// the diagram's output order, input legs its input order. The empty diagram
/// evaluates to the scalar 1. Throws ValidationError for malformed diagrams.
Tensor eval(const Diagram& d);

/// w^k for w = e^{2 pi i / d}. Quarter turns are exact.
Complex root_of_unity(std::size_t k, std::size_t d);

}  // namespace qfzxw
