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
#include <random>

#include "qfzxw/diagram.hpp"
#include "qfzxw/tensor.hpp"

namespace qfzxw::testing {

struct RandomDiagramOptions {
  std::size_t max_nodes = 6;
  std::size_t max_dim = 4;
  /// Upper bound on the product of the open wire dims at every layer.
  std::size_t max_width = 64;
};

/// Circuit-style random diagram: generators are stacked in layers over a
/// running list of wires, starting from `inputs`.
Diagram random_diagram(std::mt19937_64& rng, const DimList& inputs,
                       const RandomDiagramOptions& options = {});

/// As above with 0 to 2 random input wires.
Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& options = {});

DimList random_dims(std::mt19937_64& rng, std::size_t min_count, std::size_t max_count,
                    std::size_t max_dim);

/// Entries drawn from a standard complex normal distribution.
Tensor random_tensor(std::mt19937_64& rng, const DimList& out_dims, const DimList& in_dims = {});

}  // namespace qfzxw::testing
