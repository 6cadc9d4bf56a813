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
#include <string_view>
#include <variant>

#include "qfzxw/types.hpp"

namespace qfzxw {

/// Mixed-dimensional Z box. The first `n_in` legs are inputs, the rest
/// outputs. `params` has length min(legs) - 1.
struct ZBox {
  DimList legs;
  std::size_t n_in = 0;
  ParamVec params;
  bool operator==(const ZBox&) const = default;
};

/// W node: one input, `fanout` outputs, all of dimension d.
struct WNode {
  Dim d;
  std::size_t fanout = 1;
  bool operator==(const WNode&) const = default;
};

/// Transpose of the W node: `fanin` inputs, one output.
struct WNodeDagger {
  Dim d;
  std::size_t fanin = 1;
  bool operator==(const WNodeDagger&) const = default;
};

struct Hadamard {
  Dim d;
  bool operator==(const Hadamard&) const = default;
};

/// Phaseless X spider.
struct XSpider {
  Dim d;
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  bool operator==(const XSpider&) const = default;
};

/// Dimension splitter: input m*n, outputs (m, n).
struct Splitter {
  Dim m;
  Dim n;
  bool operator==(const Splitter&) const = default;
};

/// Dimension merger: inputs (m, n), output m*n.
struct Merger {
  Dim m;
  Dim n;
  bool operator==(const Merger&) const = default;
};

/// Inputs (m, n), outputs (n, m).
struct Swap {
  Dim m;
  Dim n;
  bool operator==(const Swap&) const = default;
};

struct Identity {
  Dim d;
  bool operator==(const Identity&) const = default;
};

/// Bell state: no inputs, two outputs.
struct Cap {
  Dim d;
  bool operator==(const Cap&) const = default;
};

/// Bell effect: two inputs, no outputs.
struct Cup {
  Dim d;
  bool operator==(const Cup&) const = default;
};

/// |j> -> |label * j mod d>. `label` is kept reduced modulo d.
struct Multiplier {
  Dim d;
  std::size_t label = 1;
  bool operator==(const Multiplier&) const = default;
};

/// Zero-legged global factor.
struct Scalar {
  Complex value{1.0, 0.0};
  bool operator==(const Scalar&) const = default;
};

using GeneratorKind = std::variant<ZBox, WNode, WNodeDagger, Hadamard, XSpider, Splitter,
                                   Merger, Swap, Identity, Cap, Cup, Multiplier, Scalar>;

enum class PortSide { input, output };

/// A validated generator. Ports are numbered inputs first, then outputs.
class Generator {
 public:
  /// Throws std::invalid_argument when the kind's invariants fail. Multiplier
  /// labels are reduced modulo d.
  explicit Generator(GeneratorKind kind);

  const GeneratorKind& kind() const { return kind_; }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(kind_);
  }

  /// Stable tag used by serialization and canonical ordering.
  std::string_view tag() const;

  const DimList& input_dims() const { return inputs_; }
  const DimList& output_dims() const { return outputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t num_ports() const { return inputs_.size() + outputs_.size(); }

  Dim port_dim(std::size_t port) const;
  PortSide port_side(std::size_t port) const;

  bool operator==(const Generator& other) const { return kind_ == other.kind_; }

 private:
  GeneratorKind kind_;
  DimList inputs_;
  DimList outputs_;
};

// Convenience factories.
Generator z_box(DimList legs, std::size_t n_in, ParamVec params);
Generator w_node(Dim d, std::size_t fanout);
Generator w_node_dagger(Dim d, std::size_t fanin);
Generator hadamard(Dim d);
Generator x_spider(Dim d, std::size_t n_in, std::size_t n_out);
Generator splitter(Dim m, Dim n);
Generator merger(Dim m, Dim n);
Generator swap(Dim m, Dim n);
Generator identity(Dim d);
Generator cap(Dim d);
Generator cup(Dim d);
Generator multiplier(Dim d, long long label);
Generator scalar(Complex value);

/// Phaseless Z box parameters (all ones) for the given minimal dimension.
ParamVec phaseless_params(std::size_t min_dimension);

}  // namespace qfzxw
