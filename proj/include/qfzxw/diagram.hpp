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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfzxw/generator.hpp"
#include "qfzxw/types.hpp"

namespace qfzxw {

/// One end of an edge: a numbered port of a node, or a boundary position.
struct Endpoint {
  enum class Kind : std::uint8_t { node, input, output };

  Kind kind = Kind::node;
  std::size_t id = 0;    // node id, or boundary position
  std::size_t port = 0;  // always 0 for boundary endpoints

  static Endpoint at(std::size_t node, std::size_t port) { return {Kind::node, node, port}; }
  static Endpoint input(std::size_t position) { return {Kind::input, position, 0}; }
  static Endpoint output(std::size_t position) { return {Kind::output, position, 0}; }

  bool is_node() const { return kind == Kind::node; }
  bool is_boundary() const { return kind != Kind::node; }

  auto operator<=>(const Endpoint&) const = default;
};

std::string to_string(const Endpoint& e);

/// Undirected edge. Wires carry no state.
struct Edge {
  Endpoint a;
  Endpoint b;

  /// Copy with endpoints in ascending order.
  Edge normalized() const { return b < a ? Edge{b, a} : *this; }
  bool operator==(const Edge&) const = default;
};

/// An open graph of generators with an ordered boundary.
///
/// Diagrams are immutable values: every operation below returns a new one.
/// Construction does not validate; call validate() or require_valid().
class Diagram {
 public:
  Diagram() = default;
  Diagram(DimList inputs, DimList outputs, std::vector<Generator> nodes, std::vector<Edge> edges);

  const DimList& inputs() const { return inputs_; }
  const DimList& outputs() const { return outputs_; }
  const std::vector<Generator>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Generator& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_endpoint(const Endpoint& e) const;
  Dim endpoint_dim(const Endpoint& e) const;
  /// First edge touching `e`, if any.
  std::optional<std::size_t> edge_at(const Endpoint& e) const;
  /// The end of `edge` opposite to `e`.
  const Endpoint& other_end(std::size_t edge, const Endpoint& e) const;

  /// Same diagram with node `id` replaced. The port signature may change;
  /// the result is not validated.
  Diagram with_node(std::size_t id, Generator g) const;

  /// Exact equality: identical node ids, boundary and edge multiset.
  bool operator==(const Diagram& other) const;

 private:
  DimList inputs_;
  DimList outputs_;
  std::vector<Generator> nodes_;
  std::vector<Edge> edges_;
  std::map<Endpoint, std::size_t> index_;
};

/// Incremental construction of a diagram with a fixed boundary.
class DiagramBuilder {
 public:
  DiagramBuilder(DimList inputs, DimList outputs)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {}

  std::size_t add(Generator g) {
    nodes_.push_back(std::move(g));
    return nodes_.size() - 1;
  }
  void connect(Endpoint a, Endpoint b) { edges_.push_back({a, b}); }
  const Generator& node(std::size_t id) const { return nodes_.at(id); }

  Diagram build() const { return {inputs_, outputs_, nodes_, edges_}; }

 private:
  DimList inputs_;
  DimList outputs_;
  std::vector<Generator> nodes_;
  std::vector<Edge> edges_;
};

struct Violation {
  std::string message;
  std::vector<Endpoint> endpoints;
};

/// Every invariant violation in `d`; empty when the diagram is well formed.
std::vector<Violation> validate(const Diagram& d);

/// Throws ValidationError listing all violations.
void require_valid(const Diagram& d);

/// Single-generator diagram with the boundary wired to every port in order.
Diagram node(Generator g);

/// Diagram over `nodes` and internal `edges` whose boundary is every port
/// left unconnected: input ports become inputs and output ports outputs, in
/// node then port order.
Diagram with_open_ports(std::vector<Generator> nodes, std::vector<Edge> edges);

/// Bare wires: identity on `dims` with no nodes.
Diagram wires(const DimList& dims);
inline Diagram wire(Dim d) { return wires({d}); }

/// `bottom` followed by `top`. Throws SignatureError naming the first
/// mismatched position.
Diagram seq_compose(const Diagram& top, const Diagram& bottom);

/// Side by side, `left` first.
Diagram par_compose(const Diagram& left, const Diagram& right);

/// Exchanges inputs and outputs. The interpretation of the result is the
/// matrix transpose of the interpretation of `d`.
Diagram transpose(const Diagram& d);

/// Map-state duality on diagrams: inputs become extra outputs appended in
/// reverse order. Matches bend_to_state on tensors.
Diagram bend_to_state(const Diagram& d);

/// Inverse of bend_to_state: the trailing `n_in` outputs, read in reverse,
/// become the inputs.
Diagram unbend(const Diagram& state, std::size_t n_in);

/// Uniform-dimension Z box with parameters e^{i alpha_j}.
Diagram green_spider(Dim d, std::size_t n_in, std::size_t n_out, std::span<const double> alphas);

/// Right-nested chain of binary splitters, input dimension = product(dims).
Diagram multi_splitter(const DimList& dims);
Diagram multi_merger(const DimList& dims);

enum class ZBoxConstruction {
  primitive,  // one mixed Z box node
  expanded,   // merge every leg up to d = prod(legs), uniform Z box, split back
};

Diagram mixed_z_box(const DimList& in_dims, const DimList& out_dims, const ParamVec& params,
                    ZBoxConstruction construction = ZBoxConstruction::primitive);

/// Renumbers nodes by (kind tag, distance from the boundary, insertion order)
/// and sorts edges.
Diagram canonical_relabel(const Diagram& d);

/// Equality after canonical relabeling.
bool structurally_equal(const Diagram& a, const Diagram& b);

}  // namespace qfzxw
