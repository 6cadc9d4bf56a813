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

#include "qfzxw/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace qfzxw {

std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::input:
      return "in[" + std::to_string(e.id) + "]";
    case Endpoint::Kind::output:
      return "out[" + std::to_string(e.id) + "]";
    case Endpoint::Kind::node:
      break;
  }
  return "node " + std::to_string(e.id) + " port " + std::to_string(e.port);
}

Diagram::Diagram(DimList inputs, DimList outputs, std::vector<Generator> nodes,
                 std::vector<Edge> edges)
    : inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    index_.try_emplace(edges_[i].a, i);
    index_.try_emplace(edges_[i].b, i);
  }
}

bool Diagram::has_endpoint(const Endpoint& e) const {
  switch (e.kind) {
    case Endpoint::Kind::input:
      return e.id < inputs_.size() && e.port == 0;
    case Endpoint::Kind::output:
      return e.id < outputs_.size() && e.port == 0;
    case Endpoint::Kind::node:
      break;
  }
  return e.id < nodes_.size() && e.port < nodes_[e.id].num_ports();
}

Dim Diagram::endpoint_dim(const Endpoint& e) const {
  if (!has_endpoint(e)) throw std::out_of_range("no such endpoint: " + to_string(e));
  switch (e.kind) {
    case Endpoint::Kind::input:
      return inputs_[e.id];
    case Endpoint::Kind::output:
      return outputs_[e.id];
    case Endpoint::Kind::node:
      break;
  }
  return nodes_[e.id].port_dim(e.port);
}

std::optional<std::size_t> Diagram::edge_at(const Endpoint& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Endpoint& Diagram::other_end(std::size_t edge, const Endpoint& e) const {
  const Edge& ed = edges_.at(edge);
  return ed.a == e ? ed.b : ed.a;
}

Diagram Diagram::with_node(std::size_t id, Generator g) const {
  auto nodes = nodes_;
  nodes.at(id) = std::move(g);
  return {inputs_, outputs_, std::move(nodes), edges_};
}

namespace {

std::vector<Edge> sorted_edges(const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.push_back(e.normalized());
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

}  // namespace

bool Diagram::operator==(const Diagram& other) const {
  return inputs_ == other.inputs_ && outputs_ == other.outputs_ && nodes_ == other.nodes_ &&
         sorted_edges(edges_) == sorted_edges(other.edges_);
}

std::vector<Violation> validate(const Diagram& d) {
  std::vector<Violation> out;
  std::map<Endpoint, std::size_t> uses;
  for (std::size_t i = 0; i < d.edges().size(); ++i) {
    const Edge& e = d.edges()[i];
    bool ok = true;
    for (const Endpoint& p : {e.a, e.b}) {
      if (!d.has_endpoint(p)) {
        out.push_back({"edge " + std::to_string(i) + " references missing " + to_string(p), {p}});
        ok = false;
      } else {
        ++uses[p];
      }
    }
    if (ok && d.endpoint_dim(e.a) != d.endpoint_dim(e.b)) {
      out.push_back({"edge " + std::to_string(i) + " joins " + to_string(e.a) + " (dim " +
                         std::to_string(d.endpoint_dim(e.a).value()) + ") to " + to_string(e.b) +
                         " (dim " + std::to_string(d.endpoint_dim(e.b).value()) + ")",
                     {e.a, e.b}});
    }
  }
  auto check = [&](const Endpoint& p) {
    auto it = uses.find(p);
    const std::size_t n = it == uses.end() ? 0 : it->second;
    if (n == 0) {
      out.push_back({"dangling " + to_string(p), {p}});
    } else if (n > 1) {
      out.push_back({to_string(p) + " used by " + std::to_string(n) + " edges", {p}});
    }
  };
  for (std::size_t i = 0; i < d.inputs().size(); ++i) check(Endpoint::input(i));
  for (std::size_t i = 0; i < d.outputs().size(); ++i) check(Endpoint::output(i));
  for (std::size_t n = 0; n < d.node_count(); ++n) {
    for (std::size_t p = 0; p < d.node(n).num_ports(); ++p) check(Endpoint::at(n, p));
  }
  return out;
}

void require_valid(const Diagram& d) {
  const auto violations = validate(d);
  if (violations.empty()) return;
  std::string msg = "invalid diagram:";
  for (const auto& v : violations) msg += "\n  " + v.message;
  throw ValidationError(msg);
}

Diagram node(Generator g) {
  DiagramBuilder b(g.input_dims(), g.output_dims());
  const std::size_t n_in = g.num_inputs();
  const std::size_t n_out = g.num_outputs();
  const std::size_t id = b.add(std::move(g));
  for (std::size_t i = 0; i < n_in; ++i) b.connect(Endpoint::input(i), Endpoint::at(id, i));
  for (std::size_t j = 0; j < n_out; ++j) b.connect(Endpoint::at(id, n_in + j), Endpoint::output(j));
  return b.build();
}

Diagram with_open_ports(std::vector<Generator> nodes, std::vector<Edge> edges) {
  std::set<Endpoint> used;
  for (const Edge& e : edges) {
    used.insert(e.a);
    used.insert(e.b);
  }
  DimList inputs, outputs;
  std::vector<Edge> boundary;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (std::size_t p = 0; p < nodes[n].num_ports(); ++p) {
      const Endpoint e = Endpoint::at(n, p);
      if (used.contains(e)) continue;
      if (nodes[n].port_side(p) == PortSide::input) {
        boundary.push_back({Endpoint::input(inputs.size()), e});
        inputs.push_back(nodes[n].port_dim(p));
      } else {
        boundary.push_back({e, Endpoint::output(outputs.size())});
        outputs.push_back(nodes[n].port_dim(p));
      }
    }
  edges.insert(edges.end(), boundary.begin(), boundary.end());
  return {std::move(inputs), std::move(outputs), std::move(nodes), std::move(edges)};
}

Diagram wires(const DimList& dims) {
  DiagramBuilder b(dims, dims);
  for (std::size_t i = 0; i < dims.size(); ++i) b.connect(Endpoint::input(i), Endpoint::output(i));
  return b.build();
}

Diagram seq_compose(const Diagram& top, const Diagram& bottom) {
  const DimList& mid = bottom.outputs();
  if (mid.size() != top.inputs().size()) {
    throw SignatureError("cannot compose: bottom has " + std::to_string(mid.size()) +
                         " outputs, top has " + std::to_string(top.inputs().size()) + " inputs");
  }
  for (std::size_t p = 0; p < mid.size(); ++p) {
    if (mid[p] != top.inputs()[p]) {
      throw SignatureError("cannot compose: position " + std::to_string(p) + " has dim " +
                           std::to_string(mid[p].value()) + " below and " +
                           std::to_string(top.inputs()[p].value()) + " above");
    }
  }

  std::vector<Generator> nodes = bottom.nodes();
  nodes.insert(nodes.end(), top.nodes().begin(), top.nodes().end());
  const std::size_t offset = bottom.node_count();
  // Interface points become temporary junctions with ids past the real nodes.
  const std::size_t junction_base = nodes.size();
  auto junction = [&](std::size_t p) { return Endpoint::at(junction_base + p, 0); };
  auto is_junction = [&](const Endpoint& e) { return e.is_node() && e.id >= junction_base; };

  std::vector<Edge> edges;
  for (const Edge& e : bottom.edges()) {
    auto map = [&](const Endpoint& p) {
      return p.kind == Endpoint::Kind::output ? junction(p.id) : p;
    };
    edges.push_back({map(e.a), map(e.b)});
  }
  for (const Edge& e : top.edges()) {
    auto map = [&](const Endpoint& p) {
      if (p.kind == Endpoint::Kind::input) return junction(p.id);
      if (p.is_node()) return Endpoint::at(p.id + offset, p.port);
      return p;
    };
    edges.push_back({map(e.a), map(e.b)});
  }

  std::vector<bool> alive(edges.size(), true);
  for (std::size_t p = 0; p < mid.size(); ++p) {
    const Endpoint j = junction(p);
    std::vector<std::size_t> inc;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive[i]) continue;
      if (edges[i].a == j) inc.push_back(i);
      if (edges[i].b == j) inc.push_back(i);
    }
    if (inc.size() == 2 && inc[0] == inc[1]) {
      // Closed loop of bare wire.
      alive[inc[0]] = false;
      nodes.push_back(scalar(Complex(static_cast<double>(mid[p].value()), 0.0)));
      continue;
    }
    if (inc.size() != 2) {
      throw ValidationError("cannot compose: interface position " + std::to_string(p) +
                            " is not wired on both sides");
    }
    const Endpoint x = edges[inc[0]].a == j ? edges[inc[0]].b : edges[inc[0]].a;
    const Endpoint y = edges[inc[1]].a == j ? edges[inc[1]].b : edges[inc[1]].a;
    alive[inc[0]] = false;
    alive[inc[1]] = false;
    edges.push_back({x, y});
    alive.push_back(true);
  }

  std::vector<Edge> final_edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) continue;
    if (is_junction(edges[i].a) || is_junction(edges[i].b)) {
      throw ValidationError("cannot compose: unresolved interface wire");
    }
    final_edges.push_back(edges[i]);
  }
  return {bottom.inputs(), top.outputs(), std::move(nodes), std::move(final_edges)};
}

Diagram par_compose(const Diagram& left, const Diagram& right) {
  DimList inputs = left.inputs();
  inputs.insert(inputs.end(), right.inputs().begin(), right.inputs().end());
  DimList outputs = left.outputs();
  outputs.insert(outputs.end(), right.outputs().begin(), right.outputs().end());
  std::vector<Generator> nodes = left.nodes();
  nodes.insert(nodes.end(), right.nodes().begin(), right.nodes().end());
  std::vector<Edge> edges = left.edges();
  const std::size_t node_off = left.node_count();
  const std::size_t in_off = left.inputs().size();
  const std::size_t out_off = left.outputs().size();
  for (const Edge& e : right.edges()) {
    auto map = [&](Endpoint p) {
      switch (p.kind) {
        case Endpoint::Kind::input:
          p.id += in_off;
          break;
        case Endpoint::Kind::output:
          p.id += out_off;
          break;
        case Endpoint::Kind::node:
          p.id += node_off;
          break;
      }
      return p;
    };
    edges.push_back({map(e.a), map(e.b)});
  }
  return {std::move(inputs), std::move(outputs), std::move(nodes), std::move(edges)};
}

Diagram transpose(const Diagram& d) {
  // Bending a wire through a cap or cup is an index identification, so moving
  // a boundary endpoint to the other side is the whole construction.
  std::vector<Edge> edges;
  edges.reserve(d.edge_count());
  for (const Edge& e : d.edges()) {
    auto flip = [](Endpoint p) {
      if (p.kind == Endpoint::Kind::input) {
        p.kind = Endpoint::Kind::output;
      } else if (p.kind == Endpoint::Kind::output) {
        p.kind = Endpoint::Kind::input;
      }
      return p;
    };
    edges.push_back({flip(e.a), flip(e.b)});
  }
  return {d.outputs(), d.inputs(), d.nodes(), std::move(edges)};
}

Diagram bend_to_state(const Diagram& d) {
  const std::size_t n_in = d.inputs().size();
  const std::size_t n_out = d.outputs().size();
  DimList outputs = d.outputs();
  outputs.insert(outputs.end(), d.inputs().rbegin(), d.inputs().rend());
  std::vector<Edge> edges;
  edges.reserve(d.edge_count());
  for (const Edge& e : d.edges()) {
    auto map = [&](const Endpoint& p) {
      return p.kind == Endpoint::Kind::input ? Endpoint::output(n_out + (n_in - 1 - p.id)) : p;
    };
    edges.push_back({map(e.a), map(e.b)});
  }
  return {{}, std::move(outputs), d.nodes(), std::move(edges)};
}

Diagram unbend(const Diagram& state, std::size_t n_in) {
  if (!state.inputs().empty()) throw std::invalid_argument("unbend expects a state");
  const DimList& all = state.outputs();
  if (n_in > all.size()) throw std::invalid_argument("unbend: too many input legs");
  const std::size_t n_out = all.size() - n_in;
  DimList outputs(all.begin(), all.begin() + static_cast<long>(n_out));
  DimList inputs(all.rbegin(), all.rbegin() + static_cast<long>(n_in));
  std::vector<Edge> edges;
  edges.reserve(state.edge_count());
  for (const Edge& e : state.edges()) {
    auto map = [&](const Endpoint& p) {
      if (p.kind == Endpoint::Kind::output && p.id >= n_out) {
        return Endpoint::input(n_in - 1 - (p.id - n_out));
      }
      return p;
    };
    edges.push_back({map(e.a), map(e.b)});
  }
  return {std::move(inputs), std::move(outputs), state.nodes(), std::move(edges)};
}

Diagram green_spider(Dim d, std::size_t n_in, std::size_t n_out, std::span<const double> alphas) {
  if (alphas.size() + 1 != d.value()) {
    throw std::invalid_argument("green spider of dim " + std::to_string(d.value()) + " needs " +
                                std::to_string(d.value() - 1) + " phases, got " +
                                std::to_string(alphas.size()));
  }
  ParamVec params;
  params.reserve(alphas.size());
  for (double a : alphas) params.push_back(std::polar(1.0, a));
  return node(z_box(DimList(n_in + n_out, d), n_in, std::move(params)));
}

Diagram multi_splitter(const DimList& dims) {
  if (dims.empty()) throw std::invalid_argument("multi_splitter needs at least one leg");
  if (dims.size() == 1) return wire(dims[0]);
  DiagramBuilder b({Dim(product(dims))}, dims);
  Endpoint source = Endpoint::input(0);
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const DimList rest(dims.begin() + static_cast<long>(k) + 1, dims.end());
    const std::size_t s = b.add(splitter(dims[k], Dim(product(rest))));
    b.connect(source, Endpoint::at(s, 0));
    b.connect(Endpoint::at(s, 1), Endpoint::output(k));
    source = Endpoint::at(s, 2);
  }
  b.connect(source, Endpoint::output(dims.size() - 1));
  return b.build();
}

Diagram multi_merger(const DimList& dims) { return transpose(multi_splitter(dims)); }

Diagram mixed_z_box(const DimList& in_dims, const DimList& out_dims, const ParamVec& params,
                    ZBoxConstruction construction) {
  DimList legs = in_dims;
  legs.insert(legs.end(), out_dims.begin(), out_dims.end());
  if (construction == ZBoxConstruction::primitive) {
    return node(z_box(legs, in_dims.size(), params));
  }
  // Validates the parameter length against the mixed legs.
  (void)z_box(legs, in_dims.size(), params);

  const Dim big(product(legs));
  ParamVec padded = params;
  padded.resize(big.value() - 1, Complex(0.0, 0.0));

  DiagramBuilder b(in_dims, out_dims);
  const std::size_t center = b.add(z_box(DimList(legs.size(), big), in_dims.size(), padded));
  for (std::size_t i = 0; i < in_dims.size(); ++i) {
    const Dim pad(big.value() / in_dims[i].value());
    const std::size_t m = b.add(merger(pad, in_dims[i]));
    const std::size_t zero = b.add(x_spider(pad, 0, 1));
    b.connect(Endpoint::at(zero, 0), Endpoint::at(m, 0));
    b.connect(Endpoint::input(i), Endpoint::at(m, 1));
    b.connect(Endpoint::at(m, 2), Endpoint::at(center, i));
  }
  for (std::size_t j = 0; j < out_dims.size(); ++j) {
    const Dim pad(big.value() / out_dims[j].value());
    const std::size_t s = b.add(splitter(pad, out_dims[j]));
    const std::size_t zero = b.add(x_spider(pad, 1, 0));
    b.connect(Endpoint::at(center, in_dims.size() + j), Endpoint::at(s, 0));
    b.connect(Endpoint::at(s, 1), Endpoint::at(zero, 0));
    b.connect(Endpoint::at(s, 2), Endpoint::output(j));
  }
  return b.build();
}

Diagram canonical_relabel(const Diagram& d) {
  const std::size_t n = d.node_count();
  constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n, unreachable);
  std::vector<std::vector<std::size_t>> adj(n);
  std::deque<std::size_t> queue;
  for (const Edge& e : d.edges()) {
    if (e.a.is_node() && e.b.is_node()) {
      if (e.a.id < n && e.b.id < n) {
        adj[e.a.id].push_back(e.b.id);
        adj[e.b.id].push_back(e.a.id);
      }
    } else {
      for (const Endpoint& p : {e.a, e.b}) {
        if (p.is_node() && p.id < n && dist[p.id] == unreachable) {
          dist[p.id] = 1;
          queue.push_back(p.id);
        }
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (dist[w] == unreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::make_tuple(d.node(x).tag(), dist[x], x) <
           std::make_tuple(d.node(y).tag(), dist[y], y);
  });
  std::vector<std::size_t> new_id(n);
  std::vector<Generator> nodes;
  nodes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    new_id[order[k]] = k;
    nodes.push_back(d.node(order[k]));
  }
  std::vector<Edge> edges;
  for (const Edge& e : d.edges()) {
    auto map = [&](Endpoint p) {
      if (p.is_node() && p.id < n) p.id = new_id[p.id];
      return p;
    };
    edges.push_back(Edge{map(e.a), map(e.b)}.normalized());
  }
  edges = sorted_edges(edges);
  return {d.inputs(), d.outputs(), std::move(nodes), std::move(edges)};
}

bool structurally_equal(const Diagram& a, const Diagram& b) {
  return canonical_relabel(a) == canonical_relabel(b);
}

}  // namespace qfzxw
