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

#include "qfzxw/rewrite.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qfzxw/interpreter.hpp"

namespace qfzxw {

namespace {

constexpr std::array<std::pair<RuleId, std::string_view>, 9> kRuleNames{{
    {RuleId::ScalarFold, "ScalarFold"},
    {RuleId::RemoveIdentitySpider, "RemoveIdentitySpider"},
    {RuleId::WSingleLeg, "WSingleLeg"},
    {RuleId::MultiplierCompose, "MultiplierCompose"},
    {RuleId::SplitterMergerCancel, "SplitterMergerCancel"},
    {RuleId::SplitterAssoc, "SplitterAssoc"},
    {RuleId::FuseZ, "FuseZ"},
    {RuleId::FuseX, "FuseX"},
    {RuleId::HopfReduce, "HopfReduce"},
}};

// ---------------------------------------------------------------------------
// Local surgery.

// Nodes in `removed` are deleted, `added` are appended, and every pair in
// `joins` is fused into one wire. Ports of added node k are addressed as
// node id node_count() + k. A wire whose ends are both deleted and not
// joined disappears; a closed loop of joined wires becomes Scalar(d).
struct Replacement {
  std::vector<std::size_t> removed;
  std::vector<Generator> added;
  std::vector<std::pair<Endpoint, Endpoint>> joins;
};

class Endpoints {
 public:
  std::size_t id(const Endpoint& e) {
    auto [it, fresh] = index_.try_emplace(e, parent_.size());
    if (fresh) {
      parent_.push_back(parent_.size());
      items_.push_back(e);
    }
    return it->second;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(const Endpoint& a, const Endpoint& b) { parent_[find(id(a))] = find(id(b)); }
  const std::vector<Endpoint>& items() const { return items_; }

 private:
  std::map<Endpoint, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<Endpoint> items_;
};

Diagram replace(const Diagram& d, const Replacement& r) {
  const std::size_t n = d.node_count();
  std::vector<bool> dead(n, false);
  for (std::size_t id : r.removed) dead.at(id) = true;
  auto is_dead = [&](const Endpoint& e) { return e.is_node() && e.id < n && dead[e.id]; };

  Endpoints uf;
  std::set<Endpoint> joined;
  std::vector<Edge> edges;
  for (const Edge& e : d.edges()) {
    if (is_dead(e.a) || is_dead(e.b)) {
      uf.unite(e.a, e.b);
    } else {
      edges.push_back(e);
    }
  }
  for (const auto& [a, b] : r.joins) {
    uf.unite(a, b);
    joined.insert(a);
    joined.insert(b);
  }

  std::map<std::size_t, std::vector<Endpoint>> components;
  for (const Endpoint& e : uf.items()) components[uf.find(uf.id(e))].push_back(e);

  std::vector<Generator> loops;
  for (const auto& [root, members] : components) {
    std::vector<Endpoint> open;
    bool closed = true;
    for (const Endpoint& e : members) {
      if (!is_dead(e)) {
        open.push_back(e);
      } else if (!joined.contains(e)) {
        closed = false;
      }
    }
    if (open.size() == 2) {
      edges.push_back({open[0], open[1]});
    } else if (open.empty() && closed) {
      loops.push_back(scalar(Complex(static_cast<double>(d.endpoint_dim(members[0]).value()), 0.0)));
    } else if (!open.empty()) {
      throw std::logic_error("rewrite left a dangling wire at " + to_string(open[0]));
    }
  }

  std::vector<std::size_t> new_id(n + r.added.size());
  std::vector<Generator> nodes;
  for (std::size_t id = 0; id < n; ++id) {
    if (dead[id]) continue;
    new_id[id] = nodes.size();
    nodes.push_back(d.node(id));
  }
  for (std::size_t k = 0; k < r.added.size(); ++k) {
    new_id[n + k] = nodes.size();
    nodes.push_back(r.added[k]);
  }
  nodes.insert(nodes.end(), loops.begin(), loops.end());
  for (Edge& e : edges) {
    if (e.a.is_node()) e.a.id = new_id[e.a.id];
    if (e.b.is_node()) e.b.id = new_id[e.b.id];
  }
  return {d.inputs(), d.outputs(), std::move(nodes), std::move(edges)};
}

// ---------------------------------------------------------------------------
// Pattern helpers.

// Edge ids of `d` indexed by endpoint.
class Incidence {
 public:
  explicit Incidence(const Diagram& d) : d_(d) {
    for (std::size_t e = 0; e < d.edge_count(); ++e) {
      at_[d.edges()[e].a] = e;
      at_[d.edges()[e].b] = e;
    }
  }
  std::optional<std::size_t> edge(std::size_t node, std::size_t port) const {
    auto it = at_.find(Endpoint::at(node, port));
    if (it == at_.end()) return std::nullopt;
    return it->second;
  }
  // The endpoint wired to (node, port).
  std::optional<Endpoint> peer(std::size_t node, std::size_t port) const {
    const auto e = edge(node, port);
    if (!e) return std::nullopt;
    return d_.other_end(*e, Endpoint::at(node, port));
  }
  // Edges running between two distinct nodes.
  std::vector<std::size_t> between(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < d_.edge_count(); ++e) {
      const Edge& edge = d_.edges()[e];
      if (!edge.a.is_node() || !edge.b.is_node()) continue;
      if ((edge.a.id == a && edge.b.id == b) || (edge.a.id == b && edge.b.id == a))
        out.push_back(e);
    }
    return out;
  }

 private:
  const Diagram& d_;
  std::map<Endpoint, std::size_t> at_;
};

std::vector<std::size_t> incident_edges(const Diagram& d, std::size_t node) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const Edge& edge = d.edges()[e];
    if ((edge.a.is_node() && edge.a.id == node) || (edge.b.is_node() && edge.b.id == node))
      out.push_back(e);
  }
  return out;
}

bool is_identity_like(const Generator& g) {
  if (g.is<Identity>() || g.is<Cap>() || g.is<Cup>()) return true;
  if (g.is<Multiplier>()) {
    const auto& m = g.as<Multiplier>();
    return m.label == 1 % m.d.value();
  }
  if (g.is<XSpider>()) {
    const auto& x = g.as<XSpider>();
    return x.n_in == 1 && x.n_out == 1;
  }
  if (g.is<ZBox>()) {
    const auto& z = g.as<ZBox>();
    return z.legs.size() == 2 && z.legs[0] == z.legs[1] &&
           std::all_of(z.params.begin(), z.params.end(),
                       [](const Complex& a) { return a == Complex(1.0, 0.0); });
  }
  return false;
}

// a_j with a_0 = 1.
Complex level(const ZBox& z, std::size_t j) { return j == 0 ? Complex(1.0, 0.0) : z.params[j - 1]; }

// Z box on `legs` carrying values[j] at level j for j < values.size() and 0
// beyond. A legless box collapses to the sum of its levels.
Generator z_from_levels(DimList legs, std::size_t n_in, const std::vector<Complex>& values) {
  if (legs.empty()) {
    return scalar(std::accumulate(values.begin(), values.end(), Complex(0.0, 0.0)));
  }
  const std::size_t limit = min_dim(legs);
  ParamVec params(limit - 1, Complex(0.0, 0.0));
  for (std::size_t j = 1; j < limit && j < values.size(); ++j) params[j - 1] = values[j];
  return z_box(std::move(legs), n_in, std::move(params));
}

// Ports of `g` other than `skip`, inputs first, keeping their order.
struct KeptPorts {
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
};

KeptPorts kept_ports(const Generator& g, const std::set<std::size_t>& skip) {
  KeptPorts k;
  for (std::size_t p = 0; p < g.num_ports(); ++p) {
    if (skip.contains(p)) continue;
    (g.port_side(p) == PortSide::input ? k.inputs : k.outputs).push_back(p);
  }
  return k;
}

// Port of node `node` at endpoint `e` of edge `edge`.
std::size_t port_on(const Edge& edge, std::size_t node) {
  return edge.a.is_node() && edge.a.id == node ? edge.a.port : edge.b.port;
}

// ---------------------------------------------------------------------------
// Matchers.

std::vector<Match> match_scalar_fold(const Diagram& d) {
  std::vector<Match> out;
  std::vector<std::size_t> scalars;
  for (std::size_t n = 0; n < d.node_count(); ++n)
    if (d.node(n).is<Scalar>()) scalars.push_back(n);
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (d.node(scalars[i]).as<Scalar>().value == Complex(1.0, 0.0))
      out.push_back({RuleId::ScalarFold, {scalars[i]}, {}});
    if (i + 1 < scalars.size()) out.push_back({RuleId::ScalarFold, {scalars[i], scalars[i + 1]}, {}});
  }
  return out;
}

std::vector<Match> match_single_node(const Diagram& d, RuleId rule,
                                     bool (*pred)(const Generator&)) {
  std::vector<Match> out;
  for (std::size_t n = 0; n < d.node_count(); ++n)
    if (pred(d.node(n))) out.push_back({rule, {n}, incident_edges(d, n)});
  return out;
}

bool is_single_leg_w(const Generator& g) {
  return (g.is<WNode>() && g.as<WNode>().fanout == 1) ||
         (g.is<WNodeDagger>() && g.as<WNodeDagger>().fanin == 1);
}

// Edges from an output port of an `A` node into an input port of a distinct
// `B` node; calls f(edge id, upstream node, downstream node, out port, in port).
template <typename F>
void for_each_flow(const Diagram& d, F&& f) {
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const Edge& edge = d.edges()[e];
    if (!edge.a.is_node() || !edge.b.is_node() || edge.a.id == edge.b.id) continue;
    const auto side_a = d.node(edge.a.id).port_side(edge.a.port);
    const auto side_b = d.node(edge.b.id).port_side(edge.b.port);
    if (side_a == PortSide::output && side_b == PortSide::input) {
      f(e, edge.a.id, edge.b.id, edge.a.port, edge.b.port);
    } else if (side_a == PortSide::input && side_b == PortSide::output) {
      f(e, edge.b.id, edge.a.id, edge.b.port, edge.a.port);
    }
  }
}

std::vector<Match> match_multiplier_compose(const Diagram& d) {
  std::vector<Match> out;
  for_each_flow(d, [&](std::size_t e, std::size_t up, std::size_t down, std::size_t, std::size_t) {
    if (d.node(up).is<Multiplier>() && d.node(down).is<Multiplier>())
      out.push_back({RuleId::MultiplierCompose, {up, down}, {e}});
  });
  return out;
}

std::vector<Match> match_splitter_merger(const Diagram& d) {
  std::vector<Match> out;
  const Incidence inc(d);
  for (std::size_t s = 0; s < d.node_count(); ++s) {
    const Generator& g = d.node(s);
    if (g.is<Splitter>()) {
      const auto p1 = inc.peer(s, 1);
      const auto p2 = inc.peer(s, 2);
      if (!p1 || !p2 || !p1->is_node() || !p2->is_node() || p1->id != p2->id || p1->id == s)
        continue;
      const Generator& m = d.node(p1->id);
      if (!m.is<Merger>() || p1->port != 0 || p2->port != 1) continue;
      if (m.as<Merger>().m != g.as<Splitter>().m || m.as<Merger>().n != g.as<Splitter>().n)
        continue;
      std::vector<std::size_t> edges{*inc.edge(s, 1), *inc.edge(s, 2)};
      std::sort(edges.begin(), edges.end());
      out.push_back({RuleId::SplitterMergerCancel, {s, p1->id}, edges});
    } else if (g.is<Merger>()) {
      const auto p = inc.peer(s, 2);
      if (!p || !p->is_node() || p->id == s || p->port != 0) continue;
      const Generator& sp = d.node(p->id);
      if (!sp.is<Splitter>()) continue;
      if (sp.as<Splitter>().m != g.as<Merger>().m || sp.as<Splitter>().n != g.as<Merger>().n)
        continue;
      out.push_back({RuleId::SplitterMergerCancel, {s, p->id}, {*inc.edge(s, 2)}});
    }
  }
  return out;
}

std::vector<Match> match_splitter_assoc(const Diagram& d) {
  std::vector<Match> out;
  const Incidence inc(d);
  for (std::size_t s = 0; s < d.node_count(); ++s) {
    if (!d.node(s).is<Splitter>()) continue;
    const auto p = inc.peer(s, 2);
    if (!p || !p->is_node() || p->id == s || p->port != 0) continue;
    if (!d.node(p->id).is<Splitter>()) continue;
    out.push_back({RuleId::SplitterAssoc, {s, p->id}, {*inc.edge(s, 2)}});
  }
  return out;
}

std::vector<Match> match_fuse_z(const Diagram& d) {
  std::vector<Match> out;
  const Incidence inc(d);
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const Edge& edge = d.edges()[e];
    if (!edge.a.is_node() || !edge.b.is_node() || edge.a.id == edge.b.id) continue;
    if (!d.node(edge.a.id).is<ZBox>() || !d.node(edge.b.id).is<ZBox>()) continue;
    if (inc.between(edge.a.id, edge.b.id).size() != 1) continue;
    out.push_back({RuleId::FuseZ,
                   {std::min(edge.a.id, edge.b.id), std::max(edge.a.id, edge.b.id)},
                   {e}});
  }
  return out;
}

std::vector<Match> match_fuse_x(const Diagram& d) {
  std::vector<Match> out;
  const Incidence inc(d);
  for_each_flow(d, [&](std::size_t e, std::size_t up, std::size_t down, std::size_t, std::size_t) {
    if (d.node(up).is<XSpider>() && d.node(down).is<XSpider>() &&
        inc.between(up, down).size() == 1)
      out.push_back({RuleId::FuseX, {up, down}, {e}});
  });
  return out;
}

std::vector<Match> match_hopf(const Diagram& d) {
  std::vector<Match> out;
  const Incidence inc(d);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& edge : d.edges()) {
    if (!edge.a.is_node() || !edge.b.is_node()) continue;
    std::size_t z = edge.a.id, x = edge.b.id;
    if (!d.node(z).is<ZBox>()) std::swap(z, x);
    if (!d.node(z).is<ZBox>() || !d.node(x).is<XSpider>()) continue;
    if (!seen.insert({z, x}).second) continue;
    const Generator& xg = d.node(x);
    const std::size_t dim = xg.as<XSpider>().d.value();
    std::vector<std::size_t> into, from;
    for (std::size_t e : inc.between(z, x)) {
      const std::size_t port = port_on(d.edges()[e], x);
      (xg.port_side(port) == PortSide::input ? into : from).push_back(e);
    }
    std::vector<std::size_t> take;
    if (!into.empty() && !from.empty()) {
      take = {into[0], from[0]};
    } else if (into.size() >= dim) {
      take.assign(into.begin(), into.begin() + static_cast<std::ptrdiff_t>(dim));
    } else if (from.size() >= dim) {
      take.assign(from.begin(), from.begin() + static_cast<std::ptrdiff_t>(dim));
    } else {
      continue;
    }
    std::sort(take.begin(), take.end());
    out.push_back({RuleId::HopfReduce, {z, x}, take});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriters. Each assumes its match is current.

Endpoint added_port(const Diagram& d, std::size_t k, std::size_t port) {
  return Endpoint::at(d.node_count() + k, port);
}

Diagram rewrite_scalar_fold(const Diagram& d, const Match& m) {
  Replacement r;
  r.removed = m.nodes;
  if (m.nodes.size() == 2)
    r.added.push_back(scalar(d.node(m.nodes[0]).as<Scalar>().value *
                             d.node(m.nodes[1]).as<Scalar>().value));
  return replace(d, r);
}

Diagram rewrite_to_wire(const Diagram& d, const Match& m) {
  Replacement r;
  r.removed = {m.nodes[0]};
  r.joins.push_back({Endpoint::at(m.nodes[0], 0), Endpoint::at(m.nodes[0], 1)});
  return replace(d, r);
}

Diagram rewrite_multiplier_compose(const Diagram& d, const Match& m) {
  const auto& a = d.node(m.nodes[0]).as<Multiplier>();
  const auto& b = d.node(m.nodes[1]).as<Multiplier>();
  const std::size_t dim = a.d.value();
  Replacement r;
  r.removed = m.nodes;
  r.added.push_back(multiplier(a.d, static_cast<long long>((a.label * b.label) % dim)));
  r.joins.push_back({Endpoint::at(m.nodes[0], 0), added_port(d, 0, 0)});
  r.joins.push_back({Endpoint::at(m.nodes[1], 1), added_port(d, 0, 1)});
  return replace(d, r);
}

Diagram rewrite_splitter_merger(const Diagram& d, const Match& m) {
  Replacement r;
  r.removed = m.nodes;
  const std::size_t first = m.nodes[0], second = m.nodes[1];
  if (d.node(first).is<Splitter>()) {
    r.joins.push_back({Endpoint::at(first, 0), Endpoint::at(second, 2)});
  } else {
    r.joins.push_back({Endpoint::at(first, 0), Endpoint::at(second, 1)});
    r.joins.push_back({Endpoint::at(first, 1), Endpoint::at(second, 2)});
  }
  return replace(d, r);
}

// S(a, bc) then S(b, c) on its second output  ->  S(ab, c) then S(a, b).
Diagram rewrite_splitter_assoc(const Diagram& d, const Match& m) {
  const std::size_t s1 = m.nodes[0], s2 = m.nodes[1];
  const Dim a = d.node(s1).as<Splitter>().m;
  const Dim b = d.node(s2).as<Splitter>().m;
  const Dim c = d.node(s2).as<Splitter>().n;
  Replacement r;
  r.removed = m.nodes;
  r.added.push_back(splitter(a.value() * b.value(), c));  // outer
  r.added.push_back(splitter(a, b));                      // inner
  r.joins = {
      {Endpoint::at(s1, 0), added_port(d, 0, 0)},
      {added_port(d, 0, 1), added_port(d, 1, 0)},
      {Endpoint::at(s1, 1), added_port(d, 1, 1)},
      {Endpoint::at(s2, 1), added_port(d, 1, 2)},
      {Endpoint::at(s2, 2), added_port(d, 0, 2)},
  };
  return replace(d, r);
}

Diagram rewrite_fuse_z(const Diagram& d, const Match& m) {
  const std::size_t na = m.nodes[0], nb = m.nodes[1];
  const Edge& shared = d.edges()[m.edges[0]];
  const Generator& ga = d.node(na);
  const Generator& gb = d.node(nb);
  const ZBox& za = ga.as<ZBox>();
  const ZBox& zb = gb.as<ZBox>();
  const KeptPorts ka = kept_ports(ga, {port_on(shared, na)});
  const KeptPorts kb = kept_ports(gb, {port_on(shared, nb)});

  Replacement r;
  r.removed = m.nodes;
  DimList legs;
  std::size_t port = 0;
  auto keep = [&](std::size_t node, const Generator& g, const std::vector<std::size_t>& ports) {
    for (std::size_t p : ports) {
      legs.push_back(g.port_dim(p));
      r.joins.push_back({Endpoint::at(node, p), added_port(d, 0, port++)});
    }
  };
  keep(na, ga, ka.inputs);
  keep(nb, gb, kb.inputs);
  const std::size_t n_in = legs.size();
  keep(na, ga, ka.outputs);
  keep(nb, gb, kb.outputs);

  const std::size_t shared_levels = std::min(min_dim(za.legs), min_dim(zb.legs));
  std::vector<Complex> values(shared_levels);
  for (std::size_t j = 0; j < shared_levels; ++j) values[j] = level(za, j) * level(zb, j);
  r.added.push_back(z_from_levels(std::move(legs), n_in, values));
  return replace(d, r);
}

Diagram rewrite_fuse_x(const Diagram& d, const Match& m) {
  const std::size_t up = m.nodes[0], down = m.nodes[1];
  const Edge& shared = d.edges()[m.edges[0]];
  const Generator& gu = d.node(up);
  const Generator& gd = d.node(down);
  const KeptPorts ku = kept_ports(gu, {port_on(shared, up)});
  const KeptPorts kd = kept_ports(gd, {port_on(shared, down)});

  Replacement r;
  r.removed = m.nodes;
  std::size_t port = 0;
  auto keep = [&](std::size_t node, const std::vector<std::size_t>& ports) {
    for (std::size_t p : ports) r.joins.push_back({Endpoint::at(node, p), added_port(d, 0, port++)});
  };
  keep(up, ku.inputs);
  keep(down, kd.inputs);
  keep(up, ku.outputs);
  keep(down, kd.outputs);
  r.added.push_back(x_spider(gu.as<XSpider>().d, ku.inputs.size() + kd.inputs.size(),
                             ku.outputs.size() + kd.outputs.size()));
  return replace(d, r);
}

Diagram rewrite_hopf(const Diagram& d, const Match& m) {
  const std::size_t nz = m.nodes[0], nx = m.nodes[1];
  const Generator& gz = d.node(nz);
  const Generator& gx = d.node(nx);
  std::set<std::size_t> drop_z, drop_x;
  for (std::size_t e : m.edges) {
    drop_z.insert(port_on(d.edges()[e], nz));
    drop_x.insert(port_on(d.edges()[e], nx));
  }
  const KeptPorts kz = kept_ports(gz, drop_z);
  const KeptPorts kx = kept_ports(gx, drop_x);

  Replacement r;
  r.removed = m.nodes;
  DimList legs;
  std::size_t port = 0;
  for (const auto* ports : {&kz.inputs, &kz.outputs})
    for (std::size_t p : *ports) {
      legs.push_back(gz.port_dim(p));
      r.joins.push_back({Endpoint::at(nz, p), added_port(d, 0, port++)});
    }
  const ZBox& z = gz.as<ZBox>();
  std::vector<Complex> values(min_dim(z.legs));
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = level(z, j);
  r.added.push_back(z_from_levels(std::move(legs), kz.inputs.size(), values));

  port = 0;
  for (const auto* ports : {&kx.inputs, &kx.outputs})
    for (std::size_t p : *ports) r.joins.push_back({Endpoint::at(nx, p), added_port(d, 1, port++)});
  r.added.push_back(x_spider(gx.as<XSpider>().d, kx.inputs.size(), kx.outputs.size()));
  return replace(d, r);
}

Diagram rewrite(const Diagram& d, const Match& m) {
  switch (m.rule) {
    case RuleId::ScalarFold:
      return rewrite_scalar_fold(d, m);
    case RuleId::RemoveIdentitySpider:
    case RuleId::WSingleLeg:
      return rewrite_to_wire(d, m);
    case RuleId::MultiplierCompose:
      return rewrite_multiplier_compose(d, m);
    case RuleId::SplitterMergerCancel:
      return rewrite_splitter_merger(d, m);
    case RuleId::SplitterAssoc:
      return rewrite_splitter_assoc(d, m);
    case RuleId::FuseZ:
      return rewrite_fuse_z(d, m);
    case RuleId::FuseX:
      return rewrite_fuse_x(d, m);
    case RuleId::HopfReduce:
      return rewrite_hopf(d, m);
  }
  throw std::logic_error("unknown rule");
}

bool checks_every_rewrite() {
#ifdef NDEBUG
  return false;
#else
  return true;
#endif
}

}  // namespace

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> rules = [] {
    std::vector<RuleId> r;
    for (const auto& [id, name] : kRuleNames) r.push_back(id);
    return r;
  }();
  return rules;
}

std::string_view to_string(RuleId rule) {
  for (const auto& [id, name] : kRuleNames)
    if (id == rule) return name;
  return "?";
}

std::optional<RuleId> rule_from_string(std::string_view name) {
  for (const auto& [id, n] : kRuleNames)
    if (n == name) return id;
  return std::nullopt;
}

std::string describe(const Match& m) {
  std::ostringstream os;
  os << to_string(m.rule) << " nodes [";
  for (std::size_t i = 0; i < m.nodes.size(); ++i) os << (i ? ", " : "") << m.nodes[i];
  os << "] edges [";
  for (std::size_t i = 0; i < m.edges.size(); ++i) os << (i ? ", " : "") << m.edges[i];
  os << "]";
  return os.str();
}

Measure measure(const Diagram& d) {
  Measure out;
  out.nodes = d.node_count();
  out.edges = d.edge_count();
  for (const Generator& g : d.nodes())
    if (g.is<Multiplier>()) out.multiplier_labels += g.as<Multiplier>().label;

  const Incidence inc(d);
  auto splitter_child = [&](std::size_t s, std::size_t port) -> std::optional<std::size_t> {
    const auto p = inc.peer(s, port);
    if (p && p->is_node() && p->port == 0 && d.node(p->id).is<Splitter>()) return p->id;
    return std::nullopt;
  };
  for (std::size_t s = 0; s < d.node_count(); ++s) {
    if (!d.node(s).is<Splitter>()) continue;
    std::set<std::size_t> seen{s};
    std::vector<std::size_t> stack;
    if (auto c = splitter_child(s, 2)) stack.push_back(*c);
    while (!stack.empty()) {
      const std::size_t t = stack.back();
      stack.pop_back();
      if (!seen.insert(t).second) continue;
      ++out.splitter_nesting;
      for (std::size_t port : {1, 2})
        if (auto c = splitter_child(t, port)) stack.push_back(*c);
    }
  }
  return out;
}

std::vector<Match> find_matches(const Diagram& d, RuleId rule) {
  std::vector<Match> out;
  switch (rule) {
    case RuleId::ScalarFold:
      out = match_scalar_fold(d);
      break;
    case RuleId::RemoveIdentitySpider:
      out = match_single_node(d, rule, is_identity_like);
      break;
    case RuleId::WSingleLeg:
      out = match_single_node(d, rule, is_single_leg_w);
      break;
    case RuleId::MultiplierCompose:
      out = match_multiplier_compose(d);
      break;
    case RuleId::SplitterMergerCancel:
      out = match_splitter_merger(d);
      break;
    case RuleId::SplitterAssoc:
      out = match_splitter_assoc(d);
      break;
    case RuleId::FuseZ:
      out = match_fuse_z(d);
      break;
    case RuleId::FuseX:
      out = match_fuse_x(d);
      break;
    case RuleId::HopfReduce:
      out = match_hopf(d);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagram apply_rule(const Diagram& d, const Match& m) {
  const auto current = find_matches(d, m.rule);
  if (!std::binary_search(current.begin(), current.end(), m)) {
    throw StaleMatchError("stale match: " + describe(m));
  }
  return rewrite(d, m);
}

Diagram replay(const Diagram& start, const RewriteTrace& trace) {
  Diagram d = start;
  for (const TraceStep& step : trace.steps) d = apply_rule(d, step.match);
  return d;
}

SimplifyResult simplify(const Diagram& d, const SimplifyOptions& options) {
  require_valid(d);
  const bool every =
      options.check == EvalCheck::always ||
      (options.check == EvalCheck::automatic && checks_every_rewrite());
  const bool sampled = options.check == EvalCheck::automatic && !every;
  const bool checkable =
      product(d.inputs()) * product(d.outputs()) <= options.check_max_entries;
  std::optional<Tensor> reference;
  if (checkable && (every || sampled)) reference = eval(d);

  SimplifyResult result{d, {}, 0};
  const std::size_t max_passes = d.node_count() * 10 + 10;
  std::size_t rewrites = 0;
  while (result.passes < max_passes) {
    bool changed = false;
    for (RuleId rule : all_rules()) {
      for (;;) {
        const auto matches = find_matches(result.diagram, rule);
        if (matches.empty()) break;
        TraceStep step;
        step.match = matches.front();
        step.site = describe(step.match);
        step.nodes_before = result.diagram.node_count();
        step.measure_before = measure(result.diagram);
        result.diagram = rewrite(result.diagram, step.match);
        step.nodes_after = result.diagram.node_count();
        step.measure_after = measure(result.diagram);
        if (!(step.measure_after < step.measure_before)) {
          throw std::logic_error("rewrite did not decrease the measure: " + step.site);
        }
        ++rewrites;
        if (reference && (every || rewrites % 16 == 0) &&
            !allclose(eval(result.diagram), *reference, kSoundnessTolerance)) {
          throw std::logic_error("rewrite changed the interpretation: " + step.site);
        }
        result.trace.steps.push_back(std::move(step));
        changed = true;
      }
    }
    if (!changed) break;
    ++result.passes;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Soundness sampling.

namespace {

class Sampler {
 public:
  Sampler(const std::vector<std::size_t>& dims, std::uint64_t seed) : dims_(dims), rng_(seed) {
    if (dims_.empty()) throw std::invalid_argument("no dimensions to sample from");
  }

  std::size_t dim() { return dims_[index(dims_.size())]; }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return index(2) == 0; }
  Complex complex() {
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng_), g(rng_)};
  }
  ParamVec params(std::size_t n) {
    ParamVec p(n);
    for (Complex& x : p) x = complex();
    return p;
  }
  // A dimension strictly above `floor`, when the choices have one.
  std::optional<std::size_t> dim_above(std::size_t floor) {
    std::vector<std::size_t> big;
    for (std::size_t x : dims_)
      if (x > floor) big.push_back(x);
    if (big.empty()) return std::nullopt;
    return big[index(big.size())];
  }

 private:
  std::vector<std::size_t> dims_;
  std::mt19937_64 rng_;
};

// Z box with the given port dims; `n_in` of them inputs, random params.
Generator random_z(Sampler& s, const DimList& legs, std::size_t n_in) {
  return z_box(legs, n_in, s.params(min_dim(legs) - 1));
}

Diagram sample_scalar_fold(Sampler& s) {
  std::vector<Generator> nodes{scalar(s.coin() ? Complex(1.0, 0.0) : s.complex()),
                               scalar(s.complex()), identity(s.dim())};
  return with_open_ports(std::move(nodes), {});
}

Diagram sample_identity_like(Sampler& s) {
  const std::size_t d = s.dim();
  std::vector<Generator> choices{identity(d),
                                 cap(d),
                                 cup(d),
                                 x_spider(d, 1, 1),
                                 multiplier(d, 1),
                                 z_box({d, d}, s.index(3), phaseless_params(d))};
  Generator g = choices[s.index(choices.size())];
  if (s.index(4) == 0 && g.num_ports() == 2) {
    // Self-loop: both ports on one wire.
    return with_open_ports({g, identity(s.dim())}, {{Endpoint::at(0, 0), Endpoint::at(0, 1)}});
  }
  // Hang a random Z box on the first port so the wire is not bare.
  Generator z = random_z(s, {g.port_dim(0), s.dim()}, s.index(3));
  return with_open_ports({g, z}, {{Endpoint::at(0, 0), Endpoint::at(1, 0)}});
}

Diagram sample_w_single_leg(Sampler& s) {
  const std::size_t d = s.dim();
  Generator g = s.coin() ? w_node(d, 1) : w_node_dagger(d, 1);
  Generator z = random_z(s, {d, s.dim()}, 0);
  return with_open_ports({g, z}, {{Endpoint::at(0, 0), Endpoint::at(1, 0)}});
}

Diagram sample_multiplier_compose(Sampler& s) {
  const std::size_t d = s.dim();
  return seq_compose(node(multiplier(d, static_cast<long long>(s.index(d)))),
                     node(multiplier(d, static_cast<long long>(s.index(d)))));
}

Diagram sample_splitter_merger(Sampler& s) {
  const std::size_t m = s.dim(), n = s.dim();
  if (s.coin()) return seq_compose(node(merger(m, n)), node(splitter(m, n)));
  // Random states on the split legs keep the merger-first side nontrivial.
  const Diagram core = seq_compose(node(splitter(m, n)), node(merger(m, n)));
  return seq_compose(core, par_compose(node(random_z(s, {m}, 0)), node(random_z(s, {n}, 0))));
}

Diagram sample_splitter_assoc(Sampler& s) {
  const std::size_t a = s.dim(), b = s.dim(), c = s.dim();
  return seq_compose(par_compose(wire(a), node(splitter(b, c))), node(splitter(a, b * c)));
}

Diagram sample_fuse_z(Sampler& s) {
  // With probability 1/2 the shared wire is the strict minimum, so the fused
  // box has levels that neither side supported.
  std::size_t shared = s.dim();
  std::optional<std::size_t> floor;
  if (s.coin()) {
    std::size_t lo = shared;
    for (std::size_t t = 0; t < 8; ++t) lo = std::min(lo, s.dim());
    if (s.dim_above(lo)) {
      shared = lo;
      floor = lo;
    }
  }
  auto leg = [&] { return floor ? *s.dim_above(*floor) : s.dim(); };
  auto make = [&](std::size_t extra) {
    DimList legs;
    const std::size_t at = s.index(extra + 1);
    for (std::size_t i = 0; i < extra; ++i) legs.push_back(leg());
    legs.insert(legs.begin() + static_cast<std::ptrdiff_t>(at), shared);
    const std::size_t n_in = s.index(legs.size() + 1);
    return std::make_pair(random_z(s, legs, n_in), at);
  };
  auto [a, pa] = make(s.index(3));
  auto [b, pb] = make(s.index(3));
  return with_open_ports({a, b}, {{Endpoint::at(0, pa), Endpoint::at(1, pb)}});
}

Diagram sample_fuse_x(Sampler& s) {
  const std::size_t d = s.dim();
  const std::size_t a_in = s.index(3), a_out = 1 + s.index(2);
  const std::size_t b_in = 1 + s.index(2), b_out = s.index(3);
  Generator a = x_spider(d, a_in, a_out), b = x_spider(d, b_in, b_out);
  const std::size_t pa = a_in + s.index(a_out);
  const std::size_t pb = s.index(b_in);
  return with_open_ports({a, b}, {{Endpoint::at(0, pa), Endpoint::at(1, pb)}});
}

Diagram sample_hopf(Sampler& s) {
  const std::size_t d = s.dim();
  const bool pair = s.coin();
  // Wires into the X spider's inputs (or one in, one out when `pair`).
  const std::size_t wires_in = pair ? 1 : d;
  const std::size_t wires_out = pair ? 1 : 0;
  const std::size_t z_extra = s.index(2), x_extra_in = s.index(2), x_extra_out = s.index(2);
  DimList legs(wires_in + wires_out, d);
  for (std::size_t i = 0; i < z_extra; ++i) legs.push_back(s.dim());
  // Every Z leg an output: the wires into X leave Z as outputs.
  Generator z = random_z(s, legs, 0);
  Generator x = x_spider(d, x_extra_in + wires_in, x_extra_out + wires_out);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < wires_in; ++k)
    edges.push_back({Endpoint::at(0, k), Endpoint::at(1, x_extra_in + k)});
  for (std::size_t k = 0; k < wires_out; ++k)
    edges.push_back({Endpoint::at(0, wires_in + k),
                     Endpoint::at(1, x_extra_in + wires_in + x_extra_out + k)});
  return with_open_ports({z, x}, edges);
}

Diagram sample(RuleId rule, Sampler& s) {
  switch (rule) {
    case RuleId::ScalarFold:
      return sample_scalar_fold(s);
    case RuleId::RemoveIdentitySpider:
      return sample_identity_like(s);
    case RuleId::WSingleLeg:
      return sample_w_single_leg(s);
    case RuleId::MultiplierCompose:
      return sample_multiplier_compose(s);
    case RuleId::SplitterMergerCancel:
      return sample_splitter_merger(s);
    case RuleId::SplitterAssoc:
      return sample_splitter_assoc(s);
    case RuleId::FuseZ:
      return sample_fuse_z(s);
    case RuleId::FuseX:
      return sample_fuse_x(s);
    case RuleId::HopfReduce:
      return sample_hopf(s);
  }
  throw std::logic_error("unknown rule");
}

}  // namespace

SoundnessReport check_rule_soundness(RuleId rule, const std::vector<std::size_t>& dim_choices,
                                     std::size_t samples, std::uint64_t seed,
                                     const Rewriter& rewriter) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  SoundnessReport report;
  report.rule = std::string(to_string(rule));
  report.samples = samples;
  Sampler s(dim_choices, seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Diagram lhs = sample(rule, s);
    const auto matches = find_matches(lhs, rule);
    if (matches.empty()) {
      ++report.failed;
      continue;
    }
    const Match& m = matches[s.index(matches.size())];
    double deviation = 0.0;
    try {
      const Diagram rhs = rewriter ? rewriter(lhs, m) : apply_rule(lhs, m);
      deviation = max_abs_diff(eval(lhs), eval(rhs));
    } catch (const std::exception&) {
      deviation = std::numeric_limits<double>::infinity();
    }
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (deviation <= kSoundnessTolerance) {
      ++report.passed;
    } else {
      ++report.failed;
    }
  }
  return report;
}

const std::vector<std::string>& figure_only_rules() {
  static const std::vector<std::string> names{
      "K1", "K2",  "D1",  "Sym", "AD",  "WW", "Bs0", "HD", "VA", "VW",
      "Bsj", "ZV", "TA", "Pcy", "BZW", "KZ", "K0",  "DD", "DZX", "S1"};
  return names;
}

std::vector<SoundnessReport> check_all_rules(const std::vector<std::size_t>& dim_choices,
                                             std::size_t samples, std::uint64_t seed) {
  std::vector<SoundnessReport> out;
  for (RuleId rule : all_rules())
    out.push_back(check_rule_soundness(rule, dim_choices, samples, seed));
  for (const std::string& name : figure_only_rules()) {
    SoundnessReport r;
    r.rule = name;
    r.mechanized = false;
    out.push_back(r);
  }
  return out;
}

EqualityVerdict prove_equal(const Diagram& lhs, const Diagram& rhs, double tol) {
  if (lhs.inputs() != rhs.inputs() || lhs.outputs() != rhs.outputs()) {
    throw SignatureError("cannot compare " + to_string(lhs.inputs()) + " -> " +
                         to_string(lhs.outputs()) + " with " + to_string(rhs.inputs()) +
                         " -> " + to_string(rhs.outputs()));
  }
  EqualityVerdict v;
  EqualityCertificate& c = v.certificate;
  c.lhs_trace = simplify(lhs).trace;
  c.rhs_trace = simplify(rhs).trace;
  c.lhs = normalize(lhs);
  c.rhs = normalize(rhs);
  v.equal = nf_equal(c.lhs, c.rhs, tol);
  c.first_difference = first_difference(c.lhs, c.rhs, tol);
  c.ratio = proportional(to_tensor(c.lhs), to_tensor(c.rhs), tol);
  return v;
}

}  // namespace qfzxw
