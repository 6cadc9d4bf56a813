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

#include "qfzxw/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <tuple>

namespace qfzxw {

Complex root_of_unity(std::size_t k, std::size_t d) {
  k %= d;
  if ((4 * k) % d == 0) {
    switch ((4 * k) / d) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

namespace {

// Fills `t` by calling f(out_digits, in_digits) for every entry.
template <typename F>
void fill(Tensor& t, F&& f) {
  const DimList& od = t.out_dims();
  const DimList& id = t.in_dims();
  std::vector<std::size_t> o(od.size(), 0), i(id.size(), 0);
  for (std::size_t row = 0; row < t.rows(); ++row) {
    std::size_t r = row;
    for (std::size_t k = od.size(); k-- > 0;) {
      o[k] = r % od[k].value();
      r /= od[k].value();
    }
    for (std::size_t col = 0; col < t.cols(); ++col) {
      std::size_t c = col;
      for (std::size_t k = id.size(); k-- > 0;) {
        i[k] = c % id[k].value();
        c /= id[k].value();
      }
      t(row, col) = f(o, i);
    }
  }
}

using Digits = std::vector<std::size_t>;

Complex& at(Tensor& t, const Digits& o, const Digits& i) {
  std::size_t row = 0, col = 0;
  for (std::size_t k = 0; k < o.size(); ++k) row = row * t.out_dims()[k].value() + o[k];
  for (std::size_t k = 0; k < i.size(); ++k) col = col * t.in_dims()[k].value() + i[k];
  return t(row, col);
}

}  // namespace

Tensor generator_semantics(const Generator& g) {
  Tensor t(g.output_dims(), g.input_dims());
  const Complex one(1.0, 0.0);

  if (g.is<ZBox>()) {
    const ZBox& z = g.as<ZBox>();
    const std::size_t limit = min_dim(z.legs);
    for (std::size_t j = 0; j < limit; ++j) {
      const Digits o(t.out_dims().size(), j), i(t.in_dims().size(), j);
      at(t, o, i) = j == 0 ? one : z.params[j - 1];
    }
  } else if (g.is<WNode>() || g.is<WNodeDagger>()) {
    const bool dagger = g.is<WNodeDagger>();
    const std::size_t d = dagger ? g.as<WNodeDagger>().d.value() : g.as<WNode>().d.value();
    const std::size_t legs = dagger ? g.as<WNodeDagger>().fanin : g.as<WNode>().fanout;
    // |0..0><0| plus, for each level i, i placed on exactly one of the legs.
    auto place = [&](const Digits& many, std::size_t single) {
      const Digits one_leg{single};
      if (dagger) {
        at(t, one_leg, many) = one;
      } else {
        at(t, many, one_leg) = one;
      }
    };
    place(Digits(legs, 0), 0);
    for (std::size_t i = 1; i < d; ++i) {
      for (std::size_t p = 0; p < legs; ++p) {
        Digits many(legs, 0);
        many[p] = i;
        place(many, i);
      }
    }
  } else if (g.is<XSpider>()) {
    const auto& x = g.as<XSpider>();
    const std::size_t d = x.d.value();
    // Enumerate every leg but the last output freely; the last is determined.
    const std::size_t free_outs = x.n_out == 0 ? 0 : x.n_out - 1;
    const std::size_t free_legs = x.n_in + free_outs;
    Digits v(free_legs, 0);
    Digits o(x.n_out, 0), i(x.n_in, 0);
    for (;;) {
      std::size_t si = 0, so = 0;
      for (std::size_t k = 0; k < x.n_in; ++k) si += (i[k] = v[k]);
      for (std::size_t k = 0; k < free_outs; ++k) so += (o[k] = v[x.n_in + k]);
      if (x.n_out == 0) {
        if (si % d == 0) at(t, o, i) = one;
      } else {
        o[x.n_out - 1] = (si + d * (so / d + 1) - so) % d;
        at(t, o, i) = one;
      }
      std::size_t k = free_legs;
      while (k > 0) {
        if (++v[k - 1] < d) break;
        v[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  } else if (g.is<Hadamard>()) {
    const std::size_t d = g.as<Hadamard>().d.value();
    fill(t, [&](const Digits& o, const Digits& i) { return root_of_unity(o[0] * i[0], d); });
  } else if (g.is<Splitter>()) {
    const std::size_t n = g.as<Splitter>().n.value();
    const std::size_t m = g.as<Splitter>().m.value();
    for (std::size_t x = 0; x < m * n; ++x) at(t, {x / n, x % n}, {x}) = one;
  } else if (g.is<Merger>()) {
    const std::size_t n = g.as<Merger>().n.value();
    const std::size_t m = g.as<Merger>().m.value();
    for (std::size_t x = 0; x < m * n; ++x) at(t, {x}, {x / n, x % n}) = one;
  } else if (g.is<Swap>()) {
    const std::size_t a = g.as<Swap>().m.value();
    const std::size_t b = g.as<Swap>().n.value();
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t y = 0; y < b; ++y) at(t, {y, x}, {x, y}) = one;
  } else if (g.is<Identity>() || g.is<Cap>() || g.is<Cup>()) {
    const std::size_t d = g.port_dim(0).value();
    // All three are the delta on two legs; only the leg sides differ.
    for (std::size_t x = 0; x < d; ++x) {
      if (g.is<Identity>()) at(t, {x}, {x}) = one;
      if (g.is<Cap>()) at(t, {x, x}, {}) = one;
      if (g.is<Cup>()) at(t, {}, {x, x}) = one;
    }
  } else if (g.is<Multiplier>()) {
    const auto& m = g.as<Multiplier>();
    const std::size_t d = m.d.value();
    for (std::size_t x = 0; x < d; ++x) at(t, {(m.label * x) % d}, {x}) = one;
  } else if (g.is<Scalar>()) {
    t(0, 0) = g.as<Scalar>().value;
  }
  return t;
}

namespace {

// Dense tensor whose legs are identified by wire labels.
struct Labeled {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> dims;
  std::vector<Complex> data;

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t d : dims) s *= d;
    return s;
  }
};

std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Reorders legs so that new leg k is old leg order[k].
Labeled permute(const Labeled& t, const std::vector<std::size_t>& order) {
  bool identity = true;
  for (std::size_t k = 0; k < order.size(); ++k) identity = identity && order[k] == k;
  if (identity) return t;
  Labeled r;
  for (std::size_t k : order) {
    r.labels.push_back(t.labels[k]);
    r.dims.push_back(t.dims[k]);
  }
  const auto old_strides = strides(t.dims);
  std::vector<std::size_t> step(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) step[k] = old_strides[order[k]];
  const std::size_t n = t.size();
  r.data.resize(n);
  std::vector<std::size_t> idx(order.size(), 0);
  std::size_t old = 0;
  for (std::size_t flat = 0; flat < n; ++flat) {
    r.data[flat] = t.data[old];
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++idx[k] < r.dims[k]) {
        old += step[k];
        break;
      }
      old -= step[k] * (r.dims[k] - 1);
      idx[k] = 0;
    }
  }
  return r;
}

// Sums over legs that carry the same label (self-loops).
Labeled trace_repeated(Labeled t) {
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t a = 0; a < t.labels.size() && !pair; ++a)
      for (std::size_t b = a + 1; b < t.labels.size(); ++b)
        if (t.labels[a] == t.labels[b]) {
          pair = {a, b};
          break;
        }
    if (!pair) return t;
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < t.labels.size(); ++k)
      if (k != pair->first && k != pair->second) order.push_back(k);
    order.push_back(pair->first);
    order.push_back(pair->second);
    const Labeled p = permute(t, order);
    const std::size_t d = t.dims[pair->first];
    Labeled r;
    r.labels.assign(p.labels.begin(), p.labels.end() - 2);
    r.dims.assign(p.dims.begin(), p.dims.end() - 2);
    const std::size_t rest = r.size();
    r.data.assign(rest, Complex(0.0, 0.0));
    for (std::size_t x = 0; x < rest; ++x)
      for (std::size_t j = 0; j < d; ++j) r.data[x] += p.data[(x * d + j) * d + j];
    t = std::move(r);
  }
}

Labeled contract(const Labeled& a, const Labeled& b) {
  std::vector<std::size_t> free_a, shared_a, free_b, shared_b;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = std::find(b.labels.begin(), b.labels.end(), a.labels[i]);
    if (it == b.labels.end()) {
      free_a.push_back(i);
    } else {
      shared_a.push_back(i);
      shared_b.push_back(static_cast<std::size_t>(it - b.labels.begin()));
    }
  }
  for (std::size_t j = 0; j < b.labels.size(); ++j)
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[j]) == a.labels.end())
      free_b.push_back(j);

  std::vector<std::size_t> order_a = free_a;
  order_a.insert(order_a.end(), shared_a.begin(), shared_a.end());
  std::vector<std::size_t> order_b = shared_b;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());
  const Labeled pa = permute(a, order_a);
  const Labeled pb = permute(b, order_b);

  std::size_t m = 1, k = 1, n = 1;
  Labeled r;
  for (std::size_t i : free_a) {
    m *= a.dims[i];
    r.labels.push_back(a.labels[i]);
    r.dims.push_back(a.dims[i]);
  }
  for (std::size_t i : shared_a) k *= a.dims[i];
  for (std::size_t j : free_b) {
    n *= b.dims[j];
    r.labels.push_back(b.labels[j]);
    r.dims.push_back(b.dims[j]);
  }
  r.data.assign(m * n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t s = 0; s < k; ++s) {
      const Complex x = pa.data[i * k + s];
      if (x == Complex(0.0, 0.0)) continue;
      const Complex* row = &pb.data[s * n];
      Complex* out = &r.data[i * n];
      for (std::size_t j = 0; j < n; ++j) out[j] += x * row[j];
    }
  return r;
}

struct Item {
  Labeled tensor;  // data empty until materialized
  std::optional<std::size_t> node;
  bool alive = true;
};

void materialize(Item& item, const Diagram& d) {
  if (!item.node) return;
  const Generator& g = d.node(*item.node);
  const Tensor t = generator_semantics(g);
  item.tensor.data.assign(t.entries().begin(), t.entries().end());
  item.tensor = trace_repeated(std::move(item.tensor));
  item.node.reset();
}


// Contraction planning works on label/dim lists only.
struct Shape {
  std::vector<std::size_t> labels;
  std::vector<std::size_t> dims;
};

using Plan = std::vector<std::pair<std::size_t, std::size_t>>;

struct PairCost {
  double result = 1.0;
  double flops = 1.0;
};

PairCost pair_cost(const Shape& a, const Shape& b) {
  PairCost c;
  double shared = 1.0;
  for (std::size_t x = 0; x < a.labels.size(); ++x) {
    if (std::find(b.labels.begin(), b.labels.end(), a.labels[x]) == b.labels.end()) {
      c.result *= static_cast<double>(a.dims[x]);
    } else {
      shared *= static_cast<double>(a.dims[x]);
    }
  }
  for (std::size_t x = 0; x < b.labels.size(); ++x)
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[x]) == a.labels.end())
      c.result *= static_cast<double>(b.dims[x]);
  c.flops = c.result * shared;
  return c;
}

double shape_size(const Shape& s) {
  double n = 1.0;
  for (std::size_t x : s.dims) n *= static_cast<double>(x);
  return n;
}

Shape merged(const Shape& a, const Shape& b) {
  Shape r;
  for (std::size_t x = 0; x < a.labels.size(); ++x)
    if (std::find(b.labels.begin(), b.labels.end(), a.labels[x]) == b.labels.end()) {
      r.labels.push_back(a.labels[x]);
      r.dims.push_back(a.dims[x]);
    }
  for (std::size_t x = 0; x < b.labels.size(); ++x)
    if (std::find(a.labels.begin(), a.labels.end(), b.labels[x]) == a.labels.end()) {
      r.labels.push_back(b.labels[x]);
      r.dims.push_back(b.dims[x]);
    }
  return r;
}

// Pairwise greedy; `by_flops` ranks candidate pairs by work instead of growth.
std::pair<Plan, double> greedy_plan(std::vector<Shape> shapes, bool by_flops) {
  Plan plan;
  double total = 0.0;
  std::vector<bool> alive(shapes.size(), true);
  std::map<std::size_t, std::vector<std::size_t>> owners;
  auto index_labels = [&](std::size_t i) {
    for (std::size_t l : shapes[i].labels) owners[l].push_back(i);
  };
  for (std::size_t i = 0; i < shapes.size(); ++i) index_labels(i);

  for (std::size_t remaining = shapes.size(); remaining > 1; --remaining) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::tuple<double, double, std::size_t, std::size_t> best_key;
    for (const auto& [label, who] : owners) {
      if (who.size() != 2 || who[0] == who[1]) continue;
      const std::size_t i = std::min(who[0], who[1]);
      const std::size_t j = std::max(who[0], who[1]);
      const PairCost c = pair_cost(shapes[i], shapes[j]);
      const double growth = c.result - shape_size(shapes[i]) - shape_size(shapes[j]);
      const auto key = by_flops ? std::make_tuple(c.flops, growth, i, j)
                                : std::make_tuple(growth, c.flops, i, j);
      if (!best || key < best_key) {
        best_key = key;
        best = {i, j};
      }
    }
    if (!best) {
      // Disconnected pieces: outer product of the two smallest.
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < shapes.size(); ++i)
        if (alive[i]) live.push_back(i);
      std::stable_sort(live.begin(), live.end(), [&](std::size_t x, std::size_t y) {
        return shape_size(shapes[x]) < shape_size(shapes[y]);
      });
      best = {std::min(live[0], live[1]), std::max(live[0], live[1])};
    }
    const auto [i, j] = *best;
    for (std::size_t l : shapes[i].labels) std::erase(owners[l], i);
    for (std::size_t l : shapes[j].labels) std::erase(owners[l], j);
    total += pair_cost(shapes[i], shapes[j]).flops;
    shapes[i] = merged(shapes[i], shapes[j]);
    alive[j] = false;
    shapes[j] = {};
    index_labels(i);
    plan.emplace_back(i, j);
  }
  return {plan, total};
}

// Grows a single blob from `start`, absorbing the neighbour that keeps it smallest.
std::pair<Plan, double> sweep_plan(const std::vector<Shape>& shapes, std::size_t start,
                                   double budget) {
  Plan plan;
  double total = 0.0;
  std::vector<bool> absorbed(shapes.size(), false);
  std::map<std::size_t, std::vector<std::size_t>> owners;
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t l : shapes[i].labels) owners[l].push_back(i);
  Shape blob = shapes[start];
  absorbed[start] = true;
  for (std::size_t step = 1; step < shapes.size(); ++step) {
    std::optional<std::size_t> best;
    std::tuple<double, double, std::size_t> best_key;
    for (std::size_t l : blob.labels)
      for (std::size_t j : owners[l]) {
        if (absorbed[j]) continue;
        const PairCost c = pair_cost(blob, shapes[j]);
        const auto key = std::make_tuple(c.result, c.flops, j);
        if (!best || key < best_key) {
          best_key = key;
          best = j;
        }
      }
    if (!best) {
      for (std::size_t j = 0; j < shapes.size(); ++j)
        if (!absorbed[j] && (!best || shape_size(shapes[j]) < shape_size(shapes[*best])))
          best = j;
    }
    total += pair_cost(blob, shapes[*best]).flops;
    if (total > budget) return {{}, std::numeric_limits<double>::infinity()};
    blob = merged(blob, shapes[*best]);
    absorbed[*best] = true;
    plan.emplace_back(start, *best);
  }
  return {plan, total};
}

// Absorbs items in construction order into the first one.
std::pair<Plan, double> ordered_plan(const std::vector<Shape>& shapes, double budget) {
  Plan plan;
  double total = 0.0;
  Shape blob = shapes[0];
  for (std::size_t j = 1; j < shapes.size(); ++j) {
    total += pair_cost(blob, shapes[j]).flops;
    if (total > budget) return {{}, std::numeric_limits<double>::infinity()};
    blob = merged(blob, shapes[j]);
    plan.emplace_back(0, j);
  }
  return {plan, total};
}

Plan cheapest_plan(const std::vector<Shape>& shapes) {
  if (shapes.size() < 2) return {};
  auto best = greedy_plan(shapes, false);
  auto by_flops = greedy_plan(shapes, true);
  if (by_flops.second < best.second) best = std::move(by_flops);
  auto ordered = ordered_plan(shapes, best.second);
  if (ordered.second < best.second) best = std::move(ordered);
  // Sweep starts: a spread of at most 32 items.
  const std::size_t stride = std::max<std::size_t>(1, shapes.size() / 32);
  for (std::size_t start = 0; start < shapes.size(); start += stride) {
    auto sweep = sweep_plan(shapes, start, best.second);
    if (sweep.second < best.second) best = std::move(sweep);
  }
  return best.first;
}

}  // namespace

Tensor eval(const Diagram& d) {
  require_valid(d);

  std::vector<std::size_t> in_label(d.inputs().size());
  std::vector<std::size_t> out_label(d.outputs().size());
  std::vector<Item> items;
  std::size_t next_label = d.edge_count();

  auto bind_boundary = [&](const Endpoint& p, std::size_t label) {
    if (p.kind == Endpoint::Kind::input) in_label[p.id] = label;
    if (p.kind == Endpoint::Kind::output) out_label[p.id] = label;
  };

  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const Edge& edge = d.edges()[e];
    if (edge.a.is_boundary() && edge.b.is_boundary()) {
      // Bare wire between two boundary positions: a delta with two labels.
      const std::size_t dim = d.endpoint_dim(edge.a).value();
      Item item;
      item.tensor.labels = {e, next_label};
      item.tensor.dims = {dim, dim};
      item.tensor.data.assign(dim * dim, Complex(0.0, 0.0));
      for (std::size_t j = 0; j < dim; ++j) item.tensor.data[j * dim + j] = 1.0;
      bind_boundary(edge.a, e);
      bind_boundary(edge.b, next_label);
      ++next_label;
      items.push_back(std::move(item));
    } else {
      bind_boundary(edge.a, e);
      bind_boundary(edge.b, e);
    }
  }

  for (std::size_t n = 0; n < d.node_count(); ++n) {
    const Generator& g = d.node(n);
    Item item;
    item.node = n;
    // Generator tensors list output legs first, then input legs.
    for (std::size_t leg = 0; leg < g.num_ports(); ++leg) {
      const std::size_t port =
          leg < g.num_outputs() ? g.num_inputs() + leg : leg - g.num_outputs();
      item.tensor.labels.push_back(*d.edge_at(Endpoint::at(n, port)));
      item.tensor.dims.push_back(g.port_dim(port).value());
    }
    // Self-loops shrink the tensor, so price them as already traced.
    if (std::set<std::size_t>(item.tensor.labels.begin(), item.tensor.labels.end()).size() !=
        item.tensor.labels.size()) {
      materialize(item, d);
    }
    items.push_back(std::move(item));
  }

  std::vector<Shape> shapes;
  for (const Item& item : items) shapes.push_back({item.tensor.labels, item.tensor.dims});
  for (const auto& [keep, drop] : cheapest_plan(shapes)) {
    materialize(items[keep], d);
    materialize(items[drop], d);
    items[keep].tensor = contract(items[keep].tensor, items[drop].tensor);
    items[drop].alive = false;
    items[drop].tensor = {};
  }

  Labeled result;
  result.data = {Complex(1.0, 0.0)};
  for (Item& item : items) {
    if (!item.alive) continue;
    materialize(item, d);
    result = std::move(item.tensor);
  }

  std::vector<std::size_t> order;
  for (std::size_t l : out_label)
    order.push_back(static_cast<std::size_t>(
        std::find(result.labels.begin(), result.labels.end(), l) - result.labels.begin()));
  for (std::size_t l : in_label)
    order.push_back(static_cast<std::size_t>(
        std::find(result.labels.begin(), result.labels.end(), l) - result.labels.begin()));
  if (order.size() != result.labels.size()) {
    throw std::logic_error("eval: open labels do not match the boundary");
  }
  const Labeled final_tensor = permute(result, order);
  return Tensor(d.outputs(), d.inputs(), final_tensor.data);
}

}  // namespace qfzxw
