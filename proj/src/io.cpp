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

#include "qfzxw/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qfzxw {

namespace {

using nlohmann::json;

json dims_json(const DimList& dims) {
  json a = json::array();
  for (Dim d : dims) a.push_back(d.value());
  return a;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json endpoint_json(const Endpoint& e) {
  if (e.is_node()) return {{"node", e.id}, {"port", e.port}};
  return {{"boundary", e.kind == Endpoint::Kind::input ? "in" : "out"}, {"index", e.id}};
}

json node_json(std::size_t id, const Generator& g) {
  json n = {{"id", id}, {"kind", std::string(g.tag())}};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZBox>) {
          n["dims"] = dims_json(k.legs);
          n["n_in"] = k.n_in;
          json p = json::array();
          for (Complex c : k.params) p.push_back(complex_json(c));
          n["params"] = p;
        } else if constexpr (std::is_same_v<K, WNode>) {
          n["dims"] = dims_json({k.d});
          n["fanout"] = k.fanout;
        } else if constexpr (std::is_same_v<K, WNodeDagger>) {
          n["dims"] = dims_json({k.d});
          n["fanin"] = k.fanin;
        } else if constexpr (std::is_same_v<K, XSpider>) {
          n["dims"] = dims_json({k.d});
          n["n_in"] = k.n_in;
          n["n_out"] = k.n_out;
        } else if constexpr (std::is_same_v<K, Splitter> || std::is_same_v<K, Merger> ||
                             std::is_same_v<K, Swap>) {
          n["dims"] = dims_json({k.m, k.n});
        } else if constexpr (std::is_same_v<K, Multiplier>) {
          n["dims"] = dims_json({k.d});
          n["label"] = k.label;
        } else if constexpr (std::is_same_v<K, Scalar>) {
          n["dims"] = json::array();
          n["params"] = json::array({complex_json(k.value)});
        } else {
          n["dims"] = dims_json({k.d});
        }
      },
      g.kind());
  return n;
}

// Typed field access that reports the offending path.
template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

DimList parse_dims(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of dimensions");
  DimList out;
  for (const json& x : j) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0)) {
      throw ParseError(where + ": dimensions must be non-negative integers");
    }
    try {
      out.push_back(Dim(x.get<std::size_t>()));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return out;
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ParamVec parse_params(const json& n, const std::string& where) {
  ParamVec out;
  const json p = n.contains("params") ? n.at("params") : json::array();
  if (!p.is_array()) throw ParseError(where + ": params must be an array");
  for (const json& c : p) out.push_back(parse_complex(c, where));
  return out;
}

Dim only_dim(const DimList& dims, std::size_t count, const std::string& where) {
  if (dims.size() != count) {
    throw ValidationError(where + ": expected " + std::to_string(count) + " dims, got " +
                          std::to_string(dims.size()));
  }
  return dims[0];
}

Generator parse_generator(const json& n, const std::string& where) {
  const std::string kind = field<std::string>(n, "kind", where);
  const DimList dims = parse_dims(n.contains("dims") ? n.at("dims") : json::array(), where);
  try {
    if (kind == "zbox")
      return z_box(dims, field<std::size_t>(n, "n_in", where), parse_params(n, where));
    if (kind == "w") return w_node(only_dim(dims, 1, where), field<std::size_t>(n, "fanout", where));
    if (kind == "w_dagger")
      return w_node_dagger(only_dim(dims, 1, where), field<std::size_t>(n, "fanin", where));
    if (kind == "hadamard") return hadamard(only_dim(dims, 1, where));
    if (kind == "x")
      return x_spider(only_dim(dims, 1, where), field<std::size_t>(n, "n_in", where),
                      field<std::size_t>(n, "n_out", where));
    if (kind == "splitter" || kind == "merger" || kind == "swap") {
      only_dim(dims, 2, where);
      if (kind == "splitter") return splitter(dims[0], dims[1]);
      if (kind == "merger") return merger(dims[0], dims[1]);
      return swap(dims[0], dims[1]);
    }
    if (kind == "identity") return identity(only_dim(dims, 1, where));
    if (kind == "cap") return cap(only_dim(dims, 1, where));
    if (kind == "cup") return cup(only_dim(dims, 1, where));
    if (kind == "multiplier")
      return multiplier(only_dim(dims, 1, where), field<long long>(n, "label", where));
    if (kind == "scalar") {
      const ParamVec p = parse_params(n, where);
      if (p.size() != 1) throw ValidationError(where + ": scalar needs exactly one param");
      return scalar(p[0]);
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown kind tag '" + kind + "'");
}

Endpoint parse_endpoint(const json& j, const std::map<long long, std::size_t>& ids,
                        const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": endpoints are objects");
  if (j.contains("node")) {
    const long long id = field<long long>(j, "node", where);
    auto it = ids.find(id);
    if (it == ids.end()) throw ParseError(where + ": unknown node id " + std::to_string(id));
    return Endpoint::at(it->second, field<std::size_t>(j, "port", where));
  }
  const std::string side = field<std::string>(j, "boundary", where);
  const std::size_t index = field<std::size_t>(j, "index", where);
  if (side == "in") return Endpoint::input(index);
  if (side == "out") return Endpoint::output(index);
  throw ParseError(where + ": boundary must be \"in\" or \"out\", got \"" + side + "\"");
}

std::string number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dot_label(const Generator& g) {
  std::ostringstream os;
  os << g.tag();
  if (g.is<Multiplier>()) os << " x" << g.as<Multiplier>().label;
  if (g.is<Scalar>()) os << " " << format_complex(g.as<Scalar>().value);
  DimList dims = g.input_dims();
  dims.insert(dims.end(), g.output_dims().begin(), g.output_dims().end());
  if (!dims.empty()) os << " " << to_string(dims);
  return os.str();
}

std::string dot_id(const Endpoint& e) {
  if (e.is_node()) return "n" + std::to_string(e.id);
  return (e.kind == Endpoint::Kind::input ? "in" : "out") + std::to_string(e.id);
}

}  // namespace

std::string serialize(const Diagram& d) {
  json doc;
  doc["version"] = std::string(kDocumentVersion);
  doc["inputs"] = dims_json(d.inputs());
  doc["outputs"] = dims_json(d.outputs());
  json nodes = json::array();
  for (std::size_t n = 0; n < d.node_count(); ++n) nodes.push_back(node_json(n, d.node(n)));
  doc["nodes"] = nodes;
  json edges = json::array();
  for (const Edge& e : d.edges()) edges.push_back(json::array({endpoint_json(e.a), endpoint_json(e.b)}));
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

Diagram parse_diagram(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  const std::string version = field<std::string>(doc, "version", "document");
  if (version != kDocumentVersion) throw ParseError("unsupported document version '" + version + "'");
  DimList inputs = parse_dims(field<json>(doc, "inputs", "document"), "inputs");
  DimList outputs = parse_dims(field<json>(doc, "outputs", "document"), "outputs");

  const json nodes_j = field<json>(doc, "nodes", "document");
  if (!nodes_j.is_array()) throw ParseError("nodes must be an array");
  std::vector<Generator> nodes;
  std::map<long long, std::size_t> ids;
  for (std::size_t k = 0; k < nodes_j.size(); ++k) {
    const std::string where = "nodes[" + std::to_string(k) + "]";
    const long long id = field<long long>(nodes_j[k], "id", where);
    if (!ids.emplace(id, nodes.size()).second) {
      throw ParseError(where + ": duplicate node id " + std::to_string(id));
    }
    nodes.push_back(parse_generator(nodes_j[k], where));
  }

  const json edges_j = field<json>(doc, "edges", "document");
  if (!edges_j.is_array()) throw ParseError("edges must be an array");
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < edges_j.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const json& e = edges_j[k];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": an edge is a pair of endpoints");
    edges.push_back({parse_endpoint(e[0], ids, where), parse_endpoint(e[1], ids, where)});
  }
  return {std::move(inputs), std::move(outputs), std::move(nodes), std::move(edges)};
}

std::string to_dot(const Diagram& d) {
  std::ostringstream os;
  os << "graph diagram {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < d.inputs().size(); ++i)
    os << "  in" << i << " [shape=point, xlabel=\"in" << i << "\"];\n";
  for (std::size_t i = 0; i < d.outputs().size(); ++i)
    os << "  out" << i << " [shape=point, xlabel=\"out" << i << "\"];\n";
  for (std::size_t n = 0; n < d.node_count(); ++n)
    os << "  n" << n << " [label=\"" << dot_label(d.node(n)) << "\"];\n";
  for (const Edge& e : d.edges()) {
    os << "  " << dot_id(e.a) << " -- " << dot_id(e.b);
    if (d.has_endpoint(e.a)) os << " [label=\"" << d.endpoint_dim(e.a).value() << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_complex(Complex c) {
  const double im = c.imag() == 0.0 ? 0.0 : c.imag();
  std::string out = "(" + number(c.real());
  out += std::signbit(im) ? "-" : "+";
  out += number(std::abs(im)) + "i)";
  return out;
}

std::string format_normal_form(const NormalForm& nf) {
  std::string out = "dims: " + to_string(nf.out_dims) + ", coeffs: ";
  for (std::size_t k = 0; k < nf.coeffs.size(); ++k) {
    if (k) out += ", ";
    out += format_complex(nf.coeffs[k]);
  }
  return out;
}

std::string format_tensor_text(const Tensor& t) {
  std::string out = "out_dims: " + to_string(t.out_dims()) + "\nin_dims: " + to_string(t.in_dims()) + "\n";
  for (Complex c : t.entries()) out += number(c.real()) + " " + number(c.imag()) + "\n";
  return out;
}

std::string format_tensor_json(const Tensor& t) {
  json j;
  j["out_dims"] = dims_json(t.out_dims());
  j["in_dims"] = dims_json(t.in_dims());
  json e = json::array();
  for (Complex c : t.entries()) e.push_back(complex_json(c));
  j["entries"] = e;
  return j.dump() + "\n";
}

}  // namespace qfzxw
