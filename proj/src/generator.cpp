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

#include "qfzxw/generator.hpp"

#include <algorithm>
#include <sstream>

namespace qfzxw {

std::size_t product(const DimList& dims) {
  std::size_t p = 1;
  for (Dim d : dims) p *= d.value();
  return p;
}

std::size_t min_dim(const DimList& dims) {
  if (dims.empty()) throw std::invalid_argument("min_dim of an empty dimension list");
  return std::min_element(dims.begin(), dims.end())->value();
}

std::string to_string(const DimList& dims) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i != 0) os << ", ";
    os << dims[i].value();
  }
  os << ')';
  return os.str();
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

DimList repeat(Dim d, std::size_t n) { return DimList(n, d); }

}  // namespace

Generator::Generator(GeneratorKind kind) : kind_(std::move(kind)) {
  std::visit(
      Overloaded{
          [&](ZBox& z) {
            if (z.legs.empty()) throw std::invalid_argument("Z box needs at least one leg");
            if (z.n_in > z.legs.size())
              throw std::invalid_argument("Z box input count exceeds leg count");
            const std::size_t want = min_dim(z.legs) - 1;
            if (z.params.size() != want) {
              throw std::invalid_argument("Z box parameter length " +
                                          std::to_string(z.params.size()) + " but min leg dim " +
                                          std::to_string(want + 1) + " requires " +
                                          std::to_string(want));
            }
            inputs_.assign(z.legs.begin(), z.legs.begin() + static_cast<long>(z.n_in));
            outputs_.assign(z.legs.begin() + static_cast<long>(z.n_in), z.legs.end());
          },
          [&](WNode& w) {
            if (w.fanout == 0) throw std::invalid_argument("W node fanout must be positive");
            inputs_ = {w.d};
            outputs_ = repeat(w.d, w.fanout);
          },
          [&](WNodeDagger& w) {
            if (w.fanin == 0) throw std::invalid_argument("W node fanin must be positive");
            inputs_ = repeat(w.d, w.fanin);
            outputs_ = {w.d};
          },
          [&](Hadamard& h) {
            inputs_ = {h.d};
            outputs_ = {h.d};
          },
          [&](XSpider& x) {
            inputs_ = repeat(x.d, x.n_in);
            outputs_ = repeat(x.d, x.n_out);
          },
          [&](Splitter& s) {
            inputs_ = {Dim(s.m.value() * s.n.value())};
            outputs_ = {s.m, s.n};
          },
          [&](Merger& s) {
            inputs_ = {s.m, s.n};
            outputs_ = {Dim(s.m.value() * s.n.value())};
          },
          [&](Swap& s) {
            inputs_ = {s.m, s.n};
            outputs_ = {s.n, s.m};
          },
          [&](Identity& i) {
            inputs_ = {i.d};
            outputs_ = {i.d};
          },
          [&](Cap& c) { outputs_ = {c.d, c.d}; },
          [&](Cup& c) { inputs_ = {c.d, c.d}; },
          [&](Multiplier& m) {
            m.label %= m.d.value();
            inputs_ = {m.d};
            outputs_ = {m.d};
          },
          [&](Scalar&) {},
      },
      kind_);
}

std::string_view Generator::tag() const {
  return std::visit(Overloaded{
                        [](const ZBox&) { return std::string_view("zbox"); },
                        [](const WNode&) { return std::string_view("w"); },
                        [](const WNodeDagger&) { return std::string_view("w_dagger"); },
                        [](const Hadamard&) { return std::string_view("hadamard"); },
                        [](const XSpider&) { return std::string_view("x"); },
                        [](const Splitter&) { return std::string_view("splitter"); },
                        [](const Merger&) { return std::string_view("merger"); },
                        [](const Swap&) { return std::string_view("swap"); },
                        [](const Identity&) { return std::string_view("identity"); },
                        [](const Cap&) { return std::string_view("cap"); },
                        [](const Cup&) { return std::string_view("cup"); },
                        [](const Multiplier&) { return std::string_view("multiplier"); },
                        [](const Scalar&) { return std::string_view("scalar"); },
                    },
                    kind_);
}

Dim Generator::port_dim(std::size_t port) const {
  if (port < inputs_.size()) return inputs_[port];
  port -= inputs_.size();
  if (port < outputs_.size()) return outputs_[port];
  throw std::out_of_range("port index out of range");
}

PortSide Generator::port_side(std::size_t port) const {
  if (port >= num_ports()) throw std::out_of_range("port index out of range");
  return port < inputs_.size() ? PortSide::input : PortSide::output;
}

Generator z_box(DimList legs, std::size_t n_in, ParamVec params) {
  return Generator(ZBox{std::move(legs), n_in, std::move(params)});
}
Generator w_node(Dim d, std::size_t fanout) { return Generator(WNode{d, fanout}); }
Generator w_node_dagger(Dim d, std::size_t fanin) { return Generator(WNodeDagger{d, fanin}); }
Generator hadamard(Dim d) { return Generator(Hadamard{d}); }
Generator x_spider(Dim d, std::size_t n_in, std::size_t n_out) {
  return Generator(XSpider{d, n_in, n_out});
}
Generator splitter(Dim m, Dim n) { return Generator(Splitter{m, n}); }
Generator merger(Dim m, Dim n) { return Generator(Merger{m, n}); }
Generator swap(Dim m, Dim n) { return Generator(Swap{m, n}); }
Generator identity(Dim d) { return Generator(Identity{d}); }
Generator cap(Dim d) { return Generator(Cap{d}); }
Generator cup(Dim d) { return Generator(Cup{d}); }

Generator multiplier(Dim d, long long label) {
  const auto dd = static_cast<long long>(d.value());
  const long long reduced = ((label % dd) + dd) % dd;
  return Generator(Multiplier{d, static_cast<std::size_t>(reduced)});
}

Generator scalar(Complex value) { return Generator(Scalar{value}); }

ParamVec phaseless_params(std::size_t min_dimension) {
  return ParamVec(min_dimension == 0 ? 0 : min_dimension - 1, Complex(1.0, 0.0));
}

}  // namespace qfzxw
