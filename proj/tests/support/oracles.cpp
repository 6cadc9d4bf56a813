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

#include "support/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace qfzxw::testing {

Tensor oracle(const DimList& out, const DimList& in,
              const std::function<Complex(const Digits&, const Digits&)>& f) {
  Tensor t(out, in);
  auto decode = [](std::size_t x, const DimList& dims) {
    Digits v(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      v[k] = x % dims[k].value();
      x /= dims[k].value();
    }
    return v;
  };
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) = f(decode(r, out), decode(c, in));
  return t;
}

Complex omega_power(std::size_t k, std::size_t d) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d));
}

Tensor identity_on(const DimList& dims) {
  Tensor t(dims, dims);
  for (std::size_t j = 0; j < t.rows(); ++j) t(j, j) = 1.0;
  return t;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

Complex trace(const Tensor& t) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < std::min(t.rows(), t.cols()); ++i) s += t(i, i);
  return s;
}

Tensor qft_reference(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  return oracle(DimList(n, 2), DimList(n, 2), [&](const Digits& o, const Digits& i) {
    // Reading the output bits least significant first reverses them.
    std::size_t r = 0, c = 0;
    for (std::size_t k = n; k-- > 0;) r = r * 2 + o[k];
    for (std::size_t k = 0; k < n; ++k) c = c * 2 + i[k];
    return omega_power(r * c, size);
  });
}

Tensor cnot_reference(Dim d) {
  const std::size_t m = d.value();
  return oracle({2, d}, {2, d}, [m](const Digits& o, const Digits& i) {
    return o[0] == i[0] && o[1] == (i[1] + i[0]) % m ? 1.0 : 0.0;
  });
}

Tensor symmetric_projector(std::size_t n) {
  auto weight = [](const Digits& v) { return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1U)); };
  return oracle(DimList(n, 2), DimList(n, 2), [&](const Digits& o, const Digits& i) {
    const std::size_t k = weight(i);
    return weight(o) == k ? 1.0 / binomial(n, k) : 0.0;
  });
}

Tensor triangle_reference(Dim d) {
  return oracle({d, d}, {d}, [](const Digits& o, const Digits& i) {
    return o[0] + o[1] == i[0] ? std::sqrt(binomial(i[0], o[0])) : 0.0;
  });
}

Diagram corrupted_fuse_z(const Diagram& d, const Match& m) {
  const Diagram good = apply_rule(d, m);
  const std::size_t shared = std::min(min_dim(d.node(m.nodes[0]).as<ZBox>().legs),
                                      min_dim(d.node(m.nodes[1]).as<ZBox>().legs));
  // The fused box is the last node added.
  const std::size_t id = good.node_count() - 1;
  if (!good.node(id).is<ZBox>()) return good;
  ZBox z = good.node(id).as<ZBox>();
  for (std::size_t j = shared; j < min_dim(z.legs); ++j) z.params[j - 1] = 1.0;
  return good.with_node(id, Generator(z));
}

}  // namespace qfzxw::testing
