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

#include "qfzxw/normal_form.hpp"

#include <cmath>

#include "qfzxw/interpreter.hpp"

namespace qfzxw {

IndexDigits digits(std::size_t k, const DimList& dims) {
  if (k >= product(dims)) {
    throw std::out_of_range("index " + std::to_string(k) + " out of range for dims " +
                            to_string(dims));
  }
  IndexDigits out{dims, std::vector<std::size_t>(dims.size(), 0)};
  for (std::size_t i = dims.size(); i-- > 0;) {
    out.digits[i] = k % dims[i].value();
    k /= dims[i].value();
  }
  return out;
}

std::size_t recompose(const IndexDigits& d) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < d.dims.size(); ++i) k = k * d.dims[i].value() + d.digits[i];
  return k;
}

namespace {

Complex clean(Complex c) { return std::abs(c) < kZeroCoefficient ? Complex(0.0, 0.0) : c; }

}  // namespace

Diagram synthesize(const Tensor& state) {
  if (!state.in_dims().empty()) {
    throw std::invalid_argument("synthesize expects a state; bend maps first");
  }
  const DimList& dims = state.out_dims();
  const std::size_t m = state.size();
  std::vector<Complex> weight(m);
  for (std::size_t k = 0; k < m; ++k) weight[k] = clean(state.entries()[k]);
  weight[0] = clean(weight[0] - 1.0);

  std::vector<std::size_t> branches;
  for (std::size_t k = 0; k < m; ++k)
    if (weight[k] != Complex(0.0, 0.0)) branches.push_back(k);

  DiagramBuilder b({}, dims);
  // Running X-spider sum per leg.
  std::vector<std::optional<Endpoint>> sums(dims.size());
  const Dim qubit(2);

  if (!branches.empty()) {
    const std::size_t root = b.add(z_box({qubit}, 0, {Complex(1.0, 0.0)}));
    Endpoint feed = Endpoint::at(root, 0);
    for (std::size_t idx = 0; idx < branches.size(); ++idx) {
      Endpoint branch_in = feed;
      if (idx + 1 < branches.size()) {
        const std::size_t w = b.add(w_node(qubit, 2));
        b.connect(feed, Endpoint::at(w, 0));
        branch_in = Endpoint::at(w, 1);
        feed = Endpoint::at(w, 2);
      }
      const std::size_t k = branches[idx];
      const IndexDigits dg = digits(k, dims);
      DimList legs{qubit};
      std::vector<std::size_t> targets;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dg.digits[i] != 0) {
          legs.push_back(dims[i]);
          targets.push_back(i);
        }
      }
      const std::size_t z = b.add(z_box(legs, 1, {weight[k]}));
      b.connect(branch_in, Endpoint::at(z, 0));
      for (std::size_t t = 0; t < targets.size(); ++t) {
        const std::size_t leg = targets[t];
        Endpoint source = Endpoint::at(z, 1 + t);
        if (dg.digits[leg] != 1) {
          const std::size_t mul =
              b.add(multiplier(dims[leg], static_cast<long long>(dg.digits[leg])));
          b.connect(source, Endpoint::at(mul, 0));
          source = Endpoint::at(mul, 1);
        }
        auto& acc = sums[leg];
        if (!acc) {
          acc = source;
        } else {
          const std::size_t x = b.add(x_spider(dims[leg], 2, 1));
          b.connect(*acc, Endpoint::at(x, 0));
          b.connect(source, Endpoint::at(x, 1));
          acc = Endpoint::at(x, 2);
        }
      }
    }
  }

  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (sums[i]) {
      b.connect(*sums[i], Endpoint::output(i));
    } else {
      const std::size_t x = b.add(x_spider(dims[i], 0, 1));
      b.connect(Endpoint::at(x, 0), Endpoint::output(i));
    }
  }
  return b.build();
}

Diagram synthesize_map(const Tensor& t) {
  return unbend(synthesize(bend_to_state(t)), t.in_dims().size());
}

NormalForm normal_form_of(const Tensor& t) {
  const Tensor s = bend_to_state(t);
  return {s.out_dims(), std::vector<Complex>(s.entries().begin(), s.entries().end())};
}

NormalForm normalize(const Diagram& d) { return normal_form_of(eval(d)); }

Tensor to_tensor(const NormalForm& nf) { return Tensor::state(nf.out_dims, nf.coeffs); }

bool nf_equal(const NormalForm& a, const NormalForm& b, double tol) {
  return !first_difference(a, b, tol).has_value();
}

std::optional<std::size_t> first_difference(const NormalForm& a, const NormalForm& b,
                                            double tol) {
  if (a.out_dims != b.out_dims || a.coeffs.size() != b.coeffs.size()) return 0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k)
    if (std::abs(a.coeffs[k] - b.coeffs[k]) > tol) return k;
  return std::nullopt;
}

NormalForm nf_tensor_product(const NormalForm& a, const NormalForm& b) {
  NormalForm r;
  r.out_dims = a.out_dims;
  r.out_dims.insert(r.out_dims.end(), b.out_dims.begin(), b.out_dims.end());
  r.coeffs.reserve(a.coeffs.size() * b.coeffs.size());
  for (const Complex& x : a.coeffs)
    for (const Complex& y : b.coeffs) r.coeffs.push_back(x * y);
  return r;
}

NormalForm nf_partial_trace(const NormalForm& a, std::size_t s, std::size_t t) {
  if (s == t) throw std::invalid_argument("nf_partial_trace: legs must differ");
  if (s >= a.out_dims.size() || t >= a.out_dims.size()) {
    throw std::out_of_range("nf_partial_trace: leg index out of range");
  }
  if (a.out_dims[s] != a.out_dims[t]) {
    throw SignatureError("nf_partial_trace: legs " + std::to_string(s) + " and " +
                         std::to_string(t) + " have different dimensions");
  }
  NormalForm r;
  for (std::size_t i = 0; i < a.out_dims.size(); ++i)
    if (i != s && i != t) r.out_dims.push_back(a.out_dims[i]);
  r.coeffs.assign(product(r.out_dims), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
    const IndexDigits dg = digits(k, a.out_dims);
    if (dg.digits[s] != dg.digits[t]) continue;
    IndexDigits rest{r.out_dims, {}};
    for (std::size_t i = 0; i < dg.digits.size(); ++i)
      if (i != s && i != t) rest.digits.push_back(dg.digits[i]);
    r.coeffs[recompose(rest)] += a.coeffs[k];
  }
  return r;
}

}  // namespace qfzxw
