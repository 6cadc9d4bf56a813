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

#include "qfzxw/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "qfzxw/interpreter.hpp"
#include "qfzxw/normal_form.hpp"

namespace qfzxw {

namespace {

std::size_t bit_reverse(std::size_t x, std::size_t bits) {
  std::size_t r = 0;
  for (std::size_t b = 0; b < bits; ++b) r |= ((x >> b) & 1U) << (bits - 1 - b);
  return r;
}

// Swap generator on wires (p, p + 1) of `dims`, identity elsewhere.
Diagram swap_at(const DimList& dims, std::size_t p) {
  const DimList before(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(p));
  const DimList after(dims.begin() + static_cast<std::ptrdiff_t>(p + 2), dims.end());
  return par_compose(par_compose(wires(before), node(swap(dims[p], dims[p + 1]))), wires(after));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

GalleryCheck check_entry(const GalleryEntry& entry, double tol) {
  GalleryCheck c;
  const Tensor t = eval(entry.diagram);
  if (entry.comparison == Comparison::exact) {
    c.deviation = max_abs_diff(t, entry.oracle);
    c.pass = c.deviation <= tol;
    if (c.pass) c.lambda = Complex(1.0, 0.0);
    return c;
  }
  c.lambda = proportional(t, entry.oracle, tol);
  if (c.lambda) {
    c.deviation = max_abs_diff(t, entry.oracle.scaled(*c.lambda));
    c.pass = true;
  } else {
    c.deviation = max_abs_diff(t, entry.oracle);
  }
  return c;
}

Tensor qft_oracle(std::size_t n_qubits) {
  const std::size_t size = std::size_t{1} << n_qubits;
  Tensor t(DimList(n_qubits, 2), DimList(n_qubits, 2));
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) t(r, c) = root_of_unity(bit_reverse(r, n_qubits) * c, size);
  return t;
}

GalleryEntry build_qft(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > 8) throw std::out_of_range("qft needs 1 to 8 qubits");
  const DimList qubits(n_qubits, 2);
  Diagram d = seq_compose(node(hadamard(std::size_t{1} << n_qubits)), multi_merger(qubits));
  d = seq_compose(multi_splitter(qubits), d);
  // Bubble the wires into reverse order with adjacent swaps.
  for (std::size_t i = 0; i + 1 < n_qubits; ++i)
    for (std::size_t p = 0; p + 1 < n_qubits - i; ++p) d = seq_compose(swap_at(qubits, p), d);
  return {"qft", d, qft_oracle(n_qubits), Comparison::up_to_scalar};
}

Tensor mixed_cnot_oracle(Dim d) {
  const std::size_t n = d.value();
  Tensor t({2, d}, {2, d});
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t x = 0; x < n; ++x) t(c * n + (x + c) % n, c * n + x) = 1.0;
  return t;
}

GalleryEntry build_mixed_cnot(Dim d) {
  if (d.value() < 2) throw std::out_of_range("cnot needs a target of dimension at least 2");
  DiagramBuilder b({2, d}, {2, d});
  // Control copied onto a dim-d wire as |c>, then added to the target.
  const std::size_t z = b.add(z_box({2, 2, d}, 1, phaseless_params(2)));
  const std::size_t x = b.add(x_spider(d, 2, 1));
  b.connect(Endpoint::input(0), Endpoint::at(z, 0));
  b.connect(Endpoint::at(z, 1), Endpoint::output(0));
  b.connect(Endpoint::input(1), Endpoint::at(x, 0));
  b.connect(Endpoint::at(z, 2), Endpoint::at(x, 1));
  b.connect(Endpoint::at(x, 2), Endpoint::output(1));
  return {"cnot", b.build(), mixed_cnot_oracle(d), Comparison::exact};
}

CnotPowerVerdict cnot_power_identity(Dim d, std::optional<std::size_t> copies) {
  CnotPowerVerdict v;
  v.copies = copies.value_or(d.value());
  const Diagram gate = build_mixed_cnot(d).diagram;
  Diagram power = wires({2, d});
  for (std::size_t k = 0; k < v.copies; ++k) power = seq_compose(gate, power);
  v.simplified = simplify(power);
  const Diagram& s = v.simplified.diagram;
  v.rewrites_to_identity = s.node_count() == 0 && s.edge_count() == 2;
  for (const Edge& e : s.edges()) {
    const Edge n = e.normalized();
    v.rewrites_to_identity = v.rewrites_to_identity && n.a.kind == Endpoint::Kind::input &&
                             n.b.kind == Endpoint::Kind::output && n.a.id == n.b.id;
  }
  Tensor id = kron(Tensor::identity(2), Tensor::identity(d));
  v.semantically_identity = allclose(eval(power), id, 1e-9);
  return v;
}

Tensor symmetrizer_oracle(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  Tensor t(DimList(n, 2), DimList(n, 2));
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  double count = 0.0;
  do {
    // P_sigma |x_1 .. x_n> = |x_sigma(1) .. x_sigma(n)>, bit 0 the first wire.
    for (std::size_t x = 0; x < size; ++x) {
      std::size_t y = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = (x >> (n - 1 - sigma[i])) & 1U;
        y |= bit << (n - 1 - i);
      }
      t(y, x) += 1.0;
    }
    count += 1.0;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return t.scaled(1.0 / count);
}

GalleryEntry build_symmetrizer(std::size_t n) {
  if (n < 1 || n > 4) throw std::out_of_range("symmetrizer needs 1 to 4 qubits");
  const Dim w = n + 1;
  ParamVec weights;
  for (std::size_t k = 1; k <= n; ++k)
    weights.push_back(1.0 / static_cast<double>(binomial(n, k)));

  DiagramBuilder b(DimList(n, 2), DimList(n, 2));
  const std::size_t sum = b.add(x_spider(w, n, 1));
  const std::size_t weigh = b.add(z_box({w, w}, 1, weights));
  const std::size_t spread = b.add(x_spider(w, 1, n));
  b.connect(Endpoint::at(sum, n), Endpoint::at(weigh, 0));
  b.connect(Endpoint::at(weigh, 1), Endpoint::at(spread, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t embed = b.add(z_box({2, w}, 1, phaseless_params(2)));
    const std::size_t project = b.add(z_box({w, 2}, 1, phaseless_params(2)));
    b.connect(Endpoint::input(i), Endpoint::at(embed, 0));
    b.connect(Endpoint::at(embed, 1), Endpoint::at(sum, i));
    b.connect(Endpoint::at(spread, 1 + i), Endpoint::at(project, 0));
    b.connect(Endpoint::at(project, 1), Endpoint::output(i));
  }
  return {"symmetrizer", b.build(), symmetrizer_oracle(n), Comparison::exact};
}

Tensor white_triangle_tensor(Dim d) {
  const std::size_t m = d.value();
  Tensor t({d, d}, {d});
  for (std::size_t n = 0; n < m; ++n)
    for (std::size_t k = 0; k <= n; ++k)
      t(k * m + (n - k), n) = std::sqrt(static_cast<double>(binomial(n, k)));
  return t;
}

GalleryEntry build_white_triangle(Dim d) {
  Tensor t = white_triangle_tensor(d);
  return {"triangle", synthesize_map(t), t, Comparison::exact};
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"qft", "cnot", "symmetrizer", "triangle"};
  return names;
}

GalleryEntry build_gallery(std::string_view name, std::size_t param) {
  if (name == "qft") return build_qft(param);
  if (name == "cnot") return build_mixed_cnot(param);
  if (name == "symmetrizer") return build_symmetrizer(param);
  if (name == "triangle") return build_white_triangle(param);
  std::string msg = "unknown gallery entry '" + std::string(name) + "'; valid names:";
  for (const std::string& n : gallery_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

}  // namespace qfzxw
