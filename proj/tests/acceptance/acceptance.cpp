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

// Acceptance run: one PASS/FAIL line per criterion, each within its time
// budget. Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "qfzxw/gallery.hpp"
#include "qfzxw/interpreter.hpp"
#include "qfzxw/io.hpp"
#include "qfzxw/normal_form.hpp"
#include "qfzxw/rewrite.hpp"
#include "support/oracles.hpp"
#include "support/random_diagram.hpp"

#ifndef QFZXW_CLI_PATH
#error "QFZXW_CLI_PATH must name the qfzxw binary"
#endif

namespace {

using namespace qfzxw;
using testing::Digits;
using testing::oracle;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Entries that are 0 or 1 in `want` must match exactly; others within 1e-14.
bool exact_match(const Tensor& got, const Tensor& want) {
  if (got.out_dims() != want.out_dims() || got.in_dims() != want.in_dims()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const Complex w = want.entries()[i];
    const Complex g = got.entries()[i];
    if (w == Complex(0.0, 0.0) || w == Complex(1.0, 0.0)) {
      if (g != w) return false;
    } else if (std::abs(g - w) > 1e-14) {
      return false;
    }
  }
  return true;
}

Complex delta_value(const Digits& all, const ParamVec& params) {
  for (std::size_t v : all)
    if (v != all.front()) return 0.0;
  if (all.empty() || all.front() == 0) return 1.0;
  return params[all.front() - 1];
}

Digits concat(const Digits& a, const Digits& b) {
  Digits r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

ParamVec random_params(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ParamVec p(n);
  for (Complex& c : p) c = {g(rng), g(rng)};
  return p;
}

// All dim lists of the given length with entries in [1, max_dim].
std::vector<DimList> dim_lists(std::size_t length, std::size_t max_dim) {
  std::vector<DimList> out{{}};
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<DimList> next;
    for (const DimList& l : out)
      for (std::size_t d = 1; d <= max_dim; ++d) {
        DimList e = l;
        e.push_back(d);
        next.push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

Outcome generator_semantics_exact() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::size_t checked = 0;
  auto check = [&](const Tensor& got, const Tensor& want, const std::string& what) {
    ++checked;
    o.require(exact_match(got, want), what);
  };
  for (std::size_t d = 1; d <= 5; ++d) {
    const std::string at = " d=" + std::to_string(d);
    check(generator_semantics(identity(d)),
          oracle({d}, {d}, [](const Digits& a, const Digits& b) { return a[0] == b[0] ? 1.0 : 0.0; }),
          "identity" + at);
    const auto bell = [](const Digits& v) { return v[0] == v[1] ? 1.0 : 0.0; };
    check(generator_semantics(cap(d)), oracle({d, d}, {}, [&](const Digits& a, const Digits&) { return bell(a); }),
          "cap" + at);
    check(generator_semantics(cup(d)), oracle({}, {d, d}, [&](const Digits&, const Digits& b) { return bell(b); }),
          "cup" + at);
    check(generator_semantics(hadamard(d)), oracle({d}, {d}, [d](const Digits& a, const Digits& b) {
            return testing::omega_power(a[0] * b[0], d);
          }),
          "hadamard" + at);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto w = [](const Digits& many, std::size_t one) -> Complex {
        std::size_t nonzero = 0, value = 0;
        for (std::size_t v : many)
          if (v != 0) {
            ++nonzero;
            value = v;
          }
        return one == 0 ? (nonzero == 0 ? 1.0 : 0.0) : (nonzero == 1 && value == one ? 1.0 : 0.0);
      };
      check(generator_semantics(w_node(d, k)),
            oracle(DimList(k, d), {d}, [&](const Digits& a, const Digits& b) { return w(a, b[0]); }),
            "w" + at);
      check(generator_semantics(w_node_dagger(d, k)),
            oracle({d}, DimList(k, d), [&](const Digits& a, const Digits& b) { return w(b, a[0]); }),
            "w dagger" + at);
    }
    for (std::size_t n_in = 0; n_in <= 3; ++n_in)
      for (std::size_t n_out = 0; n_in + n_out <= 3; ++n_out) {
        if (n_in + n_out == 0) continue;
        std::uniform_real_distribution<double> angle(-M_PI, M_PI);
        std::vector<double> alphas(d - 1);
        for (double& a : alphas) a = angle(rng);
        ParamVec p;
        for (double a : alphas) p.push_back(std::polar(1.0, a));
        check(eval(green_spider(d, n_in, n_out, alphas)),
              oracle(DimList(n_out, d), DimList(n_in, d),
                     [&](const Digits& a, const Digits& b) { return delta_value(concat(b, a), p); }),
              "green spider" + at);
        check(generator_semantics(x_spider(d, n_in, n_out)),
              oracle(DimList(n_out, d), DimList(n_in, d), [d](const Digits& a, const Digits& b) {
                const std::size_t sa = std::accumulate(a.begin(), a.end(), std::size_t{0});
                const std::size_t sb = std::accumulate(b.begin(), b.end(), std::size_t{0});
                return sa % d == sb % d ? 1.0 : 0.0;
              }),
              "x spider" + at);
      }
  }
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 5; ++n) {
      const std::string at = " " + std::to_string(m) + "," + std::to_string(n);
      check(generator_semantics(swap(m, n)), oracle({n, m}, {m, n}, [](const Digits& a, const Digits& b) {
              return a[0] == b[1] && a[1] == b[0] ? 1.0 : 0.0;
            }),
            "swap" + at);
      check(generator_semantics(splitter(m, n)), oracle({m, n}, {m * n}, [n](const Digits& a, const Digits& b) {
              return a[0] * n + a[1] == b[0] ? 1.0 : 0.0;
            }),
            "splitter" + at);
      check(generator_semantics(merger(m, n)), oracle({m * n}, {m, n}, [n](const Digits& a, const Digits& b) {
              return b[0] * n + b[1] == a[0] ? 1.0 : 0.0;
            }),
            "merger" + at);
    }
  for (std::size_t len = 1; len <= 3; ++len)
    for (const DimList& dims : dim_lists(len, 5)) {
      // Strides: digit j weighs the product of the dims after it.
      check(eval(multi_splitter(dims)), oracle(dims, {product(dims)}, [&](const Digits& a, const Digits& b) {
              std::size_t x = 0;
              for (std::size_t j = 0; j < dims.size(); ++j) x = x * dims[j].value() + a[j];
              return x == b[0] ? 1.0 : 0.0;
            }),
            "multi splitter " + to_string(dims));
      for (std::size_t n_in = 0; n_in <= len; ++n_in) {
        const DimList in(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(n_in));
        const DimList out(dims.begin() + static_cast<std::ptrdiff_t>(n_in), dims.end());
        const ParamVec p = random_params(rng, min_dim(dims) - 1);
        check(eval(mixed_z_box(in, out, p)),
              oracle(out, in, [&](const Digits& a, const Digits& b) { return delta_value(concat(b, a), p); }),
              "mixed z box " + to_string(in) + "->" + to_string(out));
      }
    }
  if (o.pass) o.detail = std::to_string(checked) + " generator tensors";
  return o;
}

Outcome functoriality() {
  Outcome o;
  std::mt19937_64 rng(2);
  testing::RandomDiagramOptions opts;
  opts.max_nodes = 5;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Diagram b = testing::random_diagram(rng, opts);
    const Diagram a = testing::random_diagram(rng, b.outputs(), opts);
    worst = std::max(worst, max_abs_diff(eval(seq_compose(a, b)), matmul(eval(a), eval(b))));
    worst = std::max(worst, max_abs_diff(eval(par_compose(a, b)), kron(eval(a), eval(b))));
  }
  o.require(worst <= 1e-9, "max deviation " + fmt(worst));
  if (o.pass) o.detail = "200 pairs, max deviation " + fmt(worst);
  return o;
}

Outcome rule_soundness() {
  Outcome o;
  const std::vector<std::size_t> dims{2, 3, 4, 5};
  double worst = 0.0;
  for (RuleId rule : all_rules()) {
    const SoundnessReport r = check_rule_soundness(rule, dims, 100, 3);
    worst = std::max(worst, r.max_deviation);
    o.require(r.ok() && r.max_deviation <= 1e-10,
              r.rule + ": " + std::to_string(r.failed) + " failed, max " + fmt(r.max_deviation));
  }
  const SoundnessReport bad = check_rule_soundness(RuleId::FuseZ, dims, 100, 3, testing::corrupted_fuse_z);
  o.require(bad.failed > 0, "corrupted FuseZ was not caught");
  if (o.pass)
    o.detail = std::to_string(all_rules().size()) + " rules, max deviation " + fmt(worst) +
               "; corrupted FuseZ failed " + std::to_string(bad.failed) + "/100";
  return o;
}

Outcome nf_completeness() {
  Outcome o;
  std::mt19937_64 rng(4);
  testing::RandomDiagramOptions opts;
  opts.max_dim = 4;
  opts.max_nodes = 6;
  std::size_t equal = 0, disagreements = 0;
  for (int k = 0; k < 100; ++k) {
    const Diagram a = testing::random_diagram(rng, opts);
    Diagram b = k % 2 == 0 ? synthesize_map(eval(a)) : par_compose(a, node(scalar(2.0)));
    if (k % 2 == 1) {
      for (int tries = 0; tries < 100; ++tries) {
        const Diagram c = testing::random_diagram(rng, a.inputs(), opts);
        if (c.outputs() == a.outputs()) {
          b = c;
          break;
        }
      }
    }
    const bool by_nf = nf_equal(normalize(a), normalize(b), 1e-9);
    disagreements += by_nf != allclose(eval(a), eval(b), 1e-9);
    equal += by_nf;
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.require(equal > 0 && equal < 100, "degenerate sample: " + std::to_string(equal) + " equal");
  if (o.pass) o.detail = "100 pairs, " + std::to_string(equal) + " equal, 0 disagreements";
  return o;
}

Outcome synthesis_round_trip() {
  Outcome o;
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    DimList dims;
    do dims = testing::random_dims(rng, 1, 4, 8);
    while (product(dims) > 64);
    if (k % 2 == 0) {
      const Tensor t = testing::random_tensor(rng, dims);
      worst = std::max(worst, max_abs_diff(eval(synthesize(t)), t));
    } else {
      const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, dims.size())(rng);
      const DimList out(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(cut));
      const DimList in(dims.begin() + static_cast<std::ptrdiff_t>(cut), dims.end());
      const Tensor t = testing::random_tensor(rng, out, in);
      worst = std::max(worst, max_abs_diff(eval(synthesize_map(t)), t));
    }
  }
  o.require(worst <= 1e-12, "max deviation " + fmt(worst));
  if (o.pass) o.detail = "200 tensors, max deviation " + fmt(worst);
  return o;
}

Outcome coefficient_operations() {
  Outcome o;
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    // Partial trace: legs s and t share a dimension.
    DimList dims = testing::random_dims(rng, 2, 4, 4);
    std::vector<std::size_t> pos(dims.size());
    std::iota(pos.begin(), pos.end(), 0);
    std::shuffle(pos.begin(), pos.end(), rng);
    const std::size_t s = pos[0], t = pos[1];
    dims[t] = dims[s];
    const Tensor a = testing::random_tensor(rng, dims);
    DimList rest;
    for (std::size_t j = 0; j < dims.size(); ++j)
      if (j != s && j != t) rest.push_back(dims[j]);
    Tensor want(rest, {});
    const auto strides = strides_of(dims);
    for (std::size_t x = 0; x < a.size(); ++x) {
      Digits dg(dims.size());
      for (std::size_t j = 0; j < dims.size(); ++j) dg[j] = (x / strides[j]) % dims[j].value();
      if (dg[s] != dg[t]) continue;
      std::size_t y = 0;
      for (std::size_t j = 0; j < dims.size(); ++j)
        if (j != s && j != t) y = y * dims[j].value() + dg[j];
      want.entries()[y] += a.entries()[x];
    }
    worst = std::max(worst, max_abs_diff(to_tensor(nf_partial_trace(normal_form_of(a), s, t)), want));

    const Tensor b = testing::random_tensor(rng, testing::random_dims(rng, 0, 2, 4));
    const Tensor c = testing::random_tensor(rng, testing::random_dims(rng, 0, 2, 4));
    DimList both = b.out_dims();
    both.insert(both.end(), c.out_dims().begin(), c.out_dims().end());
    Tensor outer(both, {});
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) outer.entries()[i * c.size() + j] = b.entries()[i] * c.entries()[j];
    worst = std::max(worst, max_abs_diff(to_tensor(nf_tensor_product(normal_form_of(b), normal_form_of(c))), outer));
  }
  o.require(worst <= 1e-10, "max deviation " + fmt(worst));
  if (o.pass) o.detail = "100 traces + 100 products, max deviation " + fmt(worst);
  return o;
}

Outcome mixed_cnot() {
  Outcome o;
  for (std::size_t d = 2; d <= 7; ++d)
    o.require(max_abs_diff(eval(build_mixed_cnot(d).diagram), testing::cnot_reference(d)) == 0.0,
              "permutation mismatch at d=" + std::to_string(d));
  for (std::size_t d = 2; d <= 5; ++d) {
    const CnotPowerVerdict v = cnot_power_identity(d);
    o.require(v.rewrites_to_identity && v.semantically_identity,
              "power " + std::to_string(d) + " did not rewrite to identity");
    const CnotPowerVerdict short_power = cnot_power_identity(d, d - 1);
    o.require(!short_power.rewrites_to_identity && !short_power.semantically_identity,
              "power " + std::to_string(d - 1) + " accepted at d=" + std::to_string(d));
  }
  if (o.pass) o.detail = "exact for d=2..7; d-th power rewrites to wires for d=2..5";
  return o;
}

Outcome qft() {
  Outcome o;
  std::string lambdas;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lambda = proportional(eval(build_qft(n).diagram), testing::qft_reference(n), 1e-9);
    o.require(lambda.has_value(), "n=" + std::to_string(n) + " not proportional");
    if (!lambda) continue;
    // The Hadamard is the unnormalized DFT, so no scalar is left over.
    o.require(std::abs(*lambda - Complex(1.0, 0.0)) <= 1e-9, "lambda " + format_complex(*lambda));
    lambdas += " " + format_complex(*lambda);
  }
  if (o.pass) o.detail = "n=1..3, lambda" + lambdas;
  return o;
}

std::size_t rank(Tensor t, double tol) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < t.cols() && r < t.rows(); ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < t.rows(); ++i)
      if (std::abs(t(i, c)) > std::abs(t(p, c))) p = i;
    if (std::abs(t(p, c)) <= tol) continue;
    for (std::size_t k = 0; k < t.cols(); ++k) std::swap(t(p, k), t(r, k));
    for (std::size_t i = r + 1; i < t.rows(); ++i) {
      const Complex f = t(i, c) / t(r, c);
      for (std::size_t k = c; k < t.cols(); ++k) t(i, k) -= f * t(r, k);
    }
    ++r;
  }
  return r;
}

// (1/n!) sum over permutations of the wire-permutation matrices.
Tensor permutation_average(std::size_t n) {
  Tensor t(DimList(n, 2), DimList(n, 2));
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  double count = 0.0;
  do {
    const Tensor p = oracle(DimList(n, 2), DimList(n, 2), [&](const Digits& a, const Digits& b) {
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[sigma[i]]) return 0.0;
      return 1.0;
    });
    for (std::size_t i = 0; i < t.size(); ++i) t.entries()[i] += p.entries()[i];
    count += 1.0;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return t.scaled(1.0 / count);
}

Outcome symmetrizer() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) {
    const Tensor want = permutation_average(n);
    const std::string at = " n=" + std::to_string(n);
    o.require(max_abs_diff(eval(build_symmetrizer(n).diagram), want) <= 1e-9, "mismatch" + at);
    o.require(max_abs_diff(matmul(want, want), want) <= 1e-9, "oracle not idempotent" + at);
    o.require(rank(want, 1e-9) == n + 1, "oracle rank " + std::to_string(rank(want, 1e-9)) + at);
  }
  if (o.pass) o.detail = "n=1..4 within 1e-9, idempotent, rank n+1";
  return o;
}

Outcome white_triangle() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t d = 1; d <= 6; ++d) {
    const Tensor want = testing::triangle_reference(d);
    o.require(max_abs_diff(white_triangle_tensor(d), want) == 0.0, "formula mismatch at d=" + std::to_string(d));
    const NormalForm got = normalize(build_white_triangle(d).diagram);
    const NormalForm ref = normal_form_of(want);
    o.require(got.out_dims == ref.out_dims, "NF dims differ at d=" + std::to_string(d));
    if (got.out_dims != ref.out_dims) continue;
    for (std::size_t k = 0; k < ref.coeffs.size(); ++k) worst = std::max(worst, std::abs(got.coeffs[k] - ref.coeffs[k]));
  }
  o.require(worst <= 1e-12, "NF deviation " + fmt(worst));
  if (o.pass) o.detail = "exact for d=1..6, NF deviation " + fmt(worst);
  return o;
}

Outcome hopf() {
  Outcome o;
  std::string lambdas;
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto connected = [d](std::size_t wires) {
      DiagramBuilder b({d}, {d});
      const std::size_t z = b.add(z_box(DimList(wires + 1, d), 1, phaseless_params(d)));
      const std::size_t x = b.add(x_spider(d, wires, 1));
      b.connect(Endpoint::input(0), Endpoint::at(z, 0));
      for (std::size_t k = 0; k < wires; ++k) b.connect(Endpoint::at(z, 1 + k), Endpoint::at(x, k));
      b.connect(Endpoint::at(x, wires), Endpoint::output(0));
      return eval(b.build());
    };
    const Tensor apart = kron(eval(node(x_spider(d, 0, 1))), eval(node(z_box({d}, 1, phaseless_params(d)))));
    const auto lambda = proportional(connected(d), apart, 1e-12);
    o.require(lambda.has_value() && std::abs(*lambda) > 1e-9, "d=" + std::to_string(d) + " wires do not disconnect");
    if (lambda) lambdas += " " + format_complex(*lambda);
    if (d >= 2)
      o.require(!proportional(connected(d - 1), apart, 1e-9).has_value(),
                "d-1 wires disconnect at d=" + std::to_string(d));
  }
  if (o.pass) o.detail = "d=1..5, lambda" + lambdas;
  return o;
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(QFZXW_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = pclose(pipe);
  if (out) *out = std::move(text);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli() {
  Outcome o;
  std::size_t round_trips = 0;
  std::vector<std::pair<std::string, std::size_t>> entries;
  for (std::size_t n = 1; n <= 3; ++n) entries.emplace_back("qft", n);
  for (std::size_t d = 2; d <= 5; ++d) entries.emplace_back("cnot", d);
  for (std::size_t n = 1; n <= 4; ++n) entries.emplace_back("symmetrizer", n);
  for (std::size_t d = 1; d <= 5; ++d) entries.emplace_back("triangle", d);
  for (const auto& [name, param] : entries) {
    const Diagram d = build_gallery(name, param).diagram;
    o.require(structurally_equal(parse_diagram(serialize(d)), d), name + " round trip");
    const bool by_d = name == "cnot" || name == "triangle";
    std::string emitted;
    const int code = run_cli("gallery " + name + (by_d ? " --d " : " --n ") + std::to_string(param), &emitted);
    o.require(code == 0, name + " gallery exit " + std::to_string(code));
    if (code == 0) o.require(structurally_equal(parse_diagram(emitted), d), name + " emitted document differs");
    ++round_trips;
  }
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const Diagram d = testing::random_diagram(rng);
    o.require(structurally_equal(parse_diagram(serialize(d)), d), "random round trip " + std::to_string(k));
    ++round_trips;
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qfzxw_acceptance";
  fs::create_directories(dir);
  auto file = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const Diagram gate = build_mixed_cnot(3).diagram;
  const std::string cube = file("cube.json", serialize(seq_compose(gate, seq_compose(gate, gate))));
  const std::string wires23 = file("wires.json", serialize(wires({2, 3})));
  const std::string single = file("gate.json", serialize(gate));
  const std::string wire2 = file("wire2.json", serialize(wire(2)));
  const std::string broken = file("broken.json", "{\"version\": \"1\", \"nodes\": [");
  const std::string dangling = file(
      "dangling.json",
      R"({"version":"1","inputs":[],"outputs":[],"nodes":[{"id":0,"kind":"identity","dims":[2]}],"edges":[]})");
  const std::vector<std::pair<std::string, int>> cases{
      {"equal " + cube + " " + wires23, 0},
      {"equal " + single + " " + wires23, 1},
      {"eval " + broken, 2},
      {"eval " + dangling, 3},
      {"equal " + wire2 + " " + wires23, 4},
  };
  for (const auto& [args, want] : cases) {
    const int got = run_cli(args);
    o.require(got == want, "exit " + std::to_string(got) + " for code " + std::to_string(want));
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(round_trips) + " round trips, exit codes 0-4";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "generator semantics", 1.0, generator_semantics_exact},
      {2, "functoriality", 10.0, functoriality},
      {3, "rule soundness", 30.0, rule_soundness},
      {4, "normal-form completeness", 60.0, nf_completeness},
      {5, "synthesis round trip", 60.0, synthesis_round_trip},
      {6, "coefficient operations", 10.0, coefficient_operations},
      {7, "mixed CNOT", 10.0, mixed_cnot},
      {8, "QFT", 5.0, qft},
      {9, "symmetrizer", 5.0, symmetrizer},
      {10, "white triangle", 2.0, white_triangle},
      {11, "Hopf property", 2.0, hopf},
      {12, "CLI", 10.0, cli},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.require(false, "over budget");
      o.detail = "took " + fmt(seconds) + " s, budget " + fmt(c.budget_seconds) + " s";
    }
    failures += !o.pass;
    std::printf("%s %2d %-26s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
