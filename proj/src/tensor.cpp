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

#include "qfzxw/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qfzxw {

std::vector<std::size_t> strides_of(const DimList& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i].value();
  return s;
}

Tensor::Tensor(DimList out_dims, DimList in_dims)
    : out_dims_(std::move(out_dims)),
      in_dims_(std::move(in_dims)),
      rows_(product(out_dims_)),
      cols_(product(in_dims_)),
      entries_(rows_ * cols_, Complex(0.0, 0.0)) {}

Tensor::Tensor(DimList out_dims, DimList in_dims, std::vector<Complex> entries)
    : out_dims_(std::move(out_dims)),
      in_dims_(std::move(in_dims)),
      rows_(product(out_dims_)),
      cols_(product(in_dims_)),
      entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("tensor entry count " + std::to_string(entries_.size()) +
                                " does not match shape " + to_string(out_dims_) + " <- " +
                                to_string(in_dims_));
  }
}

Tensor Tensor::scalar(Complex c) { return Tensor({}, {}, {c}); }

Tensor Tensor::identity(Dim d) {
  Tensor t({d}, {d});
  for (std::size_t j = 0; j < d.value(); ++j) t(j, j) = 1.0;
  return t;
}

Tensor Tensor::state(DimList dims, std::vector<Complex> amplitudes) {
  return Tensor(std::move(dims), {}, std::move(amplitudes));
}

Tensor Tensor::scaled(Complex c) const {
  Tensor t = *this;
  for (Complex& x : t.entries_) x *= c;
  return t;
}

Tensor Tensor::adjoint() const {
  Tensor t(in_dims_, out_dims_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

Tensor Tensor::transposed() const {
  Tensor t(in_dims_, out_dims_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (const Complex& x : entries_) m = std::max(m, std::abs(x));
  return m;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  DimList out = a.out_dims();
  out.insert(out.end(), b.out_dims().begin(), b.out_dims().end());
  DimList in = a.in_dims();
  in.insert(in.end(), b.in_dims().begin(), b.in_dims().end());
  Tensor t(std::move(out), std::move(in));
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t rb = 0; rb < b.rows(); ++rb)
      for (std::size_t ca = 0; ca < a.cols(); ++ca) {
        const Complex x = a(ra, ca);
        if (x == Complex(0.0, 0.0)) continue;
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          t(ra * b.rows() + rb, ca * b.cols() + cb) = x * b(rb, cb);
      }
  return t;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.in_dims() != b.out_dims()) {
    throw SignatureError("matmul: inputs " + to_string(a.in_dims()) + " vs outputs " +
                         to_string(b.out_dims()));
  }
  Tensor t(a.out_dims(), b.in_dims());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex x = a(r, k);
      if (x == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) t(r, c) += x * b(k, c);
    }
  return t;
}

namespace {

void check_perm(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
}

// Decodes a flat index over `dims` into `digits`.
void decode(std::size_t flat, const DimList& dims, std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = flat % dims[i].value();
    flat /= dims[i].value();
  }
}

}  // namespace

Tensor permute_legs(const Tensor& t, std::span<const std::size_t> out_perm,
                    std::span<const std::size_t> in_perm) {
  check_perm(out_perm, t.out_dims().size());
  check_perm(in_perm, t.in_dims().size());
  DimList out, in;
  for (std::size_t p : out_perm) out.push_back(t.out_dims()[p]);
  for (std::size_t p : in_perm) in.push_back(t.in_dims()[p]);
  const auto old_out_strides = strides_of(t.out_dims());
  const auto old_in_strides = strides_of(t.in_dims());
  Tensor r(out, in);
  std::vector<std::size_t> digits;
  std::vector<std::size_t> row_of(r.rows()), col_of(r.cols());
  for (std::size_t row = 0; row < r.rows(); ++row) {
    decode(row, out, digits);
    std::size_t old = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) old += digits[k] * old_out_strides[out_perm[k]];
    row_of[row] = old;
  }
  for (std::size_t col = 0; col < r.cols(); ++col) {
    decode(col, in, digits);
    std::size_t old = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) old += digits[k] * old_in_strides[in_perm[k]];
    col_of[col] = old;
  }
  for (std::size_t row = 0; row < r.rows(); ++row)
    for (std::size_t col = 0; col < r.cols(); ++col) r(row, col) = t(row_of[row], col_of[col]);
  return r;
}

Tensor partial_trace(const Tensor& t, std::size_t out_leg, std::size_t in_leg) {
  if (out_leg >= t.out_dims().size() || in_leg >= t.in_dims().size()) {
    throw std::invalid_argument("partial_trace: leg index out of range");
  }
  if (t.out_dims()[out_leg] != t.in_dims()[in_leg]) {
    throw SignatureError("partial_trace: legs have different dimensions");
  }
  DimList out = t.out_dims();
  out.erase(out.begin() + static_cast<long>(out_leg));
  DimList in = t.in_dims();
  in.erase(in.begin() + static_cast<long>(in_leg));
  Tensor r(out, in);
  std::vector<std::size_t> od, id;
  for (std::size_t row = 0; row < t.rows(); ++row) {
    decode(row, t.out_dims(), od);
    for (std::size_t col = 0; col < t.cols(); ++col) {
      decode(col, t.in_dims(), id);
      if (od[out_leg] != id[in_leg]) continue;
      std::size_t nr = 0;
      for (std::size_t k = 0; k < od.size(); ++k)
        if (k != out_leg) nr = nr * t.out_dims()[k].value() + od[k];
      std::size_t nc = 0;
      for (std::size_t k = 0; k < id.size(); ++k)
        if (k != in_leg) nc = nc * t.in_dims()[k].value() + id[k];
      r(nr, nc) += t(row, col);
    }
  }
  return r;
}

Tensor bend_to_state(const Tensor& t) {
  DimList out = t.out_dims();
  out.insert(out.end(), t.in_dims().rbegin(), t.in_dims().rend());
  Tensor r(out, {});
  std::vector<std::size_t> id;
  const auto& in_dims = t.in_dims();
  for (std::size_t col = 0; col < t.cols(); ++col) {
    decode(col, in_dims, id);
    std::size_t rev = 0;
    for (std::size_t k = id.size(); k-- > 0;) rev = rev * in_dims[k].value() + id[k];
    for (std::size_t row = 0; row < t.rows(); ++row) r(row * t.cols() + rev, 0) = t(row, col);
  }
  return r;
}

Tensor unbend(const Tensor& state, std::size_t n_in) {
  if (!state.in_dims().empty()) throw std::invalid_argument("unbend expects a state");
  const DimList& all = state.out_dims();
  if (n_in > all.size()) throw std::invalid_argument("unbend: too many input legs");
  const DimList out(all.begin(), all.end() - static_cast<long>(n_in));
  const DimList in(all.rbegin(), all.rbegin() + static_cast<long>(n_in));
  Tensor r(out, in);
  std::vector<std::size_t> id;
  for (std::size_t col = 0; col < r.cols(); ++col) {
    decode(col, in, id);
    std::size_t rev = 0;
    for (std::size_t k = id.size(); k-- > 0;) rev = rev * in[k].value() + id[k];
    for (std::size_t row = 0; row < r.rows(); ++row) r(row, col) = state(row * r.cols() + rev, 0);
  }
  return r;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.out_dims() != b.out_dims() || a.in_dims() != b.in_dims()) {
    return std::numeric_limits<double>::infinity();
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

bool allclose(const Tensor& a, const Tensor& b, double tol) { return max_abs_diff(a, b) <= tol; }

std::optional<Complex> proportional(const Tensor& a, const Tensor& b, double tol) {
  if (a.out_dims() != b.out_dims() || a.in_dims() != b.in_dims()) return std::nullopt;
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::conj(b.entries()[i]) * a.entries()[i];
    den += std::norm(b.entries()[i]);
  }
  if (den == 0.0 || b.max_abs() <= tol) return std::nullopt;
  const Complex lambda = num / den;
  if (!allclose(a, b.scaled(lambda), tol)) return std::nullopt;
  return lambda;
}

}  // namespace qfzxw
