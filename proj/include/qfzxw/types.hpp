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

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfzxw {

using Complex = std::complex<double>;

/// Dimension of the Hilbert space carried by a wire. Always at least 1.
class Dim {
 public:
  constexpr Dim() = default;
  // Implicit so that `{2, 3}` reads naturally as a DimList.
  Dim(std::size_t value) : value_(value) {  // NOLINT(google-explicit-constructor)
    if (value == 0) throw std::invalid_argument("dimension must be at least 1");
  }

  constexpr std::size_t value() const { return value_; }

  friend constexpr bool operator==(Dim, Dim) = default;
  friend constexpr auto operator<=>(Dim a, Dim b) { return a.value_ <=> b.value_; }

 private:
  std::size_t value_ = 1;
};

using DimList = std::vector<Dim>;

/// Coefficients a_1 .. a_{L-1} of a Z box; a_0 is implicitly 1.
using ParamVec = std::vector<Complex>;

std::size_t product(const DimList& dims);
std::size_t min_dim(const DimList& dims);
std::string to_string(const DimList& dims);

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or argument.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A diagram violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Boundary signatures do not line up.
class SignatureError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfzxw
