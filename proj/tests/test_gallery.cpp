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

#include <gtest/gtest.h>

#include <cmath>

#include "qfzxw/gallery.hpp"
#include "qfzxw/interpreter.hpp"
#include "qfzxw/normal_form.hpp"
#include "support/oracles.hpp"

namespace qfzxw {
namespace {

using testing::identity_on;
using testing::qft_reference;
using testing::symmetric_projector;
using testing::trace;

TEST(Qft, MatchesReferenceUpToScalar) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const GalleryEntry e = build_qft(n);
    const auto lambda = proportional(eval(e.diagram), qft_reference(n), 1e-9);
    ASSERT_TRUE(lambda.has_value()) << n;
    EXPECT_LE(std::abs(*lambda - Complex(1.0, 0.0)), 1e-12);
    EXPECT_TRUE(check_entry(e).pass);
  }
}

TEST(Qft, TwoQubitEntries) {
  const Tensor t = eval(build_qft(2).diagram);
  EXPECT_LE(std::abs(t(2, 1) - Complex(0.0, 1.0)), 1e-12);
  EXPECT_LE(std::abs(t(1, 1) - Complex(-1.0, 0.0)), 1e-12);
  EXPECT_LE(std::abs(t(3, 1) - Complex(0.0, -1.0)), 1e-12);
  EXPECT_LE(std::abs(t(0, 3) - Complex(1.0, 0.0)), 1e-12);
}

TEST(Qft, ScaledReferenceIsUnitary) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Tensor u = eval(build_qft(n).diagram).scaled(1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n))));
    EXPECT_TRUE(allclose(matmul(u.adjoint(), u), identity_on(DimList(n, 2)), 1e-12)) << n;
  }
}

TEST(Qft, RejectsOutOfRange) {
  EXPECT_THROW(build_qft(0), std::out_of_range);
  EXPECT_THROW(build_qft(9), std::out_of_range);
}

TEST(MixedCnot, PermutesBasisStates) {
  for (std::size_t d = 2; d <= 7; ++d) {
    EXPECT_EQ(max_abs_diff(eval(build_mixed_cnot(d).diagram), testing::cnot_reference(d)), 0.0) << d;
  }
}

TEST(MixedCnot, RejectsDimensionOne) { EXPECT_THROW(build_mixed_cnot(1), std::out_of_range); }

TEST(MixedCnot, ExampleAtThree) {
  const Tensor t = eval(build_mixed_cnot(3).diagram);
  EXPECT_EQ(t(1 * 3 + 0, 1 * 3 + 2), Complex(1.0, 0.0));
}

TEST(MixedCnot, DthPowerRewritesToIdentity) {
  for (std::size_t d = 2; d <= 7; ++d) {
    const CnotPowerVerdict v = cnot_power_identity(d);
    EXPECT_TRUE(v.rewrites_to_identity) << d;
    EXPECT_TRUE(v.semantically_identity) << d;
  }
}

TEST(MixedCnot, FewerCopiesIsNotIdentity) {
  for (std::size_t d = 2; d <= 7; ++d) {
    const CnotPowerVerdict v = cnot_power_identity(d, d - 1);
    EXPECT_FALSE(v.rewrites_to_identity) << d;
    EXPECT_FALSE(v.semantically_identity) << d;
  }
}

TEST(Symmetrizer, MatchesProjector) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const GalleryEntry e = build_symmetrizer(n);
    EXPECT_LE(max_abs_diff(eval(e.diagram), symmetric_projector(n)), 1e-12) << n;
    EXPECT_TRUE(check_entry(e).pass);
  }
}

TEST(Symmetrizer, TwoQubitExample) {
  const Tensor t = eval(build_symmetrizer(2).diagram);
  EXPECT_NEAR(t(1, 1).real(), 0.5, 1e-12);
  EXPECT_NEAR(t(1, 2).real(), 0.5, 1e-12);
  EXPECT_NEAR(t(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(t(3, 3).real(), 1.0, 1e-12);
}

TEST(Symmetrizer, IdempotentWithRankNPlusOne) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const Tensor p = eval(build_symmetrizer(n).diagram);
    EXPECT_TRUE(allclose(matmul(p, p), p, 1e-12));
    EXPECT_TRUE(allclose(p.adjoint(), p, 1e-12));
    EXPECT_LE(std::abs(trace(p) - Complex(static_cast<double>(n + 1), 0.0)), 1e-12);
  }
}

TEST(WhiteTriangle, MatchesBinomialOracle) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const Tensor t = eval(build_white_triangle(d).diagram);
    const Tensor want = testing::triangle_reference(d);
    EXPECT_LE(max_abs_diff(t, want), 1e-9) << d;
    EXPECT_EQ(white_triangle_tensor(d).out_dims(), want.out_dims());
  }
}

TEST(WhiteTriangle, ThreeExample) {
  const Tensor t = white_triangle_tensor(3);
  EXPECT_NEAR(t(1 * 3 + 1, 2).real(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(t(0 * 3 + 2, 2), Complex(1.0, 0.0));
  EXPECT_EQ(t(1 * 3 + 2, 2), Complex(0.0, 0.0));
}

TEST(WhiteTriangle, NormalFormRoundTrip) {
  for (std::size_t d = 1; d <= 5; ++d) {
    const Tensor t = white_triangle_tensor(d);
    EXPECT_TRUE(nf_equal(normalize(build_white_triangle(d).diagram), normal_form_of(t), 1e-9));
  }
}

TEST(Gallery, NamesBuild) {
  for (const std::string& name : gallery_names()) {
    const GalleryEntry e = build_gallery(name, 2);
    EXPECT_EQ(e.name, name);
    EXPECT_TRUE(check_entry(e).pass) << name;
  }
}

TEST(Gallery, UnknownNameListsValidOnes) {
  try {
    build_gallery("bogus", 2);
    FAIL();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("bogus"), std::string::npos);
    for (const std::string& name : gallery_names()) EXPECT_NE(what.find(name), std::string::npos);
  }
}

TEST(Gallery, CheckEntryRejectsWrongOracle) {
  GalleryEntry e = build_mixed_cnot(3);
  e.oracle = identity_on({2, 3});
  const GalleryCheck c = check_entry(e);
  EXPECT_FALSE(c.pass);
  EXPECT_GE(c.deviation, 1.0 - 1e-12);
}

}  // namespace
}  // namespace qfzxw
