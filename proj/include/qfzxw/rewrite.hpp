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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfzxw/diagram.hpp"
#include "qfzxw/normal_form.hpp"

namespace qfzxw {

/// Mechanized rewrite rules, in simplifier priority order.
enum class RuleId {
  ScalarFold,
  RemoveIdentitySpider,
  WSingleLeg,
  MultiplierCompose,
  SplitterMergerCancel,
  SplitterAssoc,
  FuseZ,
  FuseX,
  HopfReduce,
};

/// Every rule, highest priority first.
const std::vector<RuleId>& all_rules();
std::string_view to_string(RuleId rule);
std::optional<RuleId> rule_from_string(std::string_view name);

/// A site where a rule applies. `nodes` lists the pattern's nodes in role
/// order; `edges` are the edge ids the pattern binds.
struct Match {
  RuleId rule = RuleId::ScalarFold;
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> edges;

  auto operator<=>(const Match&) const = default;
};

std::string describe(const Match& m);

/// apply_rule was given a match that find_matches would not produce.
class StaleMatchError : public Error {
 public:
  using Error::Error;
};

/// Lexicographic termination measure of the simplifier.
struct Measure {
  std::size_t nodes = 0;
  std::size_t multiplier_labels = 0;
  /// Sum over splitters of the number of splitters fed, directly or
  /// transitively, by their second output.
  std::size_t splitter_nesting = 0;
  std::size_t edges = 0;

  auto operator<=>(const Measure&) const = default;
};

Measure measure(const Diagram& d);

struct TraceStep {
  Match match;
  std::string site;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  Measure measure_before;
  Measure measure_after;
};

struct RewriteTrace {
  std::vector<TraceStep> steps;
};

/// All matches of `rule` in `d`, sorted. Matches may overlap.
std::vector<Match> find_matches(const Diagram& d, RuleId rule);

/// Rewrites one site. The result evaluates to the same tensor as `d`.
/// Throws StaleMatchError if `m` is not a current match of `d`.
Diagram apply_rule(const Diagram& d, const Match& m);

/// Reapplies every step of `trace` starting from `start`.
Diagram replay(const Diagram& start, const RewriteTrace& trace);

enum class EvalCheck {
  automatic,  // every rewrite in debug builds, every 16th otherwise
  always,
  never,
};

struct SimplifyOptions {
  EvalCheck check = EvalCheck::automatic;
  /// Checks are skipped for diagrams whose boundary tensor is larger.
  std::size_t check_max_entries = 1 << 12;
};

struct SimplifyResult {
  Diagram diagram;
  RewriteTrace trace;
  /// Passes in which at least one rewrite fired.
  std::size_t passes = 0;
};

/// Applies rules in priority order until none matches. Each pass runs every
/// rule to exhaustion in turn. Throws std::logic_error if a checked rewrite
/// changes the interpretation.
SimplifyResult simplify(const Diagram& d, const SimplifyOptions& options = {});

/// Replacement for apply_rule used by check_rule_soundness.
using Rewriter = std::function<Diagram(const Diagram&, const Match&)>;

struct SoundnessReport {
  std::string rule;
  bool mechanized = true;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double max_deviation = 0.0;

  bool ok() const { return mechanized && failed == 0 && passed == samples; }
};

inline constexpr double kSoundnessTolerance = 1e-10;

/// Samples left-hand sides of `rule` over dimensions drawn from
/// `dim_choices`, rewrites one match in each and compares interpretations.
SoundnessReport check_rule_soundness(RuleId rule, const std::vector<std::size_t>& dim_choices,
                                     std::size_t samples, std::uint64_t seed,
                                     const Rewriter& rewriter = {});

/// Rules stated only as pictures. They have no matcher and are reported as
/// not mechanized.
const std::vector<std::string>& figure_only_rules();

/// One report per mechanized rule followed by one per figure-only rule.
std::vector<SoundnessReport> check_all_rules(const std::vector<std::size_t>& dim_choices,
                                             std::size_t samples, std::uint64_t seed);

struct EqualityCertificate {
  NormalForm lhs;
  NormalForm rhs;
  RewriteTrace lhs_trace;
  RewriteTrace rhs_trace;
  /// First coefficient index where the normal forms disagree.
  std::optional<std::size_t> first_difference;
  /// lambda with lhs = lambda * rhs, when the two are proportional.
  std::optional<Complex> ratio;
};

struct EqualityVerdict {
  bool equal = false;
  EqualityCertificate certificate;
};

/// Decides equality of two diagrams through their normal forms. Throws
/// SignatureError when the boundaries differ.
EqualityVerdict prove_equal(const Diagram& lhs, const Diagram& rhs, double tol);

}  // namespace qfzxw
