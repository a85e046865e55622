/*
 * Copyright 2026 The serpscale authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "serpscale/core_model.hpp"
#include "serpscale/exact_value.hpp"
#include "serpscale/metrics.hpp"

namespace serpscale {

struct CapacityError : Error {
  using Error::Error;
};
struct DegenerateScaleError : Error {
  using Error::Error;
};
struct UnmappedValueError : Error {
  using Error::Error;
};
struct MembershipError : Error {
  using Error::Error;
};

/// Default guards against combinatorial growth; lift with unlimited=true.
struct EnumerationLimits {
  int max_depth = 20;
  size_t max_members = size_t(1) << 20;
  bool unlimited = false;
};

/// An exhaustively enumerated set of SERP classes in lexicographic order:
/// either every arrangement of a fixed grade multiset, or every length-k
/// grade sequence (optionally capped by a census). The attached census is
/// what AP and NDCG normalize against; for uncapped prefixes it assumes k
/// documents of every grade, so the ideal prefix is all top grade.
class SerpUniverse {
 public:
  enum class Mode { FullPermutations, Prefixes };

  static SerpUniverse full_permutations(const GradeCensus& census,
                                        const EnumerationLimits& limits = {});
  static SerpUniverse prefixes(int k, int num_grades,
                               const std::optional<GradeCensus>& cap =
                                   std::nullopt,
                               const EnumerationLimits& limits = {});

  Mode mode() const { return mode_; }
  int depth() const { return depth_; }
  int num_grades() const { return num_grades_; }
  bool capped() const { return capped_; }
  const GradeCensus& census() const { return census_; }
  const std::vector<Serp>& members() const { return members_; }
  size_t size() const { return members_.size(); }
  const Serp& member(size_t index) const { return members_[index]; }

  /// Index in canonical order, or nullopt if the SERP is not a member.
  std::optional<size_t> index_of(const Serp& serp) const;

 private:
  SerpUniverse() = default;
  Mode mode_ = Mode::Prefixes;
  int depth_ = 0;
  int num_grades_ = 2;
  bool capped_ = false;
  GradeCensus census_;
  std::vector<Serp> members_;
};

/// Scores every member and deduplicates under exact arithmetic.
std::vector<ExactValue> distinct_scores(const MetricSpec& spec,
                                        const GainMap& map,
                                        const SerpUniverse& universe);

/// Order-preserving bijection from a metric's m distinct scores onto the
/// equi-spaced points i/(m-1), i = 0..m-1.
class Intervalizer {
 public:
  Intervalizer(MetricSpec spec, std::vector<ExactValue> sorted_sources);

  const MetricSpec& spec() const { return spec_; }
  const std::vector<ExactValue>& sources() const { return sources_; }
  size_t size() const { return sources_.size(); }
  Rational target(size_t index) const;

  /// Maps a raw score to its target point. A score outside the source set
  /// raises UnmappedValueError; that signals a universe mismatch such as a
  /// differing recall base, and is deliberately not patched over by
  /// nearest-value matching.
  Rational map_value(const ExactValue& raw) const;

 private:
  MetricSpec spec_;
  std::vector<ExactValue> sources_;
};

Intervalizer build_intervalizer(const MetricSpec& spec, const GainMap& map,
                                const SerpUniverse& universe);

struct EquispacingReport {
  bool uniform = false;
  std::vector<ExactValue> gaps;  // consecutive differences, exact
};

/// True when the metric's distinct scores over the universe form an
/// equi-spaced ladder.
EquispacingReport equispacing_check(const MetricSpec& spec, const GainMap& map,
                                    const SerpUniverse& universe);

}  // namespace serpscale
