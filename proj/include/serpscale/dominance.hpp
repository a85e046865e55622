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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "serpscale/enumeration.hpp"

namespace serpscale {

struct ComparisonError : Error {
  using Error::Error;
};
struct AuditError : Error {
  using Error::Error;
};

/// Pointwise grade dominance: every position of s1 carries a grade at least
/// as high as the matching position of s2.
bool rule1_non_inferior(const Serp& s1, const Serp& s2);

/// Same grade multiset, and s2 is reachable from s1 by repeatedly swapping a
/// higher grade rightward past a strictly lower one. Decided by the closed
/// form: every prefix of s1 holds at least as many grades >= g as the same
/// prefix of s2, for every threshold g.
bool rule2_non_inferior(const Serp& s1, const Serp& s2);

enum class Provenance { Rule1, Rule2, Transitive };

/// The reflexive-transitive closure of the two non-inferiority rules over
/// one universe, with per-pair provenance.
class DominanceRelation {
 public:
  /// Building the closure is quadratic in members; the guard refuses
  /// universes past max_members unless allow_large is set.
  static DominanceRelation build(SerpUniverse universe,
                                 size_t max_members = 4096,
                                 bool allow_large = false);

  const SerpUniverse& universe() const { return universe_; }
  size_t size() const { return universe_.size(); }

  /// Closure membership by member index.
  bool non_inferior(size_t i, size_t j) const;
  /// Rule1 when the pair satisfies rule 1 directly, else Rule2 when direct,
  /// else Transitive for pairs only reachable through intermediates.
  std::optional<Provenance> provenance(size_t i, size_t j) const;
  /// Lookup by SERP; raises MembershipError for non-members.
  std::optional<Provenance> non_inferior(const Serp& s1, const Serp& s2) const;

 private:
  explicit DominanceRelation(SerpUniverse u) : universe_(std::move(u)) {}
  size_t words_per_row() const { return (universe_.size() + 63) / 64; }
  bool bit(const std::vector<uint64_t>& rows, size_t i, size_t j) const;

  SerpUniverse universe_;
  std::vector<uint64_t> closure_;
  std::vector<uint64_t> direct_rule1_;
  std::vector<uint64_t> direct_rule2_;

  friend struct HasseBuilder;
};

struct HasseEdge {
  size_t from;  // dominating member index
  size_t to;    // dominated member index
  Provenance tag;  // Rule1 or Rule2, Rule1 preferred when both apply
};

/// Transitive reduction of the dominance closure: covering pairs only.
/// Self-contained; node order matches the universe's member order.
struct HasseDiagram {
  std::vector<std::string> nodes;  // grade-sequence labels, lexicographic
  std::vector<HasseEdge> edges;    // sorted by (from, to) member order
};

HasseDiagram hasse(const DominanceRelation& relation);

/// DOT rendering: nodes labeled with grade sequences in lexicographic
/// order, solid arrows for Rule1 edges, dashed for Rule2.
std::string to_dot(const HasseDiagram& diagram,
                   const std::string& graph_name = "serp_universe");

struct AuditViolation {
  size_t dominating;
  size_t dominated;
  ExactValue dominating_score;
  ExactValue dominated_score;
};

/// All ordered pairs where the dominance order and the scores disagree:
/// s1 >= s2 in the closure yet the metric ranks s1 strictly worse. Ties are
/// never violations. An empty result certifies consistency.
std::vector<AuditViolation> audit_metric(const DominanceRelation& relation,
                                         const MetricSpec& spec,
                                         const GainMap& map);

/// Same audit against an arbitrary precomputed score per member.
std::vector<AuditViolation> audit_scores(
    const DominanceRelation& relation, const std::vector<ExactValue>& scores,
    bool higher_is_better);

}  // namespace serpscale
