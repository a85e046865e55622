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
#include "serpscale/dominance.hpp"

#include <algorithm>

namespace serpscale {

namespace {

void require_comparable(const Serp& s1, const Serp& s2) {
  if (s1.length() != s2.length())
    throw ComparisonError("SERPs of different length are not comparable");
}

int max_grade(const Serp& s) {
  return *std::max_element(s.grades.begin(), s.grades.end());
}

}  // namespace

bool rule1_non_inferior(const Serp& s1, const Serp& s2) {
  require_comparable(s1, s2);
  for (int i = 0; i < s1.length(); ++i)
    if (s1.grades[static_cast<size_t>(i)] < s2.grades[static_cast<size_t>(i)])
      return false;
  return true;
}

bool rule2_non_inferior(const Serp& s1, const Serp& s2) {
  require_comparable(s1, s2);
  const int top = std::max(max_grade(s1), max_grade(s2));
  // Running prefix counts of grades >= g, one counter per threshold.
  std::vector<int> lead(static_cast<size_t>(top) + 1, 0);
  for (int p = 0; p < s1.length(); ++p) {
    const int g1 = s1.grades[static_cast<size_t>(p)];
    const int g2 = s2.grades[static_cast<size_t>(p)];
    for (int g = 1; g <= top; ++g) {
      if (g1 >= g) ++lead[static_cast<size_t>(g)];
      if (g2 >= g) --lead[static_cast<size_t>(g)];
      if (lead[static_cast<size_t>(g)] < 0) return false;
    }
  }
  // Equal multisets once every full-length count balances out.
  for (int g = 1; g <= top; ++g)
    if (lead[static_cast<size_t>(g)] != 0) return false;
  return true;
}

DominanceRelation DominanceRelation::build(SerpUniverse universe,
                                           size_t max_members,
                                           bool allow_large) {
  if (universe.size() == 0)
    throw ParameterError("dominance needs a non-empty universe");
  if (!allow_large && universe.size() > max_members)
    throw CapacityError("universe of " + std::to_string(universe.size()) +
                        " members exceeds the dominance guard");

  DominanceRelation rel(std::move(universe));
  const size_t n = rel.universe_.size();
  const size_t words = rel.words_per_row();
  rel.closure_.assign(n * words, 0);
  rel.direct_rule1_.assign(n * words, 0);
  rel.direct_rule2_.assign(n * words, 0);

  auto set_bit = [words](std::vector<uint64_t>& rows, size_t i, size_t j) {
    rows[i * words + j / 64] |= uint64_t(1) << (j % 64);
  };

  const auto& members = rel.universe_.members();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        set_bit(rel.closure_, i, j);
        continue;
      }
      bool related = false;
      if (rule1_non_inferior(members[i], members[j])) {
        set_bit(rel.direct_rule1_, i, j);
        related = true;
      }
      if (rule2_non_inferior(members[i], members[j])) {
        set_bit(rel.direct_rule2_, i, j);
        related = true;
      }
      if (related) set_bit(rel.closure_, i, j);
    }
  }

  // Warshall over bitset rows.
  for (size_t k = 0; k < n; ++k) {
    const uint64_t* row_k = rel.closure_.data() + k * words;
    for (size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      if (rel.bit(rel.closure_, i, k)) {
        uint64_t* row_i = rel.closure_.data() + i * words;
        for (size_t w = 0; w < words; ++w) row_i[w] |= row_k[w];
      }
    }
  }
  return rel;
}

bool DominanceRelation::bit(const std::vector<uint64_t>& rows, size_t i,
                            size_t j) const {
  return (rows[i * words_per_row() + j / 64] >> (j % 64)) & 1;
}

bool DominanceRelation::non_inferior(size_t i, size_t j) const {
  if (i >= size() || j >= size())
    throw ParameterError("member index out of range");
  return bit(closure_, i, j);
}

std::optional<Provenance> DominanceRelation::provenance(size_t i,
                                                        size_t j) const {
  if (!non_inferior(i, j)) return std::nullopt;
  if (i == j || bit(direct_rule1_, i, j)) return Provenance::Rule1;
  if (bit(direct_rule2_, i, j)) return Provenance::Rule2;
  return Provenance::Transitive;
}

std::optional<Provenance> DominanceRelation::non_inferior(
    const Serp& s1, const Serp& s2) const {
  auto i = universe_.index_of(s1);
  auto j = universe_.index_of(s2);
  if (!i || !j)
    throw MembershipError("SERP is not a member of this universe");
  return provenance(*i, *j);
}

HasseDiagram hasse(const DominanceRelation& relation) {
  const size_t n = relation.size();
  const size_t words = (n + 63) / 64;

  // Strict closure rows, and the transpose for the covering test.
  std::vector<uint64_t> strict(n * words, 0);
  std::vector<uint64_t> strict_into(n * words, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && relation.non_inferior(i, j)) {
        strict[i * words + j / 64] |= uint64_t(1) << (j % 64);
        strict_into[j * words + i / 64] |= uint64_t(1) << (i % 64);
      }

  HasseDiagram diagram;
  for (const Serp& member : relation.universe().members())
    diagram.nodes.push_back(member.text());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !((strict[i * words + j / 64] >> (j % 64)) & 1)) continue;
      // Covering edge: nothing lies strictly between i and j.
      bool covered = false;
      for (size_t w = 0; w < words && !covered; ++w)
        if (strict[i * words + w] & strict_into[j * words + w]) covered = true;
      if (covered) continue;
      auto tag = relation.provenance(i, j);
      if (!tag || *tag == Provenance::Transitive)
        throw Error("covering pair without a direct rule, universe broken");
      diagram.edges.push_back({i, j, *tag});
    }
  }
  std::sort(diagram.edges.begin(), diagram.edges.end(),
            [](const HasseEdge& a, const HasseEdge& b) {
              return a.from != b.from ? a.from < b.from : a.to < b.to;
            });
  return diagram;
}

std::string to_dot(const HasseDiagram& diagram, const std::string& graph_name) {
  std::string out = "digraph " + graph_name + " {\n";
  out += "  node [shape=box];\n";
  for (const std::string& node : diagram.nodes)
    out += "  \"" + node + "\";\n";
  for (const HasseEdge& edge : diagram.edges) {
    out += "  \"" + diagram.nodes[edge.from] + "\" -> \"" +
           diagram.nodes[edge.to] + "\"";
    out += edge.tag == Provenance::Rule1 ? " [style=solid];\n"
                                         : " [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

std::vector<AuditViolation> audit_scores(const DominanceRelation& relation,
                                         const std::vector<ExactValue>& scores,
                                         bool higher_is_better) {
  if (scores.size() != relation.size())
    throw AuditError("one score per universe member is required");
  std::vector<AuditViolation> violations;
  const size_t n = relation.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !relation.non_inferior(i, j)) continue;
      const bool worse = higher_is_better ? scores[i] < scores[j]
                                          : scores[i] > scores[j];
      if (worse) violations.push_back({i, j, scores[i], scores[j]});
    }
  }
  return violations;
}

std::vector<AuditViolation> audit_metric(const DominanceRelation& relation,
                                         const MetricSpec& spec,
                                         const GainMap& map) {
  spec.validate();
  std::vector<ExactValue> scores;
  scores.reserve(relation.size());
  for (const Serp& member : relation.universe().members()) {
    try {
      scores.push_back(
          score_serp(member, map, relation.universe().census(), spec));
    } catch (const UndefinedMetricError& e) {
      throw AuditError("metric undefined on member " + member.text() + ": " +
                       e.what());
    }
  }
  return audit_scores(relation, scores, higher_is_better(spec.id));
}

}  // namespace serpscale
