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

#include <map>
#include <string>
#include <vector>

#include "serpscale/rational.hpp"

namespace serpscale {

struct InvalidGradeError : Error {
  using Error::Error;
};
struct JoinError : Error {
  using Error::Error;
};

/// Ordered relevance labels, index 0 the lowest grade.
class GradeScale {
 public:
  explicit GradeScale(std::vector<std::string> labels);
  static GradeScale binary();                 // "0", "1"
  static GradeScale numeric(int num_grades);  // "0" .. "n-1"

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int grade) const;
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Ordinal-to-numeric mapping from grade index to a gain in [0, 1].
/// Gains are non-decreasing with grade, start at the minimum for grade 0,
/// and at least one gain is positive.
class GainMap {
 public:
  explicit GainMap(std::vector<Rational> gains);
  static GainMap binary();               // 0, 1
  static GainMap linear(int num_grades); // i / (n-1)

  int size() const { return static_cast<int>(gains_.size()); }
  const Rational& gain(int grade) const;
  const std::vector<Rational>& gains() const { return gains_; }

 private:
  std::vector<Rational> gains_;
};

/// An ordered sequence of grade indices, position 0 the top of the ranking.
struct Serp {
  std::vector<int> grades;

  Serp() = default;
  explicit Serp(std::vector<int> g);

  int length() const { return static_cast<int>(grades.size()); }
  /// "10010" for single-digit grades, comma separated otherwise.
  std::string text() const;

  bool operator==(const Serp&) const = default;
  auto operator<=>(const Serp&) const = default;
};

/// Documents available per grade for one topic: counts[g] is the number of
/// grade-g documents in the collection, so counts[1..] together form the
/// recall base for binary relevance.
struct GradeCensus {
  std::vector<long> counts;

  GradeCensus() = default;
  explicit GradeCensus(std::vector<long> c);
  static GradeCensus binary(long n0, long n1);
  static GradeCensus from_serp(const Serp& serp, int num_grades);

  int num_grades() const { return static_cast<int>(counts.size()); }
  long total() const;
  /// Documents with grade above zero.
  long relevant() const;
  /// True when `serp` never uses more documents of a grade than available.
  bool admits(const Serp& serp) const;
};

struct TopicJudgments {
  std::string topic;
  std::map<std::string, int> grades;  // doc id -> grade index

  GradeCensus census(int num_grades) const;
  int max_grade() const;
};

struct RunRanking {
  std::string topic;
  std::vector<std::string> docs;  // rank order, best first
  std::string tag;
};

enum class UnjudgedPolicy { Grade0, Error };

/// Maps each SERP position to its gain. Throws InvalidGradeError when a
/// grade index falls outside the map.
std::vector<Rational> gain_vector(const Serp& serp, const GainMap& map);

/// Grades of the first k ranked documents. Unjudged documents follow
/// `policy` (default grade 0); rankings shorter than k are padded with
/// grade 0. Topic ids of run and judgments must agree.
Serp serp_from_run(const RunRanking& run, const TopicJudgments& judgments,
                   int k, UnjudgedPolicy policy = UnjudgedPolicy::Grade0);

}  // namespace serpscale
