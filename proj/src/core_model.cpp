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
#include "serpscale/core_model.hpp"

#include <algorithm>
#include <set>

namespace serpscale {

GradeScale::GradeScale(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw ParameterError("a grade scale needs at least two grades");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw ParameterError("grade labels must be unique");
}

GradeScale GradeScale::binary() { return GradeScale({"0", "1"}); }

GradeScale GradeScale::numeric(int num_grades) {
  std::vector<std::string> labels;
  for (int i = 0; i < num_grades; ++i) labels.push_back(std::to_string(i));
  return GradeScale(std::move(labels));
}

const std::string& GradeScale::label(int grade) const {
  if (grade < 0 || grade >= size())
    throw InvalidGradeError("grade index out of range: " +
                            std::to_string(grade));
  return labels_[static_cast<size_t>(grade)];
}

GainMap::GainMap(std::vector<Rational> gains) : gains_(std::move(gains)) {
  if (gains_.size() < 2)
    throw ParameterError("a gain map needs at least two grades");
  bool any_positive = false;
  for (size_t i = 0; i < gains_.size(); ++i) {
    if (gains_[i] < 0 || gains_[i] > 1)
      throw ParameterError("gains must lie in [0, 1]");
    if (i > 0 && gains_[i] < gains_[i - 1])
      throw ParameterError("gains must not decrease with grade");
    if (gains_[i] > 0) any_positive = true;
  }
  if (!any_positive) throw ParameterError("at least one gain must be positive");
}

GainMap GainMap::binary() { return GainMap({rational(0), rational(1)}); }

GainMap GainMap::linear(int num_grades) {
  std::vector<Rational> gains;
  for (int i = 0; i < num_grades; ++i)
    gains.push_back(rational(i, num_grades - 1));
  return GainMap(std::move(gains));
}

const Rational& GainMap::gain(int grade) const {
  if (grade < 0 || grade >= size())
    throw InvalidGradeError("grade index out of range for gain map: " +
                            std::to_string(grade));
  return gains_[static_cast<size_t>(grade)];
}

Serp::Serp(std::vector<int> g) : grades(std::move(g)) {
  if (grades.empty()) throw ParameterError("a SERP needs at least one item");
  for (int grade : grades)
    if (grade < 0)
      throw InvalidGradeError("negative grade index in SERP");
}

std::string Serp::text() const {
  bool compact = std::all_of(grades.begin(), grades.end(),
                             [](int g) { return g <= 9; });
  std::string out;
  for (size_t i = 0; i < grades.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(grades[i]);
  }
  return out;
}

GradeCensus::GradeCensus(std::vector<long> c) : counts(std::move(c)) {
  for (long n : counts)
    if (n < 0) throw ParameterError("negative census count");
}

GradeCensus GradeCensus::binary(long n0, long n1) {
  return GradeCensus({n0, n1});
}

GradeCensus GradeCensus::from_serp(const Serp& serp, int num_grades) {
  std::vector<long> counts(static_cast<size_t>(num_grades), 0);
  for (int g : serp.grades) {
    if (g >= num_grades)
      throw InvalidGradeError("SERP grade exceeds census grade count");
    ++counts[static_cast<size_t>(g)];
  }
  return GradeCensus(std::move(counts));
}

long GradeCensus::total() const {
  long sum = 0;
  for (long n : counts) sum += n;
  return sum;
}

long GradeCensus::relevant() const {
  long sum = 0;
  for (size_t g = 1; g < counts.size(); ++g) sum += counts[g];
  return sum;
}

bool GradeCensus::admits(const Serp& serp) const {
  std::vector<long> used(counts.size(), 0);
  for (int g : serp.grades) {
    if (g >= num_grades()) return false;
    if (++used[static_cast<size_t>(g)] > counts[static_cast<size_t>(g)])
      return false;
  }
  return true;
}

GradeCensus TopicJudgments::census(int num_grades) const {
  std::vector<long> counts(static_cast<size_t>(num_grades), 0);
  for (const auto& [doc, grade] : grades) {
    if (grade >= num_grades)
      throw InvalidGradeError("judged grade exceeds grade count for topic " +
                              topic);
    ++counts[static_cast<size_t>(grade)];
  }
  return GradeCensus(std::move(counts));
}

int TopicJudgments::max_grade() const {
  int top = 0;
  for (const auto& [doc, grade] : grades) top = std::max(top, grade);
  return top;
}

std::vector<Rational> gain_vector(const Serp& serp, const GainMap& map) {
  std::vector<Rational> gains;
  gains.reserve(serp.grades.size());
  for (int grade : serp.grades) gains.push_back(map.gain(grade));
  return gains;
}

Serp serp_from_run(const RunRanking& run, const TopicJudgments& judgments,
                   int k, UnjudgedPolicy policy) {
  if (k < 1) throw ParameterError("evaluation depth must be at least one");
  if (run.topic != judgments.topic)
    throw JoinError("run topic " + run.topic + " does not match judgments " +
                    judgments.topic);
  std::vector<int> grades;
  grades.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (i >= static_cast<int>(run.docs.size())) {
      grades.push_back(0);  // ranking exhausted, pad
      continue;
    }
    auto it = judgments.grades.find(run.docs[static_cast<size_t>(i)]);
    if (it == judgments.grades.end()) {
      if (policy == UnjudgedPolicy::Error)
        throw JoinError("unjudged document " +
                        run.docs[static_cast<size_t>(i)] + " in topic " +
                        run.topic);
      grades.push_back(0);
    } else {
      grades.push_back(it->second);
    }
  }
  return Serp(std::move(grades));
}

}  // namespace serpscale
