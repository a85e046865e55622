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
#include "serpscale/enumeration.hpp"

#include <algorithm>

namespace serpscale {

namespace {

mpz_class multinomial(const GradeCensus& census) {
  mpz_class result = 1;
  long placed = 0;
  for (long count : census.counts) {
    for (long i = 1; i <= count; ++i) {
      ++placed;
      result *= placed;
      result /= i;  // exact: running product of binomials
    }
  }
  return result;
}

void check_member_budget(const mpz_class& expected,
                         const EnumerationLimits& limits) {
  if (limits.unlimited) return;
  if (expected > static_cast<unsigned long>(limits.max_members))
    throw CapacityError("universe would hold " + expected.get_str() +
                        " members; raise the limit to proceed");
}

}  // namespace

SerpUniverse SerpUniverse::full_permutations(const GradeCensus& census,
                                             const EnumerationLimits& limits) {
  const long n = census.total();
  if (n < 1) throw ParameterError("census must cover at least one document");
  if (!limits.unlimited && n > limits.max_depth)
    throw CapacityError("SERP length " + std::to_string(n) +
                        " exceeds the depth guard");
  check_member_budget(multinomial(census), limits);

  std::vector<int> grades;
  for (int g = 0; g < census.num_grades(); ++g)
    grades.insert(grades.end(),
                  static_cast<size_t>(census.counts[static_cast<size_t>(g)]),
                  g);

  SerpUniverse u;
  u.mode_ = Mode::FullPermutations;
  u.depth_ = static_cast<int>(n);
  u.num_grades_ = census.num_grades();
  u.capped_ = true;
  u.census_ = census;
  do {
    u.members_.push_back(Serp(grades));
  } while (std::next_permutation(grades.begin(), grades.end()));
  return u;
}

SerpUniverse SerpUniverse::prefixes(int k, int num_grades,
                                    const std::optional<GradeCensus>& cap,
                                    const EnumerationLimits& limits) {
  if (k < 1) throw ParameterError("prefix length must be at least one");
  if (num_grades < 2) throw ParameterError("at least two grades are needed");
  if (cap && cap->num_grades() != num_grades)
    throw ParameterError("census cap does not match the grade count");
  if (!limits.unlimited && k > limits.max_depth)
    throw CapacityError("prefix length " + std::to_string(k) +
                        " exceeds the depth guard");
  mpz_class uncapped;
  mpz_ui_pow_ui(uncapped.get_mpz_t(), static_cast<unsigned long>(num_grades),
                static_cast<unsigned long>(k));
  if (!cap) check_member_budget(uncapped, limits);

  SerpUniverse u;
  u.mode_ = Mode::Prefixes;
  u.depth_ = k;
  u.num_grades_ = num_grades;
  u.capped_ = cap.has_value();
  if (cap) {
    u.census_ = *cap;
  } else {
    // Normalization census: k documents of every grade are assumed to
    // exist, so the ideal prefix is solid top grade.
    u.census_ = GradeCensus(
        std::vector<long>(static_cast<size_t>(num_grades), k));
  }

  std::vector<int> current(static_cast<size_t>(k), 0);
  std::vector<long> used(static_cast<size_t>(num_grades), 0);
  const size_t budget =
      limits.unlimited ? static_cast<size_t>(-1) : limits.max_members;
  // Depth-first fill in grade order yields lexicographic members.
  auto emit = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      if (u.members_.size() >= budget)
        throw CapacityError("universe exceeds the member guard");
      u.members_.push_back(Serp(current));
      return;
    }
    for (int g = 0; g < num_grades; ++g) {
      if (cap && used[static_cast<size_t>(g)] >=
                     cap->counts[static_cast<size_t>(g)])
        continue;
      current[static_cast<size_t>(pos)] = g;
      ++used[static_cast<size_t>(g)];
      self(self, pos + 1);
      --used[static_cast<size_t>(g)];
    }
  };
  emit(emit, 0);
  return u;
}

std::optional<size_t> SerpUniverse::index_of(const Serp& serp) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), serp);
  if (it != members_.end() && *it == serp)
    return static_cast<size_t>(it - members_.begin());
  return std::nullopt;
}

std::vector<ExactValue> distinct_scores(const MetricSpec& spec,
                                        const GainMap& map,
                                        const SerpUniverse& universe) {
  spec.validate();
  std::vector<ExactValue> scores;
  scores.reserve(universe.size());
  for (const Serp& serp : universe.members())
    scores.push_back(score_serp(serp, map, universe.census(), spec));
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end(),
                           [](const ExactValue& a, const ExactValue& b) {
                             return a == b;
                           }),
               scores.end());
  return scores;
}

Intervalizer::Intervalizer(MetricSpec spec,
                           std::vector<ExactValue> sorted_sources)
    : spec_(std::move(spec)), sources_(std::move(sorted_sources)) {
  if (sources_.size() < 2)
    throw DegenerateScaleError(
        "intervalization needs at least two distinct scores");
  for (size_t i = 1; i < sources_.size(); ++i)
    if (!(sources_[i - 1] < sources_[i]))
      throw ParameterError("intervalizer sources must strictly increase");
}

Rational Intervalizer::target(size_t index) const {
  if (index >= sources_.size())
    throw ParameterError("intervalizer index out of range");
  return rational(static_cast<long>(index),
                  static_cast<long>(sources_.size() - 1));
}

Rational Intervalizer::map_value(const ExactValue& raw) const {
  auto it = std::lower_bound(sources_.begin(), sources_.end(), raw);
  if (it != sources_.end() && *it == raw)
    return target(static_cast<size_t>(it - sources_.begin()));
  throw UnmappedValueError(
      "score " + raw.exact_text() +
      " is not a generable value of this metric over this universe");
}

Intervalizer build_intervalizer(const MetricSpec& spec, const GainMap& map,
                                const SerpUniverse& universe) {
  return Intervalizer(spec, distinct_scores(spec, map, universe));
}

EquispacingReport equispacing_check(const MetricSpec& spec, const GainMap& map,
                                    const SerpUniverse& universe) {
  std::vector<ExactValue> values = distinct_scores(spec, map, universe);
  if (values.size() < 2)
    throw DegenerateScaleError(
        "equi-spacing needs at least two distinct scores");
  EquispacingReport report;
  report.gaps.reserve(values.size() - 1);
  for (size_t i = 1; i < values.size(); ++i)
    report.gaps.push_back(values[i].minus(values[i - 1]));
  report.uniform = std::all_of(report.gaps.begin(), report.gaps.end(),
                               [&](const ExactValue& gap) {
                                 return gap == report.gaps.front();
                               });
  return report;
}

}  // namespace serpscale
