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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "serpscale/core_model.hpp"
#include "serpscale/exact_value.hpp"
#include "serpscale/metrics.hpp"

namespace serpscale {

struct ParseError : Error {
  using Error::Error;
};
struct IntegrityError : Error {
  using Error::Error;
};

/// Below-zero qrels grades are clamped to zero by default.
enum class GradeClampPolicy { ClampToZero, Error };

/// What to do when a metric is undefined for a topic (AP or NDCG with an
/// empty recall base).
enum class UndefinedPolicy { SkipAndReport, Fail };

/// Whitespace-separated 4-column records: topic iteration doc grade.
std::map<std::string, TopicJudgments> parse_qrels(
    std::istream& in, GradeClampPolicy clamp = GradeClampPolicy::ClampToZero);

/// Whitespace-separated 6-column records: topic Q0 doc rank score tag.
/// Documents are ordered by descending score, breaking ties by the rank
/// field and then by doc id. One run tag per stream.
std::map<std::string, RunRanking> parse_run(std::istream& in);

/// Line-based "label<TAB>value" with fractions permitted ("G2<TAB>3/4").
/// Line order defines grade order, first line grade 0.
std::pair<GradeScale, GainMap> parse_gain_map(std::istream& in);

std::string write_qrels(const std::map<std::string, TopicJudgments>& qrels);
std::string write_run(const std::map<std::string, RunRanking>& runs);

struct ScoreReport {
  struct Row {
    std::string metric;
    std::string topic;
    ExactValue value;
  };
  struct Mean {
    std::string metric;
    bool exact = true;        // rational arithmetic end to end
    Rational exact_value;     // set when exact
    mpz_class fixed_value;    // 2^kFixedBits scale, always set
    size_t topics = 0;
    std::string decimal(int places) const;
  };
  struct Skip {
    std::string metric;
    std::string topic;
    std::string reason;
  };

  std::vector<Row> rows;    // sorted by (metric, topic)
  std::vector<Mean> means;  // one per metric with at least one scored topic
  std::vector<Skip> skipped;
};

/// Scores every topic common to the runs and the judgments at depth k and
/// reports per-topic values plus the arithmetic mean per metric. Topics a
/// metric is undefined on follow `undefined`. Raises JoinError when no
/// topic is shared.
ScoreReport evaluate(const std::map<std::string, RunRanking>& runs,
                     const std::map<std::string, TopicJudgments>& qrels,
                     const std::vector<MetricSpec>& specs, const GainMap& map,
                     int k, UnjudgedPolicy unjudged = UnjudgedPolicy::Grade0,
                     UndefinedPolicy undefined = UndefinedPolicy::SkipAndReport);

/// TSV with columns (metric, topic, score); per-metric means appear as
/// topic "all", skipped topics as trailing "#skip" comment lines.
std::string report_tsv(const ScoreReport& report, int places);

}  // namespace serpscale
