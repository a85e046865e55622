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
#include "serpscale/trec_io.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace serpscale {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

[[noreturn]] void fail_line(const std::string& what, size_t line_number) {
  throw ParseError(what + " at line " + std::to_string(line_number));
}

long parse_long(const std::string& text, const char* what,
                size_t line_number) {
  try {
    size_t consumed = 0;
    long value = std::stol(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (...) {
    fail_line(std::string("bad ") + what + " '" + text + "'", line_number);
  }
}

double parse_score(const std::string& text, size_t line_number) {
  try {
    size_t consumed = 0;
    double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (...) {
    fail_line("bad score '" + text + "'", line_number);
  }
}

struct RunRecord {
  std::string doc;
  long rank;
  double score;
  size_t order;  // input position, last resort for full determinism
};

}  // namespace

std::map<std::string, TopicJudgments> parse_qrels(std::istream& in,
                                                  GradeClampPolicy clamp) {
  std::map<std::string, TopicJudgments> result;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      fail_line("expected 4 qrels columns, got " +
                    std::to_string(fields.size()),
                line_number);
    long grade = parse_long(fields[3], "grade", line_number);
    if (grade < 0) {
      if (clamp == GradeClampPolicy::Error)
        fail_line("negative grade " + fields[3], line_number);
      grade = 0;
    }
    TopicJudgments& topic = result[fields[0]];
    topic.topic = fields[0];
    auto [it, inserted] =
        topic.grades.emplace(fields[2], static_cast<int>(grade));
    if (!inserted)
      throw IntegrityError("duplicate judgment for topic " + fields[0] +
                           " document " + fields[2] + " at line " +
                           std::to_string(line_number));
  }
  return result;
}

std::map<std::string, RunRanking> parse_run(std::istream& in) {
  std::map<std::string, std::vector<RunRecord>> records;
  std::map<std::string, std::set<std::string>> seen_docs;
  std::string run_tag;
  bool have_tag = false;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 6)
      fail_line("expected 6 run columns, got " +
                    std::to_string(fields.size()),
                line_number);
    // fields[1] is conventionally the literal Q0; accepted, not enforced
    long rank = parse_long(fields[3], "rank", line_number);
    double score = parse_score(fields[4], line_number);
    if (!have_tag) {
      run_tag = fields[5];
      have_tag = true;
    } else if (run_tag != fields[5]) {
      throw IntegrityError("mixed run tags '" + run_tag + "' and '" +
                           fields[5] + "' at line " +
                           std::to_string(line_number));
    }
    if (!seen_docs[fields[0]].insert(fields[2]).second)
      throw IntegrityError("duplicate document " + fields[2] +
                           " for topic " + fields[0] + " at line " +
                           std::to_string(line_number));
    auto& topic_records = records[fields[0]];
    topic_records.push_back(
        {fields[2], rank, score, topic_records.size()});
  }

  std::map<std::string, RunRanking> result;
  for (auto& [topic, topic_records] : records) {
    std::sort(topic_records.begin(), topic_records.end(),
              [](const RunRecord& a, const RunRecord& b) {
                if (a.score != b.score) return a.score > b.score;
                if (a.rank != b.rank) return a.rank < b.rank;
                if (a.doc != b.doc) return a.doc < b.doc;
                return a.order < b.order;
              });
    RunRanking ranking;
    ranking.topic = topic;
    ranking.tag = run_tag;
    for (const RunRecord& r : topic_records) ranking.docs.push_back(r.doc);
    result.emplace(topic, std::move(ranking));
  }
  return result;
}

std::pair<GradeScale, GainMap> parse_gain_map(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<Rational> gains;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail_line("expected label<TAB>value", line_number);
    std::string label = line.substr(0, tab);
    std::string value = line.substr(tab + 1);
    if (label.empty()) fail_line("empty grade label", line_number);
    try {
      gains.push_back(parse_rational(value));
    } catch (const ParameterError& e) {
      fail_line(e.what(), line_number);
    }
    labels.push_back(label);
  }
  if (labels.size() < 2)
    throw ParseError("a gain map needs at least two grades");
  return {GradeScale(std::move(labels)), GainMap(std::move(gains))};
}

std::string write_qrels(const std::map<std::string, TopicJudgments>& qrels) {
  std::string out;
  for (const auto& [topic, judgments] : qrels)
    for (const auto& [doc, grade] : judgments.grades)
      out += topic + " 0 " + doc + " " + std::to_string(grade) + "\n";
  return out;
}

std::string write_run(const std::map<std::string, RunRanking>& runs) {
  std::string out;
  for (const auto& [topic, run] : runs) {
    long score = static_cast<long>(run.docs.size());
    for (size_t i = 0; i < run.docs.size(); ++i, --score)
      out += topic + " Q0 " + run.docs[i] + " " + std::to_string(i + 1) +
             " " + std::to_string(score) + " " + run.tag + "\n";
  }
  return out;
}

std::string ScoreReport::Mean::decimal(int places) const {
  if (exact) return decimal_string(exact_value, places);
  return fixed_point_decimal(fixed_value, places);
}

ScoreReport evaluate(const std::map<std::string, RunRanking>& runs,
                     const std::map<std::string, TopicJudgments>& qrels,
                     const std::vector<MetricSpec>& specs, const GainMap& map,
                     int k, UnjudgedPolicy unjudged,
                     UndefinedPolicy undefined) {
  if (k < 1) throw ParameterError("evaluation depth must be at least one");
  for (const MetricSpec& spec : specs) spec.validate();

  std::vector<std::string> common;
  for (const auto& [topic, run] : runs)
    if (qrels.count(topic)) common.push_back(topic);
  if (common.empty())
    throw JoinError("no topic is shared between the run and the judgments");

  ScoreReport report;
  struct Accumulator {
    bool all_rational = true;
    Rational rational_sum;
    mpz_class fixed_sum = 0;
    size_t count = 0;
  };
  std::vector<Accumulator> sums(specs.size());

  for (const std::string& topic : common) {
    const TopicJudgments& judgments = qrels.at(topic);
    const int num_grades =
        std::max(map.size(), judgments.max_grade() + 1);
    if (num_grades > map.size())
      throw InvalidGradeError("topic " + topic +
                              " holds grades beyond the gain map");
    Serp serp = serp_from_run(runs.at(topic), judgments, k, unjudged);
    GradeCensus census = judgments.census(map.size());
    for (size_t m = 0; m < specs.size(); ++m) {
      try {
        ExactValue value = score_serp(serp, map, census, specs[m]);
        sums[m].count += 1;
        if (value.is_rational() && sums[m].all_rational)
          sums[m].rational_sum += value.as_rational();
        else
          sums[m].all_rational = false;
        sums[m].fixed_sum += value.fixed();
        report.rows.push_back({specs[m].label(), topic, value});
      } catch (const UndefinedMetricError& e) {
        if (undefined == UndefinedPolicy::Fail) throw;
        report.skipped.push_back({specs[m].label(), topic, e.what()});
      }
    }
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const ScoreReport::Row& a, const ScoreReport::Row& b) {
              return a.metric != b.metric ? a.metric < b.metric
                                          : a.topic < b.topic;
            });
  std::sort(report.skipped.begin(), report.skipped.end(),
            [](const ScoreReport::Skip& a, const ScoreReport::Skip& b) {
              return a.metric != b.metric ? a.metric < b.metric
                                          : a.topic < b.topic;
            });

  for (size_t m = 0; m < specs.size(); ++m) {
    if (sums[m].count == 0) continue;
    ScoreReport::Mean mean;
    mean.metric = specs[m].label();
    mean.topics = sums[m].count;
    mean.exact = sums[m].all_rational;
    if (mean.exact) {
      mean.exact_value =
          sums[m].rational_sum / rational(static_cast<long>(sums[m].count));
      mean.fixed_value = [&] {
        mpz_class num = mean.exact_value.get_num() << kFixedBits;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(),
                   mean.exact_value.get_den().get_mpz_t());
        return q;
      }();
    } else {
      mpz_fdiv_q_ui(mean.fixed_value.get_mpz_t(),
                    sums[m].fixed_sum.get_mpz_t(),
                    static_cast<unsigned long>(sums[m].count));
    }
    report.means.push_back(std::move(mean));
  }
  std::sort(report.means.begin(), report.means.end(),
            [](const ScoreReport::Mean& a, const ScoreReport::Mean& b) {
              return a.metric < b.metric;
            });
  return report;
}

std::string report_tsv(const ScoreReport& report, int places) {
  std::string out = "metric\ttopic\tscore\n";
  size_t row = 0;
  for (const ScoreReport::Mean& mean : report.means) {
    while (row < report.rows.size() && report.rows[row].metric <= mean.metric) {
      out += report.rows[row].metric + "\t" + report.rows[row].topic + "\t" +
             report.rows[row].value.decimal(places) + "\n";
      ++row;
    }
    out += mean.metric + "\tall\t" + mean.decimal(places) + "\n";
  }
  while (row < report.rows.size()) {
    out += report.rows[row].metric + "\t" + report.rows[row].topic + "\t" +
           report.rows[row].value.decimal(places) + "\n";
    ++row;
  }
  for (const ScoreReport::Skip& skip : report.skipped)
    out += "#skip\t" + skip.metric + "\t" + skip.topic + "\t" + skip.reason +
           "\n";
  return out;
}

}  // namespace serpscale
