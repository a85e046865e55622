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
#include "serpscale/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "serpscale/dominance.hpp"
#include "serpscale/enumeration.hpp"
#include "serpscale/trec_io.hpp"

namespace serpscale {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitViolations = 3;

struct UniverseOptions {
  std::string mode = "prefix";
  int n0 = -1;
  int n1 = -1;
  std::string census_text;
  int grades = 2;
  int k = 0;
  bool capped = false;
  bool allow_large = false;
};

struct MetricOptions {
  std::vector<std::string> metrics;
  std::string phi = "1/2";
  std::string variant = "microsoft";
  int jk_base = 2;
  int depth = 0;
  std::string gains_path;
};

void add_universe_flags(CLI::App* cmd, UniverseOptions& opts) {
  cmd->add_option("--universe", opts.mode, "Universe kind: perm or prefix")
      ->check(CLI::IsMember({"perm", "prefix"}));
  cmd->add_option("--n0", opts.n0, "Non-relevant document count (binary)");
  cmd->add_option("--n1", opts.n1, "Relevant document count (binary)");
  cmd->add_option("--census", opts.census_text,
                  "Comma separated per-grade counts, lowest grade first");
  cmd->add_option("--grades", opts.grades, "Number of grades (prefix mode)");
  cmd->add_flag_function(
      "--binary", [&opts](int64_t) { opts.grades = 2; },
      "Shorthand for --grades 2");
  cmd->add_option("--k", opts.k, "Prefix / truncation length");
  cmd->add_flag("--capped", opts.capped,
                "Cap prefix universes by the census");
  cmd->add_flag("--allow-large", opts.allow_large,
                "Lift the combinatorial size guards");
}

void add_metric_flags(CLI::App* cmd, MetricOptions& opts, bool repeatable) {
  auto* metric = cmd->add_option("--metric", opts.metrics,
                                 "prec, rr, r1, rbp, ap, dcg, ndcg, err")
                     ->required()
                     ->check(CLI::IsMember({"prec", "rr", "r1", "rbp", "ap",
                                            "dcg", "ndcg", "err"}));
  if (!repeatable) metric->expected(1);
  cmd->add_option("--phi", opts.phi, "RBP persistence (default 1/2)");
  cmd->add_option("--variant", opts.variant,
                  "DCG discount: microsoft or jk")
      ->check(CLI::IsMember({"microsoft", "ms", "jk"}));
  cmd->add_option("--b", opts.jk_base, "Log base for the jk discount");
  cmd->add_option("--depth", opts.depth,
                  "Metric evaluation depth (default: full SERP)");
  cmd->add_option("--gains", opts.gains_path,
                  "Gain map file (default: SERPSCALE_GAIN_MAP or linear)");
}

std::optional<GradeCensus> census_from(const UniverseOptions& opts) {
  if (!opts.census_text.empty()) {
    std::vector<long> counts;
    std::stringstream in(opts.census_text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        size_t consumed = 0;
        counts.push_back(std::stol(item, &consumed));
        if (consumed != item.size()) throw std::invalid_argument(item);
      } catch (...) {
        throw ParameterError("bad census entry '" + item + "'");
      }
    }
    return GradeCensus(std::move(counts));
  }
  if (opts.n0 >= 0 || opts.n1 >= 0) {
    if (opts.n0 < 0 || opts.n1 < 0)
      throw ParameterError("--n0 and --n1 must be given together");
    return GradeCensus::binary(opts.n0, opts.n1);
  }
  return std::nullopt;
}

SerpUniverse build_universe(const UniverseOptions& opts) {
  EnumerationLimits limits;
  limits.unlimited = opts.allow_large;
  auto census = census_from(opts);
  if (opts.mode == "perm") {
    if (!census)
      throw ParameterError("perm universes need --n0/--n1 or --census");
    if (opts.k > 0 && opts.k < census->total())
      return SerpUniverse::prefixes(opts.k, census->num_grades(), census,
                                    limits);
    return SerpUniverse::full_permutations(*census, limits);
  }
  if (opts.k < 1) throw ParameterError("prefix universes need --k");
  if (opts.capped && !census)
    throw ParameterError("--capped needs --n0/--n1 or --census");
  int grades = census ? census->num_grades() : opts.grades;
  return SerpUniverse::prefixes(opts.k, grades, census, limits);
}

GainMap load_gain_map(const MetricOptions& opts, int num_grades) {
  std::string path = opts.gains_path;
  if (path.empty()) {
    const char* env = std::getenv("SERPSCALE_GAIN_MAP");
    if (env != nullptr) path = env;
  }
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open gain map file " + path);
    return parse_gain_map(in).second;
  }
  return num_grades == 2 ? GainMap::binary() : GainMap::linear(num_grades);
}

MetricSpec make_spec(const std::string& name, const MetricOptions& opts) {
  DiscountVariant variant = opts.variant == "jk"
                                ? DiscountVariant::JarvelinKekalainen
                                : DiscountVariant::Microsoft;
  MetricSpec spec;
  if (name == "prec") spec = MetricSpec::prec(opts.depth);
  else if (name == "rr") spec = MetricSpec::rr(opts.depth);
  else if (name == "r1") spec = MetricSpec::r1(opts.depth);
  else if (name == "rbp")
    spec = MetricSpec::rbp(parse_rational(opts.phi), opts.depth);
  else if (name == "ap") spec = MetricSpec::ap(opts.depth);
  else if (name == "dcg")
    spec = MetricSpec::dcg(variant, opts.depth, opts.jk_base);
  else if (name == "ndcg")
    spec = MetricSpec::ndcg(variant, opts.depth, opts.jk_base);
  else if (name == "err") spec = MetricSpec::err(opts.depth);
  else throw ParameterError("unknown metric " + name);
  spec.validate();
  return spec;
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file " + path);
      stream_ = &file_;
    } else {
      stream_ = &fallback;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::map<std::string, TopicJudgments> load_qrels(const std::string& path,
                                                 GradeClampPolicy clamp) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open qrels file " + path);
  return parse_qrels(in, clamp);
}

std::map<std::string, RunRanking> load_run(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open run file " + path);
  return parse_run(in);
}

int max_qrels_grade(const std::map<std::string, TopicJudgments>& qrels) {
  int top = 1;
  for (const auto& [topic, judgments] : qrels)
    top = std::max(top, judgments.max_grade());
  return top;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Ranked-retrieval effectiveness scoring and "
               "measurement-scale analysis"};
  app.require_subcommand(1);

  // score
  auto* score_cmd = app.add_subcommand(
      "score", "Score a run against qrels and report per-topic values");
  MetricOptions score_metrics;
  std::string qrels_path, run_path, output_path;
  std::string unjudged = "zero", undefined = "skip";
  int score_k = 0, places = 4;
  add_metric_flags(score_cmd, score_metrics, true);
  score_cmd->add_option("--qrels", qrels_path, "Qrels file")->required();
  score_cmd->add_option("--run", run_path, "Run file")->required();
  score_cmd->add_option("--k", score_k, "Ranking truncation depth")
      ->required();
  score_cmd->add_option("--unjudged", unjudged,
                        "Unjudged documents: zero or error")
      ->check(CLI::IsMember({"zero", "error"}));
  score_cmd->add_option("--undefined", undefined,
                        "Undefined metric on a topic: skip or fail")
      ->check(CLI::IsMember({"skip", "fail"}));
  score_cmd->add_option("--places", places, "Decimal places (default 4)");
  score_cmd->add_option("--output", output_path, "Output file (default -)");

  // enumerate
  auto* enum_cmd =
      app.add_subcommand("enumerate", "List every SERP class of a universe");
  UniverseOptions enum_universe;
  std::string enum_output;
  add_universe_flags(enum_cmd, enum_universe);
  enum_cmd->add_option("--output", enum_output, "Output file (default -)");

  // distinct
  auto* distinct_cmd = app.add_subcommand(
      "distinct", "Exact distinct score set of a metric over a universe");
  UniverseOptions distinct_universe;
  MetricOptions distinct_metrics;
  std::string distinct_output;
  int distinct_places = 4;
  add_universe_flags(distinct_cmd, distinct_universe);
  add_metric_flags(distinct_cmd, distinct_metrics, false);
  distinct_cmd->add_option("--places", distinct_places, "Decimal places");
  distinct_cmd->add_option("--output", distinct_output,
                           "Output file (default -)");

  // intervalize
  auto* interval_cmd = app.add_subcommand(
      "intervalize",
      "Map a metric's distinct scores onto an equi-spaced scale");
  UniverseOptions interval_universe;
  MetricOptions interval_metrics;
  std::string interval_output, interval_qrels, interval_run, interval_score;
  int interval_places = 4, interval_apply_k = 0;
  bool interval_members = false;
  add_universe_flags(interval_cmd, interval_universe);
  add_metric_flags(interval_cmd, interval_metrics, false);
  interval_cmd->add_option("--places", interval_places, "Decimal places");
  interval_cmd->add_flag("--members", interval_members,
                         "One row per universe member instead of the "
                         "source-to-target table");
  interval_cmd->add_option("--score", interval_score,
                           "Map one raw score (exact rational)");
  interval_cmd->add_option("--apply-qrels", interval_qrels,
                           "Re-score these qrels");
  interval_cmd->add_option("--apply-run", interval_run,
                           "Re-score this run");
  interval_cmd->add_option("--apply-k", interval_apply_k,
                           "Truncation depth for re-scoring");
  interval_cmd->add_option("--output", interval_output,
                           "Output file (default -)");

  // hasse
  auto* hasse_cmd = app.add_subcommand(
      "hasse", "Emit the non-inferiority Hasse diagram as DOT");
  UniverseOptions hasse_universe;
  std::string hasse_output;
  add_universe_flags(hasse_cmd, hasse_universe);
  hasse_cmd->add_option("--output", hasse_output, "Output file (default -)");

  // audit
  auto* audit_cmd = app.add_subcommand(
      "audit", "Check a metric for violations of the dominance order");
  UniverseOptions audit_universe;
  MetricOptions audit_metrics;
  std::string audit_output;
  int audit_places = 4;
  add_universe_flags(audit_cmd, audit_universe);
  add_metric_flags(audit_cmd, audit_metrics, true);
  audit_cmd->add_option("--places", audit_places, "Decimal places");
  audit_cmd->add_option("--output", audit_output, "Output file (default -)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (score_cmd->parsed()) {
      auto qrels = load_qrels(qrels_path, GradeClampPolicy::ClampToZero);
      auto runs = load_run(run_path);
      GainMap map = load_gain_map(score_metrics, max_qrels_grade(qrels) + 1);
      std::vector<MetricSpec> specs;
      for (const std::string& name : score_metrics.metrics)
        specs.push_back(make_spec(name, score_metrics));
      ScoreReport report = evaluate(
          runs, qrels, specs, map, score_k,
          unjudged == "zero" ? UnjudgedPolicy::Grade0 : UnjudgedPolicy::Error,
          undefined == "skip" ? UndefinedPolicy::SkipAndReport
                              : UndefinedPolicy::Fail);
      OutputSink sink(output_path, out);
      sink.stream() << report_tsv(report, places);
      return kExitOk;
    }

    if (enum_cmd->parsed()) {
      SerpUniverse universe = build_universe(enum_universe);
      OutputSink sink(enum_output, out);
      for (const Serp& member : universe.members())
        sink.stream() << member.text() << "\n";
      sink.stream() << "count: " << universe.size() << "\n";
      return kExitOk;
    }

    if (distinct_cmd->parsed()) {
      SerpUniverse universe = build_universe(distinct_universe);
      GainMap map = load_gain_map(distinct_metrics, universe.num_grades());
      MetricSpec spec = make_spec(distinct_metrics.metrics.at(0),
                                  distinct_metrics);
      auto values = distinct_scores(spec, map, universe);
      OutputSink sink(distinct_output, out);
      for (const ExactValue& v : values)
        sink.stream() << v.exact_text() << "\t" << v.decimal(distinct_places)
                      << "\n";
      sink.stream() << "count: " << values.size() << "\n";
      return kExitOk;
    }

    if (interval_cmd->parsed()) {
      SerpUniverse universe = build_universe(interval_universe);
      GainMap map = load_gain_map(interval_metrics, universe.num_grades());
      MetricSpec spec = make_spec(interval_metrics.metrics.at(0),
                                  interval_metrics);
      Intervalizer mapper = build_intervalizer(spec, map, universe);
      OutputSink sink(interval_output, out);
      if (interval_members) {
        sink.stream() << "member\traw_exact\traw\tmapped_exact\tmapped\n";
        for (const Serp& member : universe.members()) {
          ExactValue raw = score_serp(member, map, universe.census(), spec);
          Rational mapped = mapper.map_value(raw);
          sink.stream() << member.text() << "\t" << raw.exact_text() << "\t"
                        << raw.decimal(interval_places) << "\t"
                        << fraction_string(mapped) << "\t"
                        << decimal_string(mapped, interval_places) << "\n";
        }
      } else {
        sink.stream() << "source_exact\tsource\ttarget_exact\ttarget\n";
        for (size_t i = 0; i < mapper.size(); ++i) {
          Rational target = mapper.target(i);
          sink.stream() << mapper.sources()[i].exact_text() << "\t"
                        << mapper.sources()[i].decimal(interval_places)
                        << "\t" << fraction_string(target) << "\t"
                        << decimal_string(target, interval_places) << "\n";
        }
      }
      if (!interval_score.empty()) {
        Rational mapped =
            mapper.map_value(ExactValue(parse_rational(interval_score)));
        sink.stream() << "mapped\t" << interval_score << "\t"
                      << fraction_string(mapped) << "\t"
                      << decimal_string(mapped, interval_places) << "\n";
      }
      if (!interval_qrels.empty() || !interval_run.empty()) {
        if (interval_qrels.empty() || interval_run.empty())
          throw ParameterError(
              "--apply-qrels and --apply-run must be given together");
        int apply_k = interval_apply_k > 0 ? interval_apply_k
                                           : universe.depth();
        auto qrels = load_qrels(interval_qrels,
                                GradeClampPolicy::ClampToZero);
        auto runs = load_run(interval_run);
        sink.stream() << "metric\ttopic\traw\tintervalized\n";
        for (const auto& [topic, run] : runs) {
          auto it = qrels.find(topic);
          if (it == qrels.end()) continue;
          Serp serp = serp_from_run(run, it->second, apply_k);
          // Score against the topic's own census: a recall base that
          // differs from the universe's produces values off the scale,
          // which map_value reports rather than hides.
          GradeCensus topic_census = it->second.census(map.size());
          ExactValue raw = score_serp(serp, map, topic_census, spec);
          Rational mapped = mapper.map_value(raw);
          sink.stream() << spec.label() << "\t" << topic << "\t"
                        << raw.decimal(interval_places) << "\t"
                        << decimal_string(mapped, interval_places) << "\n";
        }
      }
      return kExitOk;
    }

    if (hasse_cmd->parsed()) {
      SerpUniverse universe = build_universe(hasse_universe);
      DominanceRelation relation = DominanceRelation::build(
          std::move(universe), 4096, hasse_universe.allow_large);
      HasseDiagram diagram = hasse(relation);
      OutputSink sink(hasse_output, out);
      sink.stream() << to_dot(diagram);
      return kExitOk;
    }

    if (audit_cmd->parsed()) {
      SerpUniverse universe = build_universe(audit_universe);
      GainMap map = load_gain_map(audit_metrics, universe.num_grades());
      DominanceRelation relation = DominanceRelation::build(
          std::move(universe), 4096, audit_universe.allow_large);
      OutputSink sink(audit_output, out);
      size_t total = 0;
      for (const std::string& name : audit_metrics.metrics) {
        MetricSpec spec = make_spec(name, audit_metrics);
        auto violations = audit_metric(relation, spec, map);
        total += violations.size();
        for (const AuditViolation& v : violations)
          sink.stream() << spec.label() << "\t"
                        << relation.universe().member(v.dominating).text()
                        << "\t"
                        << relation.universe().member(v.dominated).text()
                        << "\t" << v.dominating_score.decimal(audit_places)
                        << "\t" << v.dominated_score.decimal(audit_places)
                        << "\n";
      }
      return total == 0 ? kExitOk : kExitViolations;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace serpscale
