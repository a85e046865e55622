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
#include "serpscale/metrics.hpp"

#include <algorithm>

namespace serpscale {

namespace {

int effective_depth(int depth, const Serp& serp) {
  if (depth < 0) throw ParameterError("negative evaluation depth");
  return depth == 0 ? serp.length() : depth;
}

LogSum discounted_sum(const std::vector<Rational>& gains,
                      DiscountVariant variant, int jk_base, int k) {
  LogSum sum;
  for (int i = 1; i <= k; ++i) {
    const Rational& g = gains[static_cast<size_t>(i - 1)];
    if (g == 0) continue;
    if (variant == DiscountVariant::Microsoft) {
      sum.add_inverse_log(2, static_cast<unsigned long>(1 + i), g);
    } else if (i <= jk_base) {
      sum.add_rational(g);
    } else {
      sum.add_inverse_log(static_cast<unsigned long>(jk_base),
                          static_cast<unsigned long>(i), g);
    }
  }
  return sum;
}

std::vector<Rational> gains_to_depth(const Serp& serp, const GainMap& map,
                                     int k) {
  std::vector<Rational> gains(static_cast<size_t>(k), Rational(0));
  for (int i = 1; i <= k && i <= serp.length(); ++i)
    gains[static_cast<size_t>(i - 1)] =
        map.gain(serp.grades[static_cast<size_t>(i - 1)]);
  return gains;
}

}  // namespace

namespace {

MetricSpec make_metric(MetricId id, int k) {
  MetricSpec spec;
  spec.id = id;
  spec.depth = k;
  return spec;
}

}  // namespace

MetricSpec MetricSpec::prec(int k) { return make_metric(MetricId::PrecAtK, k); }
MetricSpec MetricSpec::rr(int k) { return make_metric(MetricId::RR, k); }
MetricSpec MetricSpec::r1(int k) { return make_metric(MetricId::R1, k); }
MetricSpec MetricSpec::rbp(const Rational& phi, int k) {
  MetricSpec spec = make_metric(MetricId::RBP, k);
  spec.phi = phi;
  return spec;
}
MetricSpec MetricSpec::ap(int k) { return make_metric(MetricId::AP, k); }
MetricSpec MetricSpec::dcg(DiscountVariant v, int k, int b) {
  MetricSpec spec = make_metric(MetricId::DCG, k);
  spec.variant = v;
  spec.jk_base = b;
  return spec;
}
MetricSpec MetricSpec::ndcg(DiscountVariant v, int k, int b) {
  MetricSpec spec = make_metric(MetricId::NDCG, k);
  spec.variant = v;
  spec.jk_base = b;
  return spec;
}
MetricSpec MetricSpec::err(int k) { return make_metric(MetricId::ERR, k); }

void MetricSpec::validate() const {
  if (depth < 0) throw ParameterError("negative metric depth");
  if (phi.has_value() != (id == MetricId::RBP))
    throw ParameterError("persistence is set exactly for RBP");
  if (phi && (*phi <= 0 || *phi >= 1))
    throw ParameterError("RBP persistence must lie strictly in (0, 1)");
  const bool discounted = id == MetricId::DCG || id == MetricId::NDCG;
  if (variant.has_value() != discounted)
    throw ParameterError("discount variant is set exactly for DCG and NDCG");
  if (variant && *variant == DiscountVariant::JarvelinKekalainen &&
      jk_base < 2)
    throw ParameterError("the log-discount base must be at least 2");
}

std::string MetricSpec::label() const {
  std::string base;
  switch (id) {
    case MetricId::PrecAtK: base = "prec"; break;
    case MetricId::RR: base = "rr"; break;
    case MetricId::R1: base = "r1"; break;
    case MetricId::RBP:
      base = "rbp[" + fraction_string(*phi) + "]";
      break;
    case MetricId::AP: base = "ap"; break;
    case MetricId::DCG:
    case MetricId::NDCG:
      base = id == MetricId::DCG ? "dcg" : "ndcg";
      if (*variant == DiscountVariant::Microsoft)
        base += "[ms]";
      else
        base += "[jk,b=" + std::to_string(jk_base) + "]";
      break;
    case MetricId::ERR: base = "err"; break;
  }
  if (depth > 0) base += "@" + std::to_string(depth);
  return base;
}

bool higher_is_better(MetricId id) { return id != MetricId::R1; }

ExactValue precision_at_k(const Serp& serp, const GainMap& map, int k) {
  k = effective_depth(k, serp);
  Rational sum(0);
  for (int i = 1; i <= k && i <= serp.length(); ++i)
    sum += map.gain(serp.grades[static_cast<size_t>(i - 1)]);
  return ExactValue(sum / rational(k));
}

ExactValue reciprocal_rank(const Serp& serp, int k) {
  k = effective_depth(k, serp);
  for (int i = 1; i <= k && i <= serp.length(); ++i)
    if (serp.grades[static_cast<size_t>(i - 1)] > 0)
      return ExactValue(rational(1, i));
  return ExactValue(Rational(0));
}

ExactValue rank_first_relevant(const Serp& serp, int k) {
  k = effective_depth(k, serp);
  for (int i = 1; i <= k && i <= serp.length(); ++i)
    if (serp.grades[static_cast<size_t>(i - 1)] > 0)
      return ExactValue(rational(i));
  return ExactValue(rational(k + 1));
}

ExactValue rbp(const Serp& serp, const GainMap& map, const Rational& phi,
               int k) {
  if (phi <= 0 || phi >= 1)
    throw ParameterError("RBP persistence must lie strictly in (0, 1)");
  k = effective_depth(k, serp);
  Rational weight = 1 - phi;  // (1 - phi) * phi^(i-1)
  Rational sum(0);
  for (int i = 1; i <= k && i <= serp.length(); ++i) {
    sum += weight * map.gain(serp.grades[static_cast<size_t>(i - 1)]);
    weight *= phi;
  }
  return ExactValue(sum);
}

ExactValue average_precision(const Serp& serp, const GradeCensus& census,
                             int k) {
  const long n1 = census.relevant();
  if (n1 < 1)
    throw UndefinedMetricError(
        "AP is undefined for a topic with no relevant documents");
  k = effective_depth(k, serp);
  long seen_relevant = 0;
  Rational sum(0);
  for (int i = 1; i <= k && i <= serp.length(); ++i) {
    if (serp.grades[static_cast<size_t>(i - 1)] > 0) {
      ++seen_relevant;
      sum += rational(seen_relevant, i);
    }
  }
  return ExactValue(sum / rational(n1));
}

std::vector<Rational> ideal_gain_vector(const GradeCensus& census,
                                        const GainMap& map, int k) {
  if (census.total() < 1)
    throw ParameterError("ideal ranking needs a non-empty census");
  if (k < 1) throw ParameterError("ideal ranking depth must be at least one");
  std::vector<Rational> ideal;
  ideal.reserve(static_cast<size_t>(k));
  for (int g = census.num_grades() - 1; g >= 0 &&
       static_cast<int>(ideal.size()) < k; --g) {
    long available = census.counts[static_cast<size_t>(g)];
    for (long i = 0; i < available && static_cast<int>(ideal.size()) < k; ++i)
      ideal.push_back(map.gain(g));
  }
  while (static_cast<int>(ideal.size()) < k) ideal.push_back(Rational(0));
  return ideal;
}

ExactValue dcg(const Serp& serp, const GainMap& map, DiscountVariant variant,
               int jk_base, int k) {
  if (variant == DiscountVariant::JarvelinKekalainen && jk_base < 2)
    throw ParameterError("the log-discount base must be at least 2");
  k = effective_depth(k, serp);
  return ExactValue(
      discounted_sum(gains_to_depth(serp, map, k), variant, jk_base, k));
}

ExactValue ndcg(const Serp& serp, const GainMap& map,
                const GradeCensus& census, DiscountVariant variant,
                int jk_base, int k) {
  if (variant == DiscountVariant::JarvelinKekalainen && jk_base < 2)
    throw ParameterError("the log-discount base must be at least 2");
  k = effective_depth(k, serp);
  LogSum ideal =
      discounted_sum(ideal_gain_vector(census, map, k), variant, jk_base, k);
  if (ideal.is_zero())
    throw UndefinedMetricError(
        "NDCG is undefined when the ideal ranking has no gain");
  LogSum achieved =
      discounted_sum(gains_to_depth(serp, map, k), variant, jk_base, k);
  return ExactValue(std::move(achieved), std::move(ideal));
}

ExactValue err(const Serp& serp, const GainMap& map, int k) {
  k = effective_depth(k, serp);
  Rational continue_probability(1);
  Rational sum(0);
  for (int i = 1; i <= k && i <= serp.length(); ++i) {
    const Rational& g = map.gain(serp.grades[static_cast<size_t>(i - 1)]);
    if (g < 0 || g > 1)
      throw ParameterError("ERR needs stopping probabilities in [0, 1]");
    sum += rational(1, i) * g * continue_probability;
    continue_probability *= 1 - g;
  }
  return ExactValue(sum);
}

ExactValue score_serp(const Serp& serp, const GainMap& map,
                      const GradeCensus& census, const MetricSpec& spec) {
  spec.validate();
  switch (spec.id) {
    case MetricId::PrecAtK:
      return precision_at_k(serp, map, spec.depth);
    case MetricId::RR:
      return reciprocal_rank(serp, spec.depth);
    case MetricId::R1:
      return rank_first_relevant(serp, spec.depth);
    case MetricId::RBP:
      return rbp(serp, map, *spec.phi, spec.depth);
    case MetricId::AP:
      return average_precision(serp, census, spec.depth);
    case MetricId::DCG:
      return dcg(serp, map, *spec.variant, spec.jk_base, spec.depth);
    case MetricId::NDCG:
      return ndcg(serp, map, census, *spec.variant, spec.jk_base, spec.depth);
    case MetricId::ERR:
      return err(serp, map, spec.depth);
  }
  throw ParameterError("unknown metric");
}

}  // namespace serpscale
