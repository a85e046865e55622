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

#include <optional>
#include <string>
#include <vector>

#include "serpscale/core_model.hpp"
#include "serpscale/exact_value.hpp"

namespace serpscale {

struct UndefinedMetricError : Error {
  using Error::Error;
};

enum class MetricId { PrecAtK, RR, R1, RBP, AP, DCG, NDCG, ERR };

enum class DiscountVariant {
  Microsoft,           // discount at rank d is log2(1+d)
  JarvelinKekalainen,  // 1 for d <= b, log_b(d) for d >= b
};

/// A named, parameterized mapping from SERP classes to scores. depth 0
/// means "score the full SERP".
struct MetricSpec {
  MetricId id = MetricId::PrecAtK;
  int depth = 0;
  std::optional<Rational> phi;               // RBP persistence
  std::optional<DiscountVariant> variant;    // DCG / NDCG discount
  int jk_base = 2;

  static MetricSpec prec(int k);
  static MetricSpec rr(int k = 0);
  static MetricSpec r1(int k = 0);
  static MetricSpec rbp(const Rational& phi, int k = 0);
  static MetricSpec ap(int k = 0);
  static MetricSpec dcg(DiscountVariant v, int k = 0, int b = 2);
  static MetricSpec ndcg(DiscountVariant v, int k = 0, int b = 2);
  static MetricSpec err(int k = 0);

  /// Enforces the field coupling rules; throws ParameterError.
  void validate() const;
  /// Stable display label, e.g. "ndcg[jk,b=2]@10".
  std::string label() const;
};

/// R1 counts ranks, so smaller is better; every other metric rewards larger
/// scores.
bool higher_is_better(MetricId id);

/// Mean gain over the top k positions (the classic relevant-count fraction
/// when gains are 0/1).
ExactValue precision_at_k(const Serp& serp, const GainMap& map, int k);

/// 1/r for the first rank r <= k holding a grade above zero, else 0.
ExactValue reciprocal_rank(const Serp& serp, int k);

/// The rank of the first relevant document; k+1 when the top k hold none,
/// which keeps the metric total and strictly worst for the empty class.
ExactValue rank_first_relevant(const Serp& serp, int k);

/// (1 - phi) * sum phi^(i-1) g_i over i <= k, with 0 < phi < 1.
ExactValue rbp(const Serp& serp, const GainMap& map, const Rational& phi,
               int k);

/// (1/n1) * sum of binary precision at each relevant rank <= k, with n1 the
/// census relevant count. Undefined when n1 is zero.
ExactValue average_precision(const Serp& serp, const GradeCensus& census,
                             int k);

/// The k largest gains available under the census, descending, zero padded.
std::vector<Rational> ideal_gain_vector(const GradeCensus& census,
                                        const GainMap& map, int k);

ExactValue dcg(const Serp& serp, const GainMap& map, DiscountVariant variant,
               int jk_base, int k);
ExactValue ndcg(const Serp& serp, const GainMap& map,
                const GradeCensus& census, DiscountVariant variant,
                int jk_base, int k);

/// Cascade stopping model: sum (1/i) g_i prod_{j<i} (1 - g_j), gains read
/// as stopping probabilities.
ExactValue err(const Serp& serp, const GainMap& map, int k);

/// Dispatch on spec. The census is consulted only by AP and NDCG.
ExactValue score_serp(const Serp& serp, const GainMap& map,
                      const GradeCensus& census, const MetricSpec& spec);

}  // namespace serpscale
