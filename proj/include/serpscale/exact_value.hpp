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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "serpscale/rational.hpp"

namespace serpscale {

/// Fractional bits used for fixed-point evaluation of log-bearing values.
/// Equality is decided symbolically whenever possible; the numeric form is
/// used for ordering, display, and as a last-resort equality fallback good
/// to well beyond 30 significant decimal digits.
inline constexpr unsigned long kFixedBits = 256;

/// round(log2(m) * 2^kFixedBits) for integer m >= 1. Cached, thread safe.
const mpz_class& log2_fixed(unsigned long m);

/// Decimal rendering of a 2^kFixedBits-scaled value with `places` digits,
/// rounding half away from zero.
std::string fixed_point_decimal(const mpz_class& value_fixed, int places);

/// Writes m = root^power with the largest possible integer power.
struct RootPower {
  unsigned long root;
  unsigned long power;
};
RootPower decompose_power(unsigned long m);

/// A number of the form
///
///     q  +  sum_r c_r * log2(unit) / log2(r)
///
/// with q and every c_r rational, `unit` a fixed integer >= 2 shared by all
/// terms, and every r >= 2 an integer that is neither a perfect power nor a
/// power of `unit`. Discounted-gain sums live here: a term g / log_b(d) is
/// canonicalized on entry (d = r^p collapses to a rational multiple of
/// 1/log2(r); powers of the unit root collapse into q). Two canonical forms
/// are equal as vectors exactly when the represented reals are equal, up to
/// rational-linear independence of the basis, which holds for every basis
/// this library generates.
class LogSum {
 public:
  LogSum() = default;
  explicit LogSum(Rational q) : rational_(std::move(q)) {}

  /// Adds coeff / log_base(arg); base, arg >= 2.
  void add_inverse_log(unsigned long base, unsigned long arg,
                       const Rational& coeff);
  void add_rational(const Rational& q);
  void add(const LogSum& other);
  void subtract(const LogSum& other);
  void scale(const Rational& factor);

  bool is_zero() const { return terms_.empty() && rational_ == 0; }
  bool is_rational() const { return terms_.empty(); }
  const Rational& rational_part() const { return rational_; }
  unsigned long unit() const { return unit_; }
  const std::map<unsigned long, Rational>& terms() const { return terms_; }

  /// First nonzero coefficient in canonical term order (rational part first,
  /// then by ascending basis root). Zero sums have no leading coefficient.
  Rational leading_coefficient() const;

  bool operator==(const LogSum& other) const;
  /// Deterministic total order: numeric first, canonical form breaking ties.
  std::strong_ordering operator<=>(const LogSum& other) const;

  /// floor(value * 2^kFixedBits), recomputed per call.
  mpz_class fixed() const;
  double as_double() const;

 private:
  Rational rational_{0};
  unsigned long unit_ = 0;  // 0 while terms_ is empty
  std::map<unsigned long, Rational> terms_;

  void normalize_unit();
};

/// A score value: either an exact rational or an exact quotient of two
/// LogSums (the NDCG case). Quotients are canonicalized so that equal values
/// within one enumeration universe compare equal structurally: a rational
/// denominator is divided through, a numerator proportional to the
/// denominator collapses to a plain rational, and otherwise both sides are
/// scaled so the denominator's leading coefficient is one.
///
/// Structural equality decides deduplication. When two quotients have
/// unrelated denominators (scores from different universes), equality falls
/// back to the fixed-point forms agreeing within 2^-160, i.e. far beyond 30
/// significant digits.
class ExactValue {
 public:
  ExactValue() : ExactValue(Rational(0)) {}
  ExactValue(const Rational& q);
  explicit ExactValue(LogSum sum);
  ExactValue(LogSum numerator, LogSum denominator);

  bool is_rational() const { return num_.is_rational() && den_.is_rational(); }
  /// Valid only when is_rational().
  Rational as_rational() const;
  const LogSum& numerator() const { return num_; }
  const LogSum& denominator() const { return den_; }

  bool operator==(const ExactValue& other) const;
  std::strong_ordering operator<=>(const ExactValue& other) const;

  /// Exact difference. Defined for rational values and for quotients over a
  /// structurally identical denominator (scores from one universe).
  ExactValue minus(const ExactValue& other) const;

  /// floor(value * 2^kFixedBits), computed at construction; instances are
  /// immutable and safe to share across threads.
  const mpz_class& fixed() const { return fixed_; }
  double as_double() const;
  /// Decimal with `places` digits, half away from zero.
  std::string decimal(int places) const;
  /// "17/32" for rationals; "~d.ddd..." (30 significant digits) otherwise.
  std::string exact_text() const;

 private:
  void compute_fixed();

  LogSum num_;
  LogSum den_;
  mpz_class fixed_;
};

}  // namespace serpscale
