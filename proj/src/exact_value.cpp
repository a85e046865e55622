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
#include "serpscale/exact_value.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>
#include <utility>

namespace serpscale {

namespace {

// Equality fallback margin for quotients with unrelated denominators:
// 2^-160 is ~48 decimal digits.
constexpr unsigned long kEqualityGuardBits = 160;

// Bit-by-bit binary logarithm on fixed-point integers. Each extracted bit
// roughly doubles the accumulated truncation error, so the working precision
// carries 2 * kFixedBits + 64 fractional bits and the result is shifted down.
mpz_class compute_log2_fixed(unsigned long m) {
  const unsigned long work = 2 * kFixedBits + 64;
  unsigned long e = 0;
  while ((m >> (e + 1)) != 0) ++e;

  mpz_class x = mpz_class(m) << work;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), e);  // x = m / 2^e  in [1,2)
  const mpz_class two = mpz_class(2) << work;

  mpz_class frac = 0;
  for (unsigned long i = 0; i < work; ++i) {
    x *= x;
    mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), work);
    frac <<= 1;
    if (x >= two) {
      mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
      frac += 1;
    }
  }
  mpz_class result = (mpz_class(e) << work) + frac;
  mpz_fdiv_q_2exp(result.get_mpz_t(), result.get_mpz_t(), work - kFixedBits);
  return result;
}

// fixed(s)/fixed(r) rescaled back to kFixedBits, cached.
const mpz_class& log_ratio_fixed(unsigned long s, unsigned long r) {
  static std::mutex mu;
  static std::unordered_map<unsigned long long, mpz_class> cache;
  const unsigned long long key =
      (static_cast<unsigned long long>(s) << 32) | r;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    mpz_class num = log2_fixed(s) << kFixedBits;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), log2_fixed(r).get_mpz_t());
    it = cache.emplace(key, std::move(q)).first;
  }
  return it->second;
}

// floor(q * 2^kFixedBits)
mpz_class rational_fixed(const Rational& q) {
  mpz_class num = q.get_num() << kFixedBits;
  mpz_class result;
  mpz_fdiv_q(result.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return result;
}

// floor(c * scaled / 2^kFixedBits) for rational c and fixed-point scaled
mpz_class scaled_term(const Rational& c, const mpz_class& fixed_basis) {
  mpz_class num = c.get_num() * fixed_basis;
  mpz_class result;
  mpz_fdiv_q(result.get_mpz_t(), num.get_mpz_t(), c.get_den().get_mpz_t());
  return result;
}

std::strong_ordering order_rational(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering order_mpz(const mpz_class& a, const mpz_class& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

// Decimal digits of |value_fixed| / 2^kFixedBits * 10^places, rounded half
// away from zero, composed into a signed fixed-point string.
std::string fixed_point_decimal(const mpz_class& value_fixed, int places) {
  const bool negative = value_fixed < 0;
  mpz_class mag = abs(value_fixed);
  mpz_class pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  mpz_class scaled = mag * pow10;
  mpz_class half = mpz_class(1) << (kFixedBits - 1);
  scaled += half;
  mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kFixedBits);

  mpz_class whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(),
              pow10.get_mpz_t());
  std::string digits = frac.get_str();
  if (places > 0 && digits.size() < static_cast<size_t>(places))
    digits.insert(0, static_cast<size_t>(places) - digits.size(), '0');

  std::string out;
  if (negative && (whole != 0 || frac != 0)) out += '-';
  out += whole.get_str();
  if (places > 0) {
    out += '.';
    out += digits;
  }
  return out;
}

namespace {

// 30 significant digits of |v|/2^kFixedBits, for irrational exact_text().
std::string fixed_to_significant(const mpz_class& value_fixed, int sig) {
  if (value_fixed == 0) return "0";
  mpz_class mag = abs(value_fixed);
  // position of the leading decimal digit relative to the point
  double approx = mpz_get_d(mag.get_mpz_t());
  int exp10 = static_cast<int>(
      std::floor((std::log2(approx) - static_cast<double>(kFixedBits)) *
                 0.30102999566398119521));
  int places = sig - 1 - exp10;
  if (places < 0) places = 0;
  std::string s = fixed_point_decimal(value_fixed, places);
  return s;
}

}  // namespace

const mpz_class& log2_fixed(unsigned long m) {
  if (m < 1) throw ParameterError("log2 of value below one");
  static std::mutex mu;
  static std::unordered_map<unsigned long, mpz_class> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, compute_log2_fixed(m)).first;
  return it->second;
}

RootPower decompose_power(unsigned long m) {
  if (m < 2) throw ParameterError("power decomposition needs m >= 2");
  unsigned long max_exp = 1;
  while (max_exp + 1 < 64 && (1UL << (max_exp + 1)) <= m) ++max_exp;
  for (unsigned long p = max_exp; p >= 2; --p) {
    unsigned long root = static_cast<unsigned long>(
        std::llround(std::pow(static_cast<double>(m), 1.0 / p)));
    for (unsigned long r = (root > 1 ? root - 1 : 1); r <= root + 1; ++r) {
      unsigned long acc = 1;
      bool overflow = false;
      for (unsigned long i = 0; i < p; ++i) {
        if (acc > m / r) {
          overflow = true;
          break;
        }
        acc *= r;
      }
      if (!overflow && acc == m) return {r, p};
    }
  }
  return {m, 1};
}

void LogSum::add_inverse_log(unsigned long base, unsigned long arg,
                             const Rational& coeff) {
  if (base < 2 || arg < 2)
    throw ParameterError("logarithm base and argument must be >= 2");
  const RootPower b = decompose_power(base);
  const RootPower a = decompose_power(arg);
  // 1/log_base(arg) = (b.power / a.power) * log2(b.root) / log2(a.root)
  Rational c = coeff * rational(static_cast<long>(b.power),
                                static_cast<long>(a.power));
  if (a.root == b.root) {
    rational_ += c;
    return;
  }
  if (unit_ != 0 && unit_ != b.root)
    throw ParameterError("mixed logarithm units in one sum");
  unit_ = b.root;
  Rational& slot = terms_[a.root];
  slot += c;
  if (slot == 0) terms_.erase(a.root);
  normalize_unit();
}

void LogSum::add_rational(const Rational& q) { rational_ += q; }

void LogSum::add(const LogSum& other) {
  rational_ += other.rational_;
  if (other.terms_.empty()) return;
  if (unit_ != 0 && other.unit_ != 0 && unit_ != other.unit_)
    throw ParameterError("mixed logarithm units in one sum");
  if (unit_ == 0) unit_ = other.unit_;
  for (const auto& [r, c] : other.terms_) {
    Rational& slot = terms_[r];
    slot += c;
    if (slot == 0) terms_.erase(r);
  }
  normalize_unit();
}

void LogSum::subtract(const LogSum& other) {
  LogSum negated = other;
  negated.scale(Rational(-1));
  add(negated);
}

void LogSum::scale(const Rational& factor) {
  if (factor == 0) {
    rational_ = 0;
    terms_.clear();
    unit_ = 0;
    return;
  }
  rational_ *= factor;
  for (auto& [r, c] : terms_) c *= factor;
}

void LogSum::normalize_unit() {
  if (terms_.empty()) unit_ = 0;
}

Rational LogSum::leading_coefficient() const {
  if (rational_ != 0) return rational_;
  if (!terms_.empty()) return terms_.begin()->second;
  return Rational(0);
}

bool LogSum::operator==(const LogSum& other) const {
  return rational_ == other.rational_ && unit_ == other.unit_ &&
         terms_ == other.terms_;
}

std::strong_ordering LogSum::operator<=>(const LogSum& other) const {
  if (is_rational() && other.is_rational())
    return order_rational(rational_, other.rational_);
  auto numeric = order_mpz(fixed(), other.fixed());
  if (numeric != std::strong_ordering::equal) return numeric;
  // Bit-identical numerics: fall back to canonical-form order so sorting is
  // total and deterministic. Identical forms are the same number.
  if (auto c = order_rational(rational_, other.rational_);
      c != std::strong_ordering::equal)
    return c;
  if (auto c = unit_ <=> other.unit_; c != std::strong_ordering::equal)
    return c;
  auto it = terms_.begin();
  auto jt = other.terms_.begin();
  for (; it != terms_.end() && jt != other.terms_.end(); ++it, ++jt) {
    if (auto c = it->first <=> jt->first; c != std::strong_ordering::equal)
      return c;
    if (auto c = order_rational(it->second, jt->second);
        c != std::strong_ordering::equal)
      return c;
  }
  if (it != terms_.end()) return std::strong_ordering::greater;
  if (jt != other.terms_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

mpz_class LogSum::fixed() const {
  mpz_class acc = rational_fixed(rational_);
  for (const auto& [r, c] : terms_)
    acc += scaled_term(c, log_ratio_fixed(unit_, r));
  return acc;
}

double LogSum::as_double() const {
  if (is_rational()) return rational_.get_d();
  return std::ldexp(mpz_get_d(fixed().get_mpz_t()),
                    -static_cast<int>(kFixedBits));
}

ExactValue::ExactValue(const Rational& q)
    : num_(q), den_(Rational(1)) {
  compute_fixed();
}

ExactValue::ExactValue(LogSum sum)
    : num_(std::move(sum)), den_(Rational(1)) {
  compute_fixed();
}

ExactValue::ExactValue(LogSum numerator, LogSum denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw ParameterError("zero denominator in exact value");
  if (den_.is_rational()) {
    num_.scale(Rational(1) / den_.rational_part());
    den_ = LogSum(Rational(1));
  } else if (num_.is_zero()) {
    den_ = LogSum(Rational(1));
  } else {
    // num = lambda * den collapses to the rational lambda.
    Rational lambda = num_.leading_coefficient() / den_.leading_coefficient();
    LogSum probe = den_;
    probe.scale(lambda);
    if (probe == num_) {
      num_ = LogSum(lambda);
      den_ = LogSum(Rational(1));
    } else {
      // Canonical scale: denominator's leading coefficient becomes one.
      Rational scale = Rational(1) / den_.leading_coefficient();
      num_.scale(scale);
      den_.scale(scale);
    }
  }
  compute_fixed();
}

void ExactValue::compute_fixed() {
  if (den_.is_rational() && den_.rational_part() == 1) {
    fixed_ = num_.fixed();
  } else {
    mpz_class scaled = num_.fixed() << kFixedBits;
    mpz_fdiv_q(fixed_.get_mpz_t(), scaled.get_mpz_t(),
               den_.fixed().get_mpz_t());
  }
}

Rational ExactValue::as_rational() const {
  if (!is_rational())
    throw ParameterError("exact value is not rational");
  return num_.rational_part() / den_.rational_part();
}

bool ExactValue::operator==(const ExactValue& other) const {
  if (den_ == other.den_) return num_ == other.num_;
  // Unrelated denominators: numeric fallback, documented in the header.
  mpz_class diff = fixed() - other.fixed();
  mpz_class bound = mpz_class(1) << (kFixedBits - kEqualityGuardBits);
  return abs(diff) < bound;
}

std::strong_ordering ExactValue::operator<=>(const ExactValue& other) const {
  if (is_rational() && other.is_rational())
    return order_rational(as_rational(), other.as_rational());
  auto numeric = order_mpz(fixed(), other.fixed());
  if (numeric != std::strong_ordering::equal) return numeric;
  if (auto c = num_ <=> other.num_; c != std::strong_ordering::equal) return c;
  return den_ <=> other.den_;
}

ExactValue ExactValue::minus(const ExactValue& other) const {
  if (is_rational() && other.is_rational())
    return ExactValue(as_rational() - other.as_rational());
  if (den_ == other.den_) {
    LogSum n = num_;
    n.subtract(other.num_);
    return ExactValue(std::move(n), den_);
  }
  // Rational against quotient: r - n/d = (r d - n)/d, and symmetrically.
  if (is_rational()) {
    LogSum n = other.den_;
    n.scale(as_rational());
    n.subtract(other.num_);
    return ExactValue(std::move(n), other.den_);
  }
  if (other.is_rational()) {
    LogSum n = den_;
    n.scale(other.as_rational());
    LogSum result = num_;
    result.subtract(n);
    return ExactValue(std::move(result), den_);
  }
  throw ParameterError("exact difference needs a shared denominator");
}

double ExactValue::as_double() const {
  if (is_rational()) return as_rational().get_d();
  return std::ldexp(mpz_get_d(fixed().get_mpz_t()),
                    -static_cast<int>(kFixedBits));
}

std::string ExactValue::decimal(int places) const {
  if (places < 0) throw ParameterError("negative decimal precision");
  if (is_rational()) return decimal_string(as_rational(), places);
  return fixed_point_decimal(fixed(), places);
}

std::string ExactValue::exact_text() const {
  if (is_rational()) return fraction_string(as_rational());
  return "~" + fixed_to_significant(fixed(), 30);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParameterError("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0)
      throw ParameterError("not a fraction: " + s);
    if (r.get_den() == 0) throw ParameterError("zero denominator: " + s);
    r.canonicalize();
    return r;
  }
  // Decimal, possibly with exponent: m.mmm e +-x
  bool negative = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  long exponent = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      try {
        exponent = std::stol(s.substr(pos + 1));
      } catch (...) {
        throw ParameterError("not a number: " + s);
      }
      break;
    } else {
      throw ParameterError("not a number: " + s);
    }
  }
  if (!seen_digit) throw ParameterError("not a number: " + s);
  if (digits.empty()) digits = "0";
  Rational r(mpz_class(digits, 10), 1);  // base forced, leading zeros abound
  long net = exponent - frac_digits;
  mpz_class pow10 = 1;
  for (long i = 0; i < (net < 0 ? -net : net); ++i) pow10 *= 10;
  if (net >= 0)
    r *= Rational(pow10);
  else
    r /= Rational(pow10);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string fraction_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string decimal_string(const Rational& r, int places) {
  if (places < 0) throw ParameterError("negative decimal precision");
  const bool negative = r < 0;
  mpz_class num = abs(r.get_num());
  const mpz_class& den = r.get_den();
  mpz_class pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  // round(n/d * 10^p) half away from zero = floor((2 n 10^p + d) / (2 d))
  mpz_class scaled = 2 * num * pow10 + den;
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_mpz_t(),
             mpz_class(2 * den).get_mpz_t());
  mpz_class whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), rounded.get_mpz_t(),
              pow10.get_mpz_t());
  std::string digits = frac.get_str();
  if (places > 0 && digits.size() < static_cast<size_t>(places))
    digits.insert(0, static_cast<size_t>(places) - digits.size(), '0');
  std::string out;
  if (negative && rounded != 0) out += '-';
  out += whole.get_str();
  if (places > 0) {
    out += '.';
    out += digits;
  }
  return out;
}

}  // namespace serpscale
