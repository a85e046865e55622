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

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace serpscale {

/// Exact rational number. All scores and gains are kept in this form (or in
/// an ExactValue wrapping it) until the moment they are printed.
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParameterError : Error {
  using Error::Error;
};

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "3", "-3", "3/4", "0.75", "1e-3". Decimal and fraction forms are
/// converted exactly, never through a double.
Rational parse_rational(std::string_view text);

/// "17/32", or just "3" when the denominator is one.
std::string fraction_string(const Rational& r);

/// Fixed-point decimal with `places` digits, rounding half away from zero,
/// e.g. 17/32 at 4 places -> "0.5313".
std::string decimal_string(const Rational& r, int places);

inline double as_double(const Rational& r) { return r.get_d(); }

}  // namespace serpscale
