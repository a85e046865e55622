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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "serpscale/exact_value.hpp"

using namespace serpscale;

TEST_CASE("rational parsing accepts fractions, decimals and exponents") {
  CHECK(parse_rational("3/4") == rational(3, 4));
  CHECK(parse_rational("-1/3") == rational(-1, 3));
  CHECK(parse_rational("0.75") == rational(3, 4));
  CHECK(parse_rational("0.5") == rational(1, 2));
  CHECK(parse_rational("2") == rational(2));
  CHECK(parse_rational("-0.25") == rational(-1, 4));
  CHECK(parse_rational("1e-3") == rational(1, 1000));
  CHECK(parse_rational("2.5e2") == rational(250));
  CHECK_THROWS_AS(parse_rational(""), ParameterError);
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
}

TEST_CASE("decimal rendering rounds half away from zero") {
  CHECK(decimal_string(rational(17, 32), 4) == "0.5313");   // 0.53125
  CHECK(decimal_string(rational(9, 32), 4) == "0.2813");    // 0.28125
  CHECK(decimal_string(rational(5, 32), 4) == "0.1563");    // 0.15625
  CHECK(decimal_string(rational(1, 3), 4) == "0.3333");
  CHECK(decimal_string(rational(1, 4), 1) == "0.3");
  CHECK(decimal_string(rational(-1, 4), 1) == "-0.3");
  CHECK(decimal_string(rational(1), 4) == "1.0000");
  CHECK(decimal_string(rational(0), 4) == "0.0000");
  CHECK(decimal_string(rational(27, 40), 4) == "0.6750");
  CHECK(decimal_string(rational(3), 0) == "3");
}

TEST_CASE("fraction rendering") {
  CHECK(fraction_string(rational(17, 32)) == "17/32");
  CHECK(fraction_string(rational(4, 2)) == "2");
  CHECK(fraction_string(rational(-3, 9)) == "-1/3");
}

TEST_CASE("power decomposition finds the smallest root") {
  CHECK(decompose_power(2).root == 2);
  CHECK(decompose_power(2).power == 1);
  CHECK(decompose_power(8).root == 2);
  CHECK(decompose_power(8).power == 3);
  CHECK(decompose_power(9).root == 3);
  CHECK(decompose_power(9).power == 2);
  CHECK(decompose_power(6).root == 6);
  CHECK(decompose_power(6).power == 1);
  CHECK(decompose_power(64).root == 2);
  CHECK(decompose_power(64).power == 6);
  CHECK(decompose_power(36).root == 6);
  CHECK(decompose_power(36).power == 2);
  CHECK(decompose_power(1000000).root == 10);
  CHECK(decompose_power(1000000).power == 6);
}

TEST_CASE("fixed-point logarithms satisfy exactness and product identities") {
  // Powers of two are exact.
  CHECK(log2_fixed(2) == mpz_class(1) << kFixedBits);
  CHECK(log2_fixed(4) == mpz_class(2) << kFixedBits);
  CHECK(log2_fixed(1) == 0);

  // log2(6) = 1 + log2(3) and log2(10) = 1 + log2(5), computed through
  // different code paths, must agree to a few units in the last place.
  mpz_class one = mpz_class(1) << kFixedBits;
  CHECK(abs(log2_fixed(6) - (one + log2_fixed(3))) < 16);
  CHECK(abs(log2_fixed(10) - (one + log2_fixed(5))) < 16);
  CHECK(abs(log2_fixed(9) - 2 * log2_fixed(3)) < 16);

  // Double-precision cross check.
  auto to_double = [](const mpz_class& v) {
    return std::ldexp(mpz_get_d(v.get_mpz_t()),
                      -static_cast<int>(kFixedBits));
  };
  for (unsigned long m : {3UL, 5UL, 7UL, 11UL, 1023UL})
    CHECK(std::abs(to_double(log2_fixed(m)) - std::log2(double(m))) < 1e-14);
}

TEST_CASE("log sums canonicalize powers into rationals and shared roots") {
  LogSum sum;
  sum.add_inverse_log(2, 8, rational(1));  // 1/log2(8) = 1/3
  CHECK(sum.is_rational());
  CHECK(sum.rational_part() == rational(1, 3));

  sum.add_inverse_log(2, 9, rational(1, 2));  // = (1/4) / log2(3)
  CHECK_FALSE(sum.is_rational());
  REQUIRE(sum.terms().size() == 1);
  CHECK(sum.terms().begin()->first == 3);
  CHECK(sum.terms().begin()->second == rational(1, 4));

  sum.add_inverse_log(2, 3, rational(-1, 4));  // cancels the 1/log2(3) term
  CHECK(sum.is_rational());
  CHECK(sum.rational_part() == rational(1, 3));
}

TEST_CASE("log sums handle non-binary discount bases") {
  LogSum sum;
  sum.add_inverse_log(3, 9, rational(1));  // 1/log_3(9) = 1/2
  CHECK(sum.is_rational());
  CHECK(sum.rational_part() == rational(1, 2));

  LogSum other;
  other.add_inverse_log(4, 8, rational(1));  // 1/log_4(8) = 2/3
  CHECK(other.is_rational());
  CHECK(other.rational_part() == rational(2, 3));

  LogSum mixed;
  mixed.add_inverse_log(3, 5, rational(1));
  CHECK_FALSE(mixed.is_rational());
  CHECK(mixed.unit() == 3);
  CHECK_THROWS_AS(mixed.add_inverse_log(5, 7, rational(1)), ParameterError);
}

TEST_CASE("log sum ordering follows numeric value") {
  LogSum third;  // 1/log2(3) ~ 0.63
  third.add_inverse_log(2, 3, rational(1));
  LogSum half(rational(1, 2));
  LogSum one(rational(1));
  CHECK(half < third);
  CHECK(third < one);
  CHECK(third == third);
}

TEST_CASE("exact quotients collapse rational and proportional cases") {
  LogSum num;
  num.add_inverse_log(2, 3, rational(1));
  LogSum den;
  den.add_inverse_log(2, 3, rational(2));
  ExactValue v(num, den);  // (1/log2 3) / (2/log2 3) = 1/2
  CHECK(v.is_rational());
  CHECK(v.as_rational() == rational(1, 2));

  LogSum den2(rational(4));
  ExactValue w(LogSum(rational(1)), den2);
  CHECK(w.is_rational());
  CHECK(w.as_rational() == rational(1, 4));
}

TEST_CASE("structurally different but equal quotients compare equal") {
  LogSum base;
  base.add_rational(rational(1));
  base.add_inverse_log(2, 3, rational(1));  // 1 + 1/log2(3)

  LogSum num_a(rational(1));
  LogSum num_b(rational(2));
  LogSum den_b = base;
  den_b.scale(rational(2));

  ExactValue a(num_a, base);
  ExactValue b(num_b, den_b);  // same value, different raw scaling
  CHECK(a == b);
  CHECK((a <=> b) == std::strong_ordering::equal);
}

TEST_CASE("exact differences require a shared denominator") {
  LogSum den;
  den.add_rational(rational(1));
  den.add_inverse_log(2, 3, rational(1));
  ExactValue a(LogSum(rational(1)), den);
  ExactValue b(LogSum(rational(1, 2)), den);
  ExactValue gap = a.minus(b);
  CHECK(gap == b);  // (1 - 1/2)/den == (1/2)/den

  ExactValue r1(rational(3, 4)), r2(rational(1, 4));
  CHECK(r1.minus(r2) == ExactValue(rational(1, 2)));

  LogSum other_den;
  other_den.add_inverse_log(2, 5, rational(1));
  ExactValue c(LogSum(rational(1)), other_den);
  CHECK_THROWS_AS(a.minus(c), ParameterError);
}

TEST_CASE("differences mix rationals with quotients exactly") {
  LogSum den;  // 1 + 1/log2(3)
  den.add_rational(rational(1));
  den.add_inverse_log(2, 3, rational(1));
  ExactValue quotient(LogSum(rational(1)), den);  // 1/(1 + 1/log2 3)
  ExactValue one(rational(1));

  // 1 - q and q - 0 keep the shared denominator.
  ExactValue complement = one.minus(quotient);
  LogSum num = den;
  num.add_rational(rational(-1));
  CHECK(complement == ExactValue(std::move(num), den));
  CHECK(quotient.minus(ExactValue(rational(0))) == quotient);
  // (1 - q) + nothing else: check the numeric value too
  CHECK(std::abs(complement.as_double() - (1.0 - quotient.as_double())) <
        1e-15);
}

TEST_CASE("exact text marks irrational values") {
  ExactValue r(rational(17, 32));
  CHECK(r.exact_text() == "17/32");
  LogSum s;
  s.add_inverse_log(2, 3, rational(1));
  ExactValue v(s);
  CHECK(v.exact_text().front() == '~');
  CHECK(v.decimal(4) == "0.6309");  // 1/log2(3)
}

TEST_CASE("irrational decimals render through the fixed-point form") {
  LogSum s;  // 1/log2(3) + 1/2
  s.add_inverse_log(2, 3, rational(1));
  s.add_rational(rational(1, 2));
  ExactValue v(s);
  CHECK(v.decimal(6) == "1.130930");
  CHECK(std::abs(v.as_double() - 1.1309297535714574) < 1e-15);
}
