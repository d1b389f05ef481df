// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rational arithmetic on top of GMP.

#ifndef SMKM_RATIONAL_HPP_
#define SMKM_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace smkm {

// Always kept in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

// Parses "a/b" or "a" with optional leading minus. Decimal points,
// exponents and whitespace are rejected.
Rational parse_fraction(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

// 2^e for any integer e.
Rational pow2(int e);

// For q > 0: largest e with 2^e <= q, and smallest e with 2^e >= q.
int floor_log2(const Rational& q);
int ceil_log2(const Rational& q);

// Smallest integer t >= 0 with base^t >= target; base > 1.
unsigned ceil_log(const Rational& base, const Rational& target);

// Smallest integer >= q.
mpz_class ceil(const Rational& q);

}  // namespace smkm

#endif  // SMKM_RATIONAL_HPP_
