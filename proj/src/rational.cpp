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

#include "smkm/rational.hpp"

#include <stdexcept>

namespace smkm {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_fraction(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not an exact fraction: '" +
                                std::string(text) + "' (use a/b)");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2(int e) {
  mpz_class one = 1;
  mpz_class p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(),
               static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  Rational q(one, p);
  q.canonicalize();
  return q;
}

int floor_log2(const Rational& q) {
  if (q <= 0) throw std::invalid_argument("floor_log2 needs a positive value");
  // Estimate from bit lengths, then correct by at most a step each way.
  int e = static_cast<int>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
          static_cast<int>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  while (pow2(e) > q) --e;
  while (pow2(e + 1) <= q) ++e;
  return e;
}

int ceil_log2(const Rational& q) {
  int e = floor_log2(q);
  return pow2(e) == q ? e : e + 1;
}

unsigned ceil_log(const Rational& base, const Rational& target) {
  if (base <= 1) throw std::invalid_argument("ceil_log needs base > 1");
  unsigned t = 0;
  Rational power = 1;
  while (power < target) {
    power *= base;
    ++t;
  }
  return t;
}

mpz_class ceil(const Rational& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

}  // namespace smkm
