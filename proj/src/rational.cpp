// SPDX-License-Identifier: Apache-2.0
#include "branchproof/rational.hpp"

#include <algorithm>
#include <cctype>

namespace branchproof {

Rational norm(const RatVector& v, Norm kind) {
  Rational out = 0;
  for (const Rational& x : v) {
    Rational ax = abs(x);
    if (kind == Norm::kL1) {
      out += ax;
    } else if (ax > out) {
      out = ax;
    }
  }
  return out;
}

Integer norm(const IntVector& v, Norm kind) {
  Integer out = 0;
  for (const Integer& x : v) {
    Integer ax = abs(x);
    if (kind == Norm::kL1) {
      out += ax;
    } else if (ax > out) {
      out = ax;
    }
  }
  return out;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_nearest(const Rational& q) {
  // |q| + 1/2 floored, then the sign put back: halves move away from zero.
  Rational shifted = abs(q) + Rational(1, 2);
  Integer r = floor(shifted);
  return sgn(q) < 0 ? Integer(-r) : r;
}

IntVector round_nearest(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const Rational& x : v) out.push_back(round_nearest(x));
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::size_t count_zeros(const RatVector& v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; }));
}

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const Integer& x : v) out.emplace_back(x);
  return out;
}

IntVector negate(const IntVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const Integer& x : v) out.push_back(-x);
  return out;
}

RatVector negate(const RatVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const Rational& x : v) out.push_back(-x);
  return out;
}

Rational dot(const RatVector& a, const RatVector& x) {
  if (a.size() != x.size()) throw PreconditionError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0) s += a[i] * x[i];
  }
  return s;
}

Rational dot(const IntVector& a, const RatVector& x) {
  if (a.size() != x.size()) throw PreconditionError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0) s += Rational(a[i]) * x[i];
  }
  return s;
}

Integer dot(const IntVector& a, const IntVector& x) {
  if (a.size() != x.size()) throw PreconditionError("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::size_t bit_length(const Integer& k) {
  if (sgn(k) == 0) return 0;
  return mpz_sizeinbase(k.get_mpz_t(), 2);
}

std::size_t bit_size(const Rational& q) {
  return 1 + bit_length(q.get_num()) + bit_length(q.get_den());
}

std::size_t bit_size(const Integer& k) { return 1 + bit_length(k) + 1; }

std::size_t bit_size(const RatVector& v) {
  std::size_t s = v.size();
  for (const Rational& x : v) s += bit_size(x);
  return s;
}

std::size_t bit_size(const IntVector& v) {
  std::size_t s = v.size();
  for (const Integer& x : v) s += bit_size(x);
  return s;
}

std::size_t bit_size(const RatMatrix& m) {
  std::size_t s = 0;
  for (const RatVector& row : m) {
    s += row.size();
    for (const Rational& x : row) s += bit_size(x);
  }
  return s;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Accepts ASCII '-' and U+2212.
std::string_view strip_minus(std::string_view text, bool& negative) {
  negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  } else if (text.substr(0, 3) == "\xE2\x88\x92") {
    negative = true;
    text.remove_prefix(3);
  }
  return text;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  bool negative = false;
  std::string_view body = strip_minus(text, negative);
  if (!all_digits(body)) throw ParseError("not an integer: '" + std::string(text) + "'");
  Integer r(std::string(body), 10);
  return negative ? Integer(-r) : r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  bool negative = false;
  std::string_view body = strip_minus(text, negative);
  std::size_t slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not a rational: '" + std::string(text) + "'");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (sgn(q) == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational r(negative ? Integer(-p) : p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& k) { return k.get_str(10); }

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str(10);
  }
  return out + ")";
}

std::string to_string(const RatVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str(10);
  }
  return out + ")";
}

}  // namespace branchproof
