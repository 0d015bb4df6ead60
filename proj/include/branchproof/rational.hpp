// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace branchproof {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

// Input or precondition violations. The CLI maps these to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Norm { kL1, kLinf };

Rational norm(const RatVector& v, Norm kind);
Integer norm(const IntVector& v, Norm kind);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Nearest integer; exact halves go away from zero.
Integer round_nearest(const Rational& q);
IntVector round_nearest(const RatVector& v);

bool is_integer(const Rational& q);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);
std::size_t count_zeros(const RatVector& v);

RatVector to_rational(const IntVector& v);
IntVector negate(const IntVector& v);
RatVector negate(const RatVector& v);
Rational dot(const RatVector& a, const RatVector& x);
Rational dot(const IntVector& a, const RatVector& x);
Integer dot(const IntVector& a, const IntVector& x);
Integer pow(const Integer& base, unsigned long exponent);

// ceil(log2(|k|+1)), i.e. the bit length of |k|.
std::size_t bit_length(const Integer& k);
std::size_t bit_size(const Rational& q);
std::size_t bit_size(const Integer& k);
std::size_t bit_size(const RatVector& v);
std::size_t bit_size(const IntVector& v);
std::size_t bit_size(const RatMatrix& m);

// "p/q" or "p" with an optional leading minus.
// num/den in lowest terms; den != 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& k);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

}  // namespace branchproof
