// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "branchproof/rational.hpp"

namespace branchproof {

struct DioApprox {
  IntVector a_prime;
  Integer multiplier;  // l
  Integer precision;   // N
};

// Smallest l in 1..N^n with |l*a/|a|_inf - round(l*a/|a|_inf)|_inf < 1/N.
DioApprox dirichlet_approx(const RatVector& a, const Integer& N);

struct RhsClassification {
  enum class Kind { kNonDominating, kDominating };
  Kind kind = Kind::kNonDominating;
  Integer b_prime;
  Rational alpha;            // |a_hat|_inf / |a'|_inf
  bool on_boundary = false;  // some deciding comparison held with equality
  bool dominating() const { return kind == Kind::kDominating; }
};

// Requires R/N < 1/4 and alpha >= 2.
RhsClassification classify_rhs(const RatVector& a_hat, const Rational& b_hat, const IntVector& a_prime,
                               const Integer& R, const Integer& N);
RhsClassification classify_rhs(const RatVector& a_hat, const Rational& b_hat, const DioApprox& approx,
                               const Integer& R, const Integer& N);

}  // namespace branchproof
