// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include "branchproof/rational.hpp"

namespace branchproof {

// {x in Q^n : A x <= b}. Equalities are stored as two opposing rows.
class InequalitySystem {
 public:
  InequalitySystem() = default;
  explicit InequalitySystem(std::size_t dim);
  InequalitySystem(std::size_t dim, RatMatrix rows, RatVector rhs);

  std::size_t dim() const { return dim_; }
  std::size_t num_rows() const { return rhs_.size(); }
  const RatMatrix& rows() const { return rows_; }
  const RatVector& rhs() const { return rhs_; }
  const RatVector& row(std::size_t i) const { return rows_[i]; }
  const Rational& rhs(std::size_t i) const { return rhs_[i]; }

  void add_row(RatVector a, Rational b);
  void add_row(const IntVector& a, const Rational& b);
  void add_equality(const RatVector& a, const Rational& b);
  void add_equality(const IntVector& a, const Rational& b);
  void append(const InequalitySystem& other);
  void truncate(std::size_t rows);

  bool contains(const RatVector& x) const;
  bool operator==(const InequalitySystem& other) const = default;

 private:
  std::size_t dim_ = 0;
  RatMatrix rows_;
  RatVector rhs_;
};

InequalitySystem box(std::size_t dim, const Rational& lo, const Rational& hi);

struct FarkasCertificate {
  RatVector multipliers;
  std::size_t support_size() const;
};

// lambda >= 0, lambda^T A = 0, lambda^T b < 0, checked with exact arithmetic only.
bool check_farkas(const InequalitySystem& P, const RatVector& lambda);

enum class Sense { kMax, kMin };

struct LpOptimal {
  Rational value;
  RatVector point;
  // dual >= 0 with dual^T A = c^T and dual^T b = value for kMax;
  // for kMin the same identities hold with -c and -value.
  RatVector dual;
};
struct LpInfeasible {
  FarkasCertificate cert;
};
struct LpUnbounded {
  RatVector ray;  // A ray <= 0, c^T ray > 0 (kMax) or < 0 (kMin)
};
using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

// Two-phase dense simplex over exact rationals, Bland's rule.
LpOutcome lp_optimize(const InequalitySystem& P, const RatVector& c, Sense sense);

std::optional<FarkasCertificate> is_empty(const InequalitySystem& P);

// Carathéodory-style reduction to a certificate whose support rows (a_i, b_i)
// are linearly independent, so at most n+1 nonzeros. Output is scaled to a
// primitive integer vector.
FarkasCertificate reduce_certificate(const InequalitySystem& P, const FarkasCertificate& lambda);

}  // namespace branchproof
