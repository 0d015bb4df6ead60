// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "branchproof/lp.hpp"

namespace branchproof {

class UnboundedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct SupportValue {
  enum class Kind { kFinite, kNegInfinity, kUnbounded };
  Kind kind = Kind::kNegInfinity;
  Rational value;  // meaningful for kFinite only

  bool finite() const { return kind == Kind::kFinite; }
  bool empty() const { return kind == Kind::kNegInfinity; }
};

struct Halfspace {
  IntVector normal;
  Rational rhs;
};

struct CgCut {
  IntVector normal;
  std::optional<Integer> rhs;  // nullopt: sentinel for a cut taken on the empty set
  bool sentinel() const { return !rhs.has_value(); }
};

SupportValue support_value(const InequalitySystem& K, const RatVector& a);
SupportValue support_value(const InequalitySystem& K, const IntVector& a);

// Throws UnboundedError when h_K(a) = +inf.
std::pair<InequalitySystem, CgCut> apply_cg(const InequalitySystem& K, const IntVector& a);
InequalitySystem apply_cg_list(const InequalitySystem& K, const std::vector<IntVector>& cuts);

// K ∩ {a x = h_K(a)}.
InequalitySystem face(const InequalitySystem& K, const IntVector& a);

// max{c x : x in premise, |x|_1 <= R} <= d (or < d), via the extended l1 formulation.
bool implies_R(const InequalitySystem& premise, const Halfspace& target, const Integer& R, bool strict);

Integer l1_radius_bound(const InequalitySystem& K);

}  // namespace branchproof
