// SPDX-License-Identifier: Apache-2.0
#include "branchproof/polytope.hpp"

#include <string>

namespace branchproof {

SupportValue support_value(const InequalitySystem& K, const RatVector& a) {
  LpOutcome out = lp_optimize(K, a, Sense::kMax);
  if (auto* opt = std::get_if<LpOptimal>(&out)) {
    return {SupportValue::Kind::kFinite, opt->value};
  }
  if (std::holds_alternative<LpInfeasible>(out)) return {SupportValue::Kind::kNegInfinity, 0};
  return {SupportValue::Kind::kUnbounded, 0};
}

SupportValue support_value(const InequalitySystem& K, const IntVector& a) {
  return support_value(K, to_rational(a));
}

std::pair<InequalitySystem, CgCut> apply_cg(const InequalitySystem& K, const IntVector& a) {
  SupportValue h = support_value(K, a);
  if (h.kind == SupportValue::Kind::kUnbounded) {
    throw UnboundedError("apply_cg: set unbounded in direction " + to_string(a));
  }
  if (h.empty()) return {K, CgCut{a, std::nullopt}};
  Integer rhs = floor(h.value);
  InequalitySystem out = K;
  out.add_row(a, Rational(rhs));
  return {std::move(out), CgCut{a, rhs}};
}

InequalitySystem apply_cg_list(const InequalitySystem& K, const std::vector<IntVector>& cuts) {
  InequalitySystem cur = K;
  for (const IntVector& a : cuts) {
    auto [next, cut] = apply_cg(cur, a);
    if (cut.sentinel()) break;  // empty stays empty
    cur = std::move(next);
  }
  return cur;
}

InequalitySystem face(const InequalitySystem& K, const IntVector& a) {
  SupportValue h = support_value(K, a);
  if (h.kind == SupportValue::Kind::kUnbounded) throw UnboundedError("face: unbounded direction");
  if (h.empty()) throw PreconditionError("face: empty set");
  InequalitySystem out = K;
  out.add_equality(a, h.value);
  return out;
}

bool implies_R(const InequalitySystem& premise, const Halfspace& target, const Integer& R, bool strict) {
  const std::size_t n = premise.dim();
  if (target.normal.size() != n) throw PreconditionError("implies_R: dimension mismatch");
  // variables (x, y): premise on x, -y <= x <= y, sum y <= R
  InequalitySystem ext(2 * n);
  for (std::size_t i = 0; i < premise.num_rows(); ++i) {
    RatVector row(2 * n, 0);
    for (std::size_t j = 0; j < n; ++j) row[j] = premise.row(i)[j];
    ext.add_row(std::move(row), premise.rhs(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    RatVector up(2 * n, 0), down(2 * n, 0);
    up[j] = 1;
    up[n + j] = -1;
    down[j] = -1;
    down[n + j] = -1;
    ext.add_row(std::move(up), 0);
    ext.add_row(std::move(down), 0);
  }
  RatVector sum(2 * n, 0);
  for (std::size_t j = 0; j < n; ++j) sum[n + j] = 1;
  ext.add_row(std::move(sum), Rational(R));

  RatVector c(2 * n, 0);
  for (std::size_t j = 0; j < n; ++j) c[j] = target.normal[j];
  LpOutcome out = lp_optimize(ext, c, Sense::kMax);
  if (std::holds_alternative<LpInfeasible>(out)) return true;
  const auto& opt = std::get<LpOptimal>(out);  // the l1 ball keeps it bounded
  return strict ? opt.value < target.rhs : opt.value <= target.rhs;
}

Integer l1_radius_bound(const InequalitySystem& K) {
  const std::size_t n = K.dim();
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n, 0);
    e[i] = 1;
    SupportValue hi = support_value(K, e);
    if (hi.empty()) return 1;
    e[i] = -1;
    SupportValue lo = support_value(K, e);
    if (hi.kind == SupportValue::Kind::kUnbounded || lo.kind == SupportValue::Kind::kUnbounded) {
      throw UnboundedError("l1_radius_bound: set unbounded along coordinate " + std::to_string(i));
    }
    // lo.value = -min x_i
    Rational a = abs(lo.value), b = abs(hi.value);
    total += a < b ? b : a;
  }
  Integer R = ceil(total);
  return R < 1 ? Integer(1) : R;
}

}  // namespace branchproof
