// SPDX-License-Identifier: Apache-2.0
#include "branchproof/enum_to_cp.hpp"

#include <optional>
#include <stdexcept>

#include "branchproof/polytope.hpp"

namespace branchproof {

IntVector LiftedCut::lifted() const {
  IntVector out = base;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += multiplier * face[i];
  return out;
}

LiftedCut lift_cg_cut(const InequalitySystem& K, const IntVector& c, const IntVector& a) {
  if (c.size() != K.dim() || a.size() != K.dim()) throw PreconditionError("lift_cg_cut: dimension mismatch");
  LiftedCut out{a, c, 0};
  if (is_zero(c)) return out;
  SupportValue hc = support_value(K, c);
  if (hc.empty()) throw PreconditionError("lift_cg_cut: K is empty");
  if (!hc.finite()) throw UnboundedError("lift_cg_cut: K unbounded in direction c");
  if (!is_integer(hc.value)) throw PreconditionError("lift_cg_cut: h_K(c) is not an integer");
  const Integer beta = floor(hc.value);
  SupportValue hf = support_value(face(K, c), a);
  if (!hf.finite()) throw PreconditionError("lift_cg_cut: face has no finite support value for a");
  const Integer target = floor(hf.value);

  const Integer cap = pow(Integer(2), 64);
  Integer i = 0;
  while (i <= cap) {
    IntVector probe = a;
    for (std::size_t j = 0; j < probe.size(); ++j) probe[j] += i * c[j];
    SupportValue h = support_value(K, probe);
    if (!h.finite()) throw UnboundedError("lift_cg_cut: K unbounded in lifted direction");
    if (floor(h.value - Rational(i * beta)) == target) {
      out.multiplier = i;
      return out;
    }
    i = i == 0 ? Integer(1) : Integer(2 * i);
  }
  throw PreconditionError("lift_cg_cut: no multiplier up to 2^64; is K a polytope?");
}

std::vector<LiftedCut> lift_cg_sequence(const InequalitySystem& K, const IntVector& c,
                                        const std::vector<IntVector>& cuts) {
  std::vector<LiftedCut> out;
  if (cuts.empty()) return out;
  SupportValue hc = support_value(K, c);
  if (!hc.finite()) throw PreconditionError("lift_cg_sequence: K empty or unbounded in direction c");
  InequalitySystem Ki = K;
  for (const IntVector& a : cuts) {
    LiftedCut lc{a, c, 0};
    // F_i is K_i at the original level of c. Once it is empty any multiplier works; use 0.
    InequalitySystem Fi = Ki;
    Fi.add_equality(c, hc.value);
    if (!is_empty(Fi)) lc = lift_cg_cut(Ki, c, a);
    Ki = apply_cg(Ki, lc.lifted()).first;
    out.push_back(std::move(lc));
  }
  return out;
}

namespace {

std::vector<IntVector> convert(InequalitySystem K, const EnumNode& T, EnumToCpResult* top) {
  std::vector<IntVector> L;
  if (is_empty(K)) return L;
  if (T.kind == EnumNode::Kind::kEmpty) throw std::logic_error("enum_to_cp: empty leaf on a nonempty set");
  const IntVector& a = T.direction;
  K = apply_cg(K, a).first;
  L.push_back(a);
  std::optional<Integer> prev;
  for (;;) {
    SupportValue h = support_value(K, a);
    if (h.empty() || h.value < T.lower) break;
    if (!h.finite() || !is_integer(h.value)) throw std::logic_error("enum_to_cp: support value not integral");
    const Integer b = floor(h.value);
    if (prev && b >= *prev) throw std::logic_error("enum_to_cp: pushed values not decreasing");
    prev = b;
    const EnumNode* child = nullptr;
    for (const EnumChild& ch : T.children) {
      if (ch.value == b) child = &ch.node;
    }
    if (child == nullptr) throw std::logic_error("enum_to_cp: no child for " + to_string(b));

    std::vector<IntVector> sub = convert(face(K, a), *child, nullptr);
    std::vector<LiftedCut> lifted = lift_cg_sequence(K, a, sub);
    for (const LiftedCut& lc : lifted) {
      IntVector v = lc.lifted();
      K = apply_cg(K, v).first;
      L.push_back(std::move(v));
    }
    K = apply_cg(K, a).first;
    L.push_back(a);
    if (top != nullptr) {
      top->root_values.push_back(b);
      top->root_lifts.push_back(std::move(lifted));
    }
  }
  return L;
}

}  // namespace

EnumToCpResult enum_to_cp_detailed(const InequalitySystem& K, const EnumNode& T) {
  VerificationReport rep = verify_enumerative_proof(K, T);
  if (!rep.valid) {
    const Failure& f = rep.failures.front();
    throw PreconditionError("enum_to_cp: invalid enumerative proof at " + f.path + ": " + f.reason);
  }
  EnumToCpResult res;
  res.cuts = convert(K, T, &res);
  return res;
}

std::vector<IntVector> enum_to_cp(const InequalitySystem& K, const EnumNode& T) {
  return enum_to_cp_detailed(K, T).cuts;
}

}  // namespace branchproof
