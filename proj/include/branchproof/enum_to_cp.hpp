// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "branchproof/lp.hpp"
#include "branchproof/proof.hpp"

namespace branchproof {

struct LiftedCut {
  IntVector base;  // a
  IntVector face;  // c
  Integer multiplier;

  IntVector lifted() const;  // a + multiplier * c
};

// Smallest i in 0, 1, 2, 4, ... with floor(h_K(a + i c) - i h_K(c)) = floor(h_F(a)), F = face(K, c).
// Needs K nonempty and bounded, h_K(c) integral and F nonempty.
LiftedCut lift_cg_cut(const InequalitySystem& K, const IntVector& c, const IntVector& a);

// Lifts cuts meant for face(K, c) one at a time against the running K_i and F_i.
std::vector<LiftedCut> lift_cg_sequence(const InequalitySystem& K, const IntVector& c,
                                        const std::vector<IntVector>& cuts);

struct EnumToCpResult {
  std::vector<IntVector> cuts;
  std::vector<Integer> root_values;             // b pushed by the root loop, in order
  std::vector<std::vector<LiftedCut>> root_lifts;  // one lifted sequence per root iteration
};

// Throws PreconditionError when T is not a valid enumerative proof for K.
EnumToCpResult enum_to_cp_detailed(const InequalitySystem& K, const EnumNode& T);
std::vector<IntVector> enum_to_cp(const InequalitySystem& K, const EnumNode& T);

}  // namespace branchproof
