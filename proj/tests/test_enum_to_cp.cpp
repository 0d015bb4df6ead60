// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "branchproof/enum_to_cp.hpp"
#include "branchproof/generators.hpp"
#include "branchproof/polytope.hpp"
#include "oracles.hpp"

using namespace branchproof;

namespace {

InequalitySystem segment_half() {
  InequalitySystem K = box(2, 0, 1);
  K.add_equality(RatVector{0, 1}, Rational(1, 2));
  return K;
}

EnumNode segment_proof() {
  EnumNode g = EnumNode::gap({0, 1}, Rational(1, 2), Rational(1, 2));
  return EnumNode::branch({1, 0}, 0, 1, {{0, g}, {1, g}});
}

}  // namespace

TEST(LiftCgCut, Examples) {
  LiftedCut a = lift_cg_cut(segment_half(), {1, 0}, {0, 1});
  EXPECT_EQ(a.multiplier, 0);

  InequalitySystem diag(2);
  diag.add_equality(RatVector{1, -1}, 0);
  diag.append(box(2, 0, 1));
  LiftedCut b = lift_cg_cut(diag, {1, 0}, {0, -1});
  EXPECT_EQ(b.multiplier, 1);
  EXPECT_EQ(b.lifted(), (IntVector{1, -1}));

  LiftedCut c = lift_cg_cut(segment_half(), {0, 0}, {1, 1});
  EXPECT_EQ(c.multiplier, 0);
  EXPECT_EQ(c.lifted(), (IntVector{1, 1}));
}

TEST(LiftCgCut, Preconditions) {
  EXPECT_THROW(lift_cg_cut(segment_half(), {0, 1}, {1, 0}), PreconditionError);  // h_K(c) = 1/2
  InequalitySystem E(2);
  E.add_row(RatVector{0, 0}, -1);
  EXPECT_THROW(lift_cg_cut(E, {1, 0}, {0, 1}), PreconditionError);
}

TEST(LiftCgSequence, Examples) {
  EXPECT_TRUE(lift_cg_sequence(segment_half(), {1, 0}, {}).empty());
  auto one = lift_cg_sequence(segment_half(), {1, 0}, {{0, 1}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].multiplier, lift_cg_cut(segment_half(), {1, 0}, {0, 1}).multiplier);
}

// CG(K, lifted) ∩ {c x = h_K(c)} = CG(F, cuts) after every prefix, checked on lattice-free small data.
TEST(LiftCgSequence, SetEqualityOnRandomFaces) {
  std::mt19937_64 rng(61);
  int done = 0;
  for (int t = 0; t < 200 && done < 40; ++t) {
    InequalitySystem K = oracle::random_system(rng, 2, 3, 3, 5);
    K.append(box(2, -3, 3));
    if (is_empty(K)) continue;
    IntVector c = oracle::random_int_vector(rng, 2, 2, true);
    K = apply_cg(K, c).first;  // makes h_K(c) integral
    if (is_empty(K)) continue;
    ++done;
    Rational level = support_value(K, c).value;
    std::vector<IntVector> cuts;
    for (int i = 0; i < 3; ++i) cuts.push_back(oracle::random_int_vector(rng, 2, 3, true));
    auto lifted = lift_cg_sequence(K, c, cuts);
    InequalitySystem Ki = K, Fi = face(K, c);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      Ki = apply_cg(Ki, lifted[i].lifted()).first;
      Fi = apply_cg(Fi, cuts[i]).first;
      InequalitySystem lhs = Ki;
      lhs.add_equality(c, level);
      bool le = is_empty(lhs).has_value(), fe = is_empty(Fi).has_value();
      ASSERT_EQ(le, fe) << "trial " << t << " prefix " << i;
      if (le) continue;
      for (const IntVector& dir : {IntVector{1, 0}, IntVector{-1, 0}, IntVector{0, 1}, IntVector{0, -1}}) {
        EXPECT_EQ(support_value(lhs, dir).value, support_value(Fi, dir).value);
      }
    }
  }
  EXPECT_GE(done, 20);
}

TEST(EnumToCp, Examples) {
  InequalitySystem E(1);
  E.add_row(RatVector{1}, 0);
  E.add_row(RatVector{-1}, -1);
  EXPECT_TRUE(enum_to_cp(E, EnumNode::empty_leaf()).empty());

  InequalitySystem half = box(1, 0, 1);
  half.add_equality(RatVector{2}, 1);
  EXPECT_EQ(enum_to_cp(half, EnumNode::gap({1}, Rational(1, 2), Rational(1, 2))), (std::vector<IntVector>{{1}}));

  EnumToCpResult r = enum_to_cp_detailed(segment_half(), segment_proof());
  EXPECT_EQ(r.cuts, (std::vector<IntVector>{{1, 0}, {0, 1}, {1, 0}}));
  ASSERT_EQ(r.root_values.size(), 1u);
  EXPECT_EQ(r.root_values[0], 1);
  ASSERT_EQ(r.root_lifts.size(), 1u);
  ASSERT_EQ(r.root_lifts[0].size(), 1u);
  EXPECT_EQ(r.root_lifts[0][0].multiplier, 0);
  EXPECT_TRUE(is_empty(apply_cg_list(segment_half(), r.cuts)));
}

TEST(EnumToCp, InvalidProofRejected) {
  InequalitySystem half = box(1, 0, 1);
  half.add_equality(RatVector{2}, 1);
  EXPECT_THROW(enum_to_cp(half, EnumNode::gap({1}, 0, 1)), PreconditionError);
}

TEST(EnumToCp, RandomProofsBoundAndPrefixSoundness) {
  std::mt19937_64 rng(71);
  int done = 0;
  for (int t = 0; t < 400 && done < 40; ++t) {
    const std::size_t n = 2;
    InequalitySystem K = oracle::random_system(rng, n, 4, 3, 6);
    K.append(box(n, -3, 3));
    if (!oracle::lattice_points(K, -3, 3).empty()) continue;
    ++done;
    EnumNode T = oracle::random_enum_proof(rng, K, 1);
    EnumToCpResult r = enum_to_cp_detailed(K, T);
    EXPECT_LE(r.cuts.size(), 2 * proof_stats(T).length - 1);
    EXPECT_TRUE(is_empty(apply_cg_list(K, r.cuts)));
    for (std::size_t i = 1; i < r.root_values.size(); ++i) EXPECT_LT(r.root_values[i], r.root_values[i - 1]);
    for (const Integer& b : r.root_values) {
      EXPECT_GE(Rational(b), T.lower);
      EXPECT_LE(Rational(b), T.upper);
    }
  }
  EXPECT_GE(done, 20);
}

// K itself has no lattice points, so replay each prefix on the full box, which has 49.
TEST(EnumToCp, PrefixKeepsLatticePoints) {
  std::mt19937_64 rng(72);
  int done = 0;
  for (int t = 0; t < 400 && done < 20; ++t) {
    InequalitySystem K = oracle::random_system(rng, 2, 4, 3, 6);
    K.append(box(2, -3, 3));
    if (!oracle::lattice_points(K, -3, 3).empty()) continue;
    ++done;
    std::vector<IntVector> L = enum_to_cp(K, oracle::random_enum_proof(rng, K, 1));
    InequalitySystem big = box(2, -3, 3);
    for (std::size_t p = 0; p <= L.size(); ++p) {
      std::vector<IntVector> prefix(L.begin(), L.begin() + static_cast<long>(p));
      InequalitySystem C = apply_cg_list(big, prefix);
      for (const IntVector& x : oracle::lattice_points(big, -3, 3)) EXPECT_TRUE(oracle::contains(C, x));
    }
  }
}

TEST(EnumToCp, TseitinSmall) {
  for (const TseitinInstance& inst : {tseitin_cycle(3), tseitin_complete(2), tseitin_complete(4)}) {
    InequalitySystem K = tseitin_polytope(inst);
    EnumNode T = tseitin_sp_refutation(inst);
    std::vector<IntVector> L = enum_to_cp(K, T);
    EXPECT_LE(L.size(), 2 * proof_stats(T).length - 1);
    EXPECT_TRUE(is_empty(apply_cg_list(K, L)));
  }
}
