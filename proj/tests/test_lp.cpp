// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "branchproof/lp.hpp"
#include "oracles.hpp"

using namespace branchproof;

namespace {

RatVector times(const RatVector& y, const InequalitySystem& P) {
  RatVector out(P.dim(), 0);
  for (std::size_t i = 0; i < P.num_rows(); ++i) {
    for (std::size_t j = 0; j < P.dim(); ++j) out[j] += y[i] * P.row(i)[j];
  }
  return out;
}

Rational dot_rhs(const RatVector& y, const InequalitySystem& P) {
  Rational s = 0;
  for (std::size_t i = 0; i < P.num_rows(); ++i) s += y[i] * P.rhs(i);
  return s;
}

InequalitySystem line_conflict() {
  InequalitySystem P(1);
  P.add_row(RatVector{1}, 0);
  P.add_row(RatVector{-1}, -1);
  return P;
}

}  // namespace

TEST(Lp, BoxMaximum) {
  LpOutcome out = lp_optimize(box(2, 0, 1), RatVector{1, 1}, Sense::kMax);
  ASSERT_TRUE(std::holds_alternative<LpOptimal>(out));
  const auto& opt = std::get<LpOptimal>(out);
  EXPECT_EQ(opt.value, 2);
  EXPECT_EQ(opt.point, (RatVector{1, 1}));
}

TEST(Lp, InfeasibleGivesFarkas) {
  LpOutcome out = lp_optimize(line_conflict(), RatVector{1}, Sense::kMax);
  ASSERT_TRUE(std::holds_alternative<LpInfeasible>(out));
  EXPECT_EQ(std::get<LpInfeasible>(out).cert.multipliers, (RatVector{1, 1}));
}

TEST(Lp, UnboundedRay) {
  InequalitySystem P(1);
  P.add_row(RatVector{-1}, 0);
  LpOutcome out = lp_optimize(P, RatVector{1}, Sense::kMax);
  ASSERT_TRUE(std::holds_alternative<LpUnbounded>(out));
  EXPECT_EQ(std::get<LpUnbounded>(out).ray, (RatVector{1}));
}

TEST(Lp, DimensionMismatchThrows) {
  EXPECT_THROW(lp_optimize(box(2, 0, 1), RatVector{1}, Sense::kMax), PreconditionError);
}

TEST(IsEmpty, Examples) {
  auto cert = is_empty(line_conflict());
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->multipliers, (RatVector{1, 1}));
  EXPECT_FALSE(is_empty(box(1, 0, 1)));
  InequalitySystem half(1);
  half.add_equality(RatVector{2}, 1);
  EXPECT_FALSE(is_empty(half));
}

TEST(ReduceCertificate, Examples) {
  InequalitySystem P = line_conflict();
  EXPECT_EQ(reduce_certificate(P, {{1, 1}}).multipliers, (RatVector{1, 1}));

  InequalitySystem Q(1);
  Q.add_row(RatVector{1}, 0);
  Q.add_row(RatVector{1}, 0);
  Q.add_row(RatVector{-1}, -1);
  Q.add_row(RatVector{-1}, -1);
  FarkasCertificate r = reduce_certificate(Q, {{1, 1, 1, 1}});
  EXPECT_EQ(r.support_size(), 2u);
  EXPECT_TRUE(check_farkas(Q, r.multipliers));

  FarkasCertificate scaled = reduce_certificate(Q, {{7, 7, 7, 7}});
  EXPECT_TRUE(check_farkas(Q, scaled.multipliers));
  EXPECT_THROW(reduce_certificate(Q, {{1, 0, 0, 0}}), PreconditionError);
}

TEST(CheckFarkas, RejectsBadMultipliers) {
  InequalitySystem P = line_conflict();
  EXPECT_FALSE(check_farkas(P, {1, 0}));
  EXPECT_FALSE(check_farkas(P, {-1, -1}));
  EXPECT_TRUE(check_farkas(P, {3, 3}));
}

TEST(Lp, DualityOnRandomSystems) {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 6;
    InequalitySystem P = oracle::random_system(rng, n, m, 3, 4);
    P.append(box(n, -5, 5));
    RatVector c = to_rational(oracle::random_int_vector(rng, n, 3, false));
    for (Sense s : {Sense::kMax, Sense::kMin}) {
      LpOutcome out = lp_optimize(P, c, s);
      if (auto* opt = std::get_if<LpOptimal>(&out)) {
        ++optimal;
        EXPECT_TRUE(P.contains(opt->point));
        EXPECT_EQ(dot(c, opt->point), opt->value);
        for (const Rational& y : opt->dual) EXPECT_GE(y, 0);
        RatVector target = s == Sense::kMax ? c : negate(c);
        EXPECT_EQ(times(opt->dual, P), target);
        EXPECT_EQ(dot_rhs(opt->dual, P), s == Sense::kMax ? opt->value : Rational(-opt->value));
      } else if (auto* inf = std::get_if<LpInfeasible>(&out)) {
        EXPECT_TRUE(check_farkas(P, inf->cert.multipliers));
      } else {
        ADD_FAILURE() << "boxed system reported unbounded";
      }
    }
  }
  EXPECT_GT(optimal, 50);
}

TEST(IsEmpty, AgreesWithFourierMotzkin) {
  std::mt19937_64 rng(99);
  int empties = 0;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 1 + rng() % 3, m = 1 + rng() % 6;
    InequalitySystem P = oracle::random_system(rng, n, m, 3, 3);
    auto cert = is_empty(P);
    ASSERT_EQ(cert.has_value(), oracle::fm_is_empty(P)) << "trial " << t;
    if (cert) {
      ++empties;
      EXPECT_TRUE(check_farkas(P, cert->multipliers));
      FarkasCertificate r = reduce_certificate(P, *cert);
      EXPECT_LE(r.support_size(), n + 1);
      EXPECT_TRUE(check_farkas(P, r.multipliers));
    }
  }
  EXPECT_GT(empties, 20);
}

TEST(System, AddEqualityAndTruncate) {
  InequalitySystem P(2);
  P.add_equality(IntVector{1, 1}, 1);
  EXPECT_EQ(P.num_rows(), 2u);
  EXPECT_TRUE(P.contains(RatVector{Rational(1, 2), Rational(1, 2)}));
  EXPECT_FALSE(P.contains(RatVector{0, 0}));
  P.truncate(1);
  EXPECT_TRUE(P.contains(RatVector{0, 0}));
}
