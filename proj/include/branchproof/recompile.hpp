// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "branchproof/lp.hpp"
#include "branchproof/proof.hpp"

namespace branchproof {

struct Precision {
  Integer R, N, M;
};
// N = 10nR, M = N^(n+2).
Precision default_precision(std::size_t n, const Integer& R);

struct SubstitutionLevel {
  IntVector a;
  Integer b;
  Rational gamma;
  bool operator==(const SubstitutionLevel&) const = default;
};

struct SubstitutionSequence {
  IntVector a_prime;
  Integer b_prime;
  std::vector<SubstitutionLevel> levels;  // k = levels.size()
  Precision precision;

  std::size_t k() const { return levels.size(); }
  bool operator==(const SubstitutionSequence& o) const {
    return a_prime == o.a_prime && b_prime == o.b_prime && levels == o.levels && precision.R == o.precision.R &&
           precision.N == o.precision.N && precision.M == o.precision.M;
  }
};

// One loop iteration of the approximation: a_hat_j, b_hat_j and alpha_j.
struct ApproximationState {
  std::size_t j = 0;
  RatVector a_hat;
  Rational b_hat;
  Rational alpha;
};

struct LongToShortTrace {
  SubstitutionSequence sequence;
  std::vector<ApproximationState> states;
  bool dominated = false;  // left the loop through a dominating approximation
};

LongToShortTrace long_to_short_trace(const IntVector& a, const Integer& b, const Precision& p);
SubstitutionSequence long_to_short(const IntVector& a, const Integer& b, const Precision& p);

// Sequence for -a x <= -b-1.
SubstitutionSequence flip_sequence(const SubstitutionSequence& s);

// gamma_i <- min(gamma_1..gamma_i); keeps the sequence valid.
SubstitutionSequence normalize_gammas(SubstitutionSequence s);

struct SequenceReport {
  bool valid = true;
  int property = 0;       // first violated property, 1..4
  std::size_t level = 0;  // 1-based level l
  std::string detail;
};
SequenceReport verify_substitution_sequence(const SubstitutionSequence& s, const IntVector& a, const Integer& b);

// lambda >= 0 over P's rows with min_{x in K} lambda^T (A x - b) > 0, at most n+1 nonzeros.
FarkasCertificate generalized_certificate(const InequalitySystem& K, const InequalitySystem& P);
bool check_generalized_certificate(const InequalitySystem& K, const InequalitySystem& P, const RatVector& lambda);

struct EmptyWitness {};
using RowSelection = std::variant<EmptyWitness, std::size_t>;
RowSelection select_violated_row(const InequalitySystem& K, const InequalitySystem& P, const RatVector& eps,
                                 const FarkasCertificate& lambda);

struct GenCutsOptions {
  bool check_invariants = false;  // LP checks of the loop invariants every iteration
};
std::vector<IntVector> gen_cg_cuts(const InequalitySystem& K, const InequalitySystem& P,
                                   const InequalitySystem& P_prime, const std::vector<SubstitutionSequence>& seqs,
                                   const GenCutsOptions& options = {});

struct RecompileOptions {
  std::optional<Integer> radius;
  bool parallel = true;
  bool check_invariants = false;
};

struct RecompileResult {
  BranchNode proof;
  Integer radius;
  std::size_t fixup_cuts = 0;  // total over leaves
  std::vector<std::size_t> cuts_per_leaf;
};

RecompileResult recompile_detailed(const InequalitySystem& K, const BranchNode& T,
                                   const RecompileOptions& options = {});
BranchNode recompile(const InequalitySystem& K, const BranchNode& T, const RecompileOptions& options = {});

// (10nR)^((n+2)^2)
Integer coefficient_bound(std::size_t n, const Integer& R);

}  // namespace branchproof
