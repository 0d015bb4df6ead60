// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "branchproof/lp.hpp"

namespace branchproof {

// Binary node. Internal: disjunction a x <= b (left) or -a x <= -b-1 (right).
// Leaves may carry a Farkas certificate over K's rows followed by the path rows.
struct BranchNode {
  IntVector normal;
  Integer rhs;
  std::vector<BranchNode> children;  // empty or exactly two
  std::optional<RatVector> certificate;

  static BranchNode leaf();
  static BranchNode split(IntVector a, Integer b, BranchNode left, BranchNode right);

  bool is_leaf() const { return children.empty(); }
  const BranchNode& left() const { return children[0]; }
  const BranchNode& right() const { return children[1]; }
  BranchNode& left() { return children[0]; }
  BranchNode& right() { return children[1]; }
  bool operator==(const BranchNode& other) const = default;
};
using BranchingProof = BranchNode;

struct EnumNode;
struct EnumChild;

// Enumerative node. kBranch with no children is the integer-free ("gap") leaf.
struct EnumNode {
  enum class Kind { kBranch, kEmpty };
  Kind kind = Kind::kEmpty;
  IntVector direction;
  Rational lower, upper;
  std::vector<EnumChild> children;  // increasing values

  static EnumNode empty_leaf();
  static EnumNode gap(IntVector a, Rational l, Rational u);
  static EnumNode branch(IntVector a, Rational l, Rational u, std::vector<EnumChild> children);

  bool is_gap() const { return kind == Kind::kBranch && children.empty(); }
  bool operator==(const EnumNode& other) const;
};

struct EnumChild {
  Integer value;
  EnumNode node;
  bool operator==(const EnumChild& other) const = default;
};
using EnumerativeProof = EnumNode;

// Paths: branching uses 'L'/'R' per edge ("" is the root); enumerative uses "/b" per edge.
struct Failure {
  std::string path;
  std::string reason;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Failure> failures;  // sorted by path order of a left-first walk
};

struct LeafRelaxation {
  std::string path;
  InequalitySystem system;  // K's rows then the edge rows root-to-leaf
  const BranchNode* leaf = nullptr;
};
std::vector<LeafRelaxation> leaf_relaxations(const InequalitySystem& K, const BranchNode& T);

// One exact LP per leaf. The parallel version gives identical reports.
VerificationReport verify_branching_proof(const InequalitySystem& K, const BranchNode& T);
VerificationReport verify_branching_proof_serial(const InequalitySystem& K, const BranchNode& T);

// Arithmetic only. Throws PreconditionError if a leaf has no certificate.
bool verify_certified_proof(const InequalitySystem& K, const BranchNode& T);

// Throws PreconditionError naming the first nonempty leaf.
BranchNode certify(const InequalitySystem& K, const BranchNode& T);
BranchNode certify_serial(const InequalitySystem& K, const BranchNode& T);

struct CertificateInfo {
  std::string path;
  std::size_t nonzeros = 0;
  std::size_t bit_size = 0;
};
std::vector<CertificateInfo> certificate_summary(const BranchNode& T);

VerificationReport verify_enumerative_proof(const InequalitySystem& K, const EnumNode& T);

// Each child b becomes (a x <= b-1 | a x >= b) then (a x <= b | a x >= b+1).
BranchNode to_branching(const EnumNode& T);

struct ProofStats {
  std::size_t length = 0;
  std::size_t bit_size = 0;
  Integer max_coeff = 0;
};
ProofStats proof_stats(const BranchNode& T);
ProofStats proof_stats(const EnumNode& T);
ProofStats proof_stats(const std::vector<IntVector>& cuts);

}  // namespace branchproof
