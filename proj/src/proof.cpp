// SPDX-License-Identifier: Apache-2.0
#include "branchproof/proof.hpp"

#include <exception>
#include <utility>

#include "branchproof/polytope.hpp"

namespace branchproof {

BranchNode BranchNode::leaf() { return BranchNode{}; }

BranchNode BranchNode::split(IntVector a, Integer b, BranchNode left, BranchNode right) {
  BranchNode v;
  v.normal = std::move(a);
  v.rhs = std::move(b);
  v.children.reserve(2);
  v.children.push_back(std::move(left));
  v.children.push_back(std::move(right));
  return v;
}

EnumNode EnumNode::empty_leaf() { return EnumNode{}; }

EnumNode EnumNode::gap(IntVector a, Rational l, Rational u) { return branch(std::move(a), l, u, {}); }

EnumNode EnumNode::branch(IntVector a, Rational l, Rational u, std::vector<EnumChild> children) {
  EnumNode v;
  v.kind = Kind::kBranch;
  v.direction = std::move(a);
  v.lower = std::move(l);
  v.upper = std::move(u);
  v.children = std::move(children);
  return v;
}

bool EnumNode::operator==(const EnumNode& other) const {
  return kind == other.kind && direction == other.direction && lower == other.lower &&
         upper == other.upper && children == other.children;
}

namespace {

void collect_leaves(const BranchNode& v, InequalitySystem& sys, std::string& path,
                    std::vector<LeafRelaxation>& out) {
  if (v.is_leaf()) {
    out.push_back({path, sys, &v});
    return;
  }
  const std::size_t rows = sys.num_rows();
  sys.add_row(v.normal, Rational(v.rhs));
  path.push_back('L');
  collect_leaves(v.left(), sys, path, out);
  sys.truncate(rows);
  sys.add_row(negate(v.normal), Rational(-v.rhs - 1));
  path.back() = 'R';
  collect_leaves(v.right(), sys, path, out);
  sys.truncate(rows);
  path.pop_back();
}

std::string show_path(const std::string& path) { return path.empty() ? std::string("root") : path; }

}  // namespace

std::vector<LeafRelaxation> leaf_relaxations(const InequalitySystem& K, const BranchNode& T) {
  std::vector<LeafRelaxation> out;
  InequalitySystem sys = K;
  std::string path;
  collect_leaves(T, sys, path, out);
  return out;
}

namespace {

VerificationReport report_from(const std::vector<LeafRelaxation>& leaves, const std::vector<char>& nonempty) {
  VerificationReport rep;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!nonempty[i]) continue;
    rep.valid = false;
    rep.failures.push_back({show_path(leaves[i].path), "leaf relaxation is nonempty"});
  }
  return rep;
}

}  // namespace

VerificationReport verify_branching_proof_serial(const InequalitySystem& K, const BranchNode& T) {
  std::vector<LeafRelaxation> leaves = leaf_relaxations(K, T);
  std::vector<char> nonempty(leaves.size(), 0);
  for (std::size_t i = 0; i < leaves.size(); ++i) nonempty[i] = !is_empty(leaves[i].system).has_value();
  return report_from(leaves, nonempty);
}

VerificationReport verify_branching_proof(const InequalitySystem& K, const BranchNode& T) {
  std::vector<LeafRelaxation> leaves = leaf_relaxations(K, T);
  std::vector<char> nonempty(leaves.size(), 0);
  const long count = static_cast<long>(leaves.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      nonempty[i] = !is_empty(leaves[i].system).has_value();
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return report_from(leaves, nonempty);
}

bool verify_certified_proof(const InequalitySystem& K, const BranchNode& T) {
  for (const LeafRelaxation& leaf : leaf_relaxations(K, T)) {
    if (!leaf.leaf->certificate) {
      throw PreconditionError("verify_certified_proof: leaf " + show_path(leaf.path) + " has no certificate");
    }
    if (!check_farkas(leaf.system, *leaf.leaf->certificate)) return false;
  }
  return true;
}

namespace {

void attach(BranchNode& v, const std::string& path, std::size_t depth, RatVector cert) {
  if (depth == path.size()) {
    v.certificate = std::move(cert);
    return;
  }
  attach(path[depth] == 'L' ? v.left() : v.right(), path, depth + 1, std::move(cert));
}

BranchNode assemble(const BranchNode& T, const std::vector<LeafRelaxation>& leaves,
                    std::vector<std::optional<FarkasCertificate>>& certs) {
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!certs[i]) {
      throw PreconditionError("certify: leaf " + show_path(leaves[i].path) + " relaxation is nonempty");
    }
  }
  BranchNode out = T;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    attach(out, leaves[i].path, 0, std::move(certs[i]->multipliers));
  }
  return out;
}

std::optional<FarkasCertificate> leaf_certificate(const InequalitySystem& sys) {
  std::optional<FarkasCertificate> c = is_empty(sys);
  if (c) c = reduce_certificate(sys, *c);
  return c;
}

}  // namespace

BranchNode certify_serial(const InequalitySystem& K, const BranchNode& T) {
  std::vector<LeafRelaxation> leaves = leaf_relaxations(K, T);
  std::vector<std::optional<FarkasCertificate>> certs(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) certs[i] = leaf_certificate(leaves[i].system);
  return assemble(T, leaves, certs);
}

BranchNode certify(const InequalitySystem& K, const BranchNode& T) {
  std::vector<LeafRelaxation> leaves = leaf_relaxations(K, T);
  std::vector<std::optional<FarkasCertificate>> certs(leaves.size());
  const long count = static_cast<long>(leaves.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      certs[i] = leaf_certificate(leaves[i].system);
    } catch (...) {
#pragma omp critical
      err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return assemble(T, leaves, certs);
}

namespace {

void summarize(const BranchNode& v, std::string& path, std::vector<CertificateInfo>& out) {
  if (v.is_leaf()) {
    if (v.certificate) {
      FarkasCertificate c{*v.certificate};
      out.push_back({show_path(path), c.support_size(), bit_size(*v.certificate)});
    }
    return;
  }
  path.push_back('L');
  summarize(v.left(), path, out);
  path.back() = 'R';
  summarize(v.right(), path, out);
  path.pop_back();
}

}  // namespace

std::vector<CertificateInfo> certificate_summary(const BranchNode& T) {
  std::vector<CertificateInfo> out;
  std::string path;
  summarize(T, path, out);
  return out;
}

namespace {

void verify_enum(const EnumNode& v, InequalitySystem& sys, const std::string& path, VerificationReport& rep) {
  auto fail = [&](std::string reason) {
    rep.valid = false;
    rep.failures.push_back({path.empty() ? std::string("root") : path, std::move(reason)});
  };
  if (v.kind == EnumNode::Kind::kEmpty) {
    if (!is_empty(sys)) fail("leaf relaxation is nonempty");
    return;
  }
  if (v.direction.size() != sys.dim() || is_zero(v.direction)) {
    fail("direction must be a nonzero vector of dimension " + std::to_string(sys.dim()));
    return;
  }
  SupportValue hi = support_value(sys, v.direction);
  if (hi.kind == SupportValue::Kind::kUnbounded) {
    fail("direction unbounded above");
  } else if (hi.finite()) {
    SupportValue lo = support_value(sys, negate(v.direction));
    if (lo.kind == SupportValue::Kind::kUnbounded) {
      fail("direction unbounded below");
    } else if (hi.value > v.upper || -lo.value < v.lower) {
      fail("range [" + to_string(Rational(-lo.value)) + ", " + to_string(hi.value) + "] exceeds bounds [" +
           to_string(v.lower) + ", " + to_string(v.upper) + "]");
    }
  }
  const Integer first = ceil(v.lower), last = floor(v.upper);
  if (v.children.empty()) {
    if (first <= last) fail("no child for integer " + to_string(first) + " in bounds");
    return;
  }
  Integer expected = first;
  bool ordered = true;
  for (const EnumChild& c : v.children) {
    if (c.value < expected) {
      fail("child " + to_string(c.value) + " outside bounds or out of order");
      ordered = false;
      break;
    }
    if (c.value > expected) {
      fail("no child for integer " + to_string(expected) + " in bounds");
      ordered = false;
      break;
    }
    expected = c.value + 1;
  }
  if (ordered && expected <= last) fail("no child for integer " + to_string(expected) + " in bounds");
  if (ordered && v.children.back().value > last) {
    fail("child " + to_string(v.children.back().value) + " outside bounds");
  }
  for (const EnumChild& c : v.children) {
    InequalitySystem child = sys;
    child.add_equality(v.direction, Rational(c.value));
    verify_enum(c.node, child, path + "/" + to_string(c.value), rep);
  }
}

}  // namespace

VerificationReport verify_enumerative_proof(const InequalitySystem& K, const EnumNode& T) {
  VerificationReport rep;
  InequalitySystem sys = K;
  verify_enum(T, sys, "", rep);
  return rep;
}

BranchNode to_branching(const EnumNode& T) {
  if (T.kind == EnumNode::Kind::kEmpty) return BranchNode::leaf();
  if (T.children.empty()) {
    return BranchNode::split(T.direction, floor(T.upper), BranchNode::leaf(), BranchNode::leaf());
  }
  BranchNode tail = BranchNode::leaf();
  for (auto it = T.children.rbegin(); it != T.children.rend(); ++it) {
    BranchNode inner = BranchNode::split(T.direction, it->value, to_branching(it->node), std::move(tail));
    tail = BranchNode::split(T.direction, it->value - 1, BranchNode::leaf(), std::move(inner));
  }
  return tail;
}

namespace {

Integer label_coeff(const IntVector& a, const Integer& b) {
  Integer m = norm(a, Norm::kLinf);
  Integer ab = abs(b);
  return ab > m ? ab : m;
}

void branch_stats(const BranchNode& v, ProofStats& s) {
  ++s.length;
  if (v.is_leaf()) {
    if (v.certificate) s.bit_size += bit_size(*v.certificate);
    return;
  }
  const Integer rhs_right = -v.rhs - 1;
  s.bit_size += 2;  // two edges
  s.bit_size += bit_size(v.normal) + bit_size(v.rhs);         // node label
  s.bit_size += bit_size(v.normal) + bit_size(v.rhs);         // left edge
  s.bit_size += bit_size(negate(v.normal)) + bit_size(rhs_right);  // right edge
  Integer c = label_coeff(v.normal, v.rhs);
  Integer cr = label_coeff(v.normal, rhs_right);
  if (c > s.max_coeff) s.max_coeff = c;
  if (cr > s.max_coeff) s.max_coeff = cr;
  branch_stats(v.left(), s);
  branch_stats(v.right(), s);
}

void enum_stats(const EnumNode& v, ProofStats& s) {
  ++s.length;
  if (v.kind == EnumNode::Kind::kEmpty) return;
  s.bit_size += bit_size(v.direction) + bit_size(v.lower) + bit_size(v.upper);
  for (const EnumChild& c : v.children) {
    s.bit_size += 1 + bit_size(v.direction) + bit_size(c.value);
    Integer m = label_coeff(v.direction, c.value);
    if (m > s.max_coeff) s.max_coeff = m;
    enum_stats(c.node, s);
  }
}

}  // namespace

ProofStats proof_stats(const BranchNode& T) {
  ProofStats s;
  branch_stats(T, s);
  s.bit_size += s.length;
  return s;
}

ProofStats proof_stats(const EnumNode& T) {
  ProofStats s;
  enum_stats(T, s);
  s.bit_size += s.length;
  return s;
}

ProofStats proof_stats(const std::vector<IntVector>& cuts) {
  ProofStats s;
  s.length = cuts.size();
  for (const IntVector& a : cuts) {
    s.bit_size += bit_size(a);
    Integer m = norm(a, Norm::kLinf);
    if (m > s.max_coeff) s.max_coeff = m;
  }
  return s;
}

}  // namespace branchproof
