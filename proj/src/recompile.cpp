// SPDX-License-Identifier: Apache-2.0
#include "branchproof/recompile.hpp"

#include <exception>
#include <stdexcept>
#include <utility>

#include "branchproof/diophantine.hpp"
#include "branchproof/polytope.hpp"

namespace branchproof {

Precision default_precision(std::size_t n, const Integer& R) {
  if (n == 0 || R < 1) throw PreconditionError("default_precision: need n >= 1 and R >= 1");
  Integer N = 10 * Integer(static_cast<unsigned long>(n)) * R;
  return {R, N, pow(N, n + 2)};
}

Integer coefficient_bound(std::size_t n, const Integer& R) {
  Integer base = 10 * Integer(static_cast<unsigned long>(n)) * R;
  return pow(base, (n + 2) * (n + 2));
}

namespace {

void compose(SubstitutionSequence& s, std::size_t n) {
  s.a_prime.assign(n, 0);
  s.b_prime = 0;
  for (const SubstitutionLevel& lvl : s.levels) {
    for (std::size_t i = 0; i < n; ++i) s.a_prime[i] = s.a_prime[i] * s.precision.M + lvl.a[i];
    s.b_prime = s.b_prime * s.precision.M + lvl.b;
  }
}

}  // namespace

LongToShortTrace long_to_short_trace(const IntVector& a, const Integer& b, const Precision& p) {
  const std::size_t n = a.size();
  if (n == 0 || is_zero(a)) throw PreconditionError("long_to_short: a must be nonzero");
  if (!(4 * p.R < p.N)) throw PreconditionError("long_to_short: requires R/N < 1/4");
  const Integer nn(static_cast<unsigned long>(n));
  const Rational guard(10 * nn * pow(p.N, n));

  LongToShortTrace out;
  SubstitutionSequence& s = out.sequence;
  s.precision = p;
  RatVector a_hat = to_rational(a);
  Rational b_hat(b);

  while (norm(a_hat, Norm::kLinf) > guard) {
    if (s.levels.size() > n) throw std::logic_error("long_to_short: more than n+1 levels");
    DioApprox approx = dirichlet_approx(a_hat, p.N);
    RhsClassification cls = classify_rhs(a_hat, b_hat, approx.a_prime, p.R, p.N);
    out.states.push_back({s.levels.size() + 1, a_hat, b_hat, cls.alpha});
    if (cls.dominating()) {
      s.levels.push_back({approx.a_prime, cls.b_prime, 0});
      out.dominated = true;
      compose(s, n);
      return out;
    }
    const Rational& alpha = cls.alpha;
    s.levels.push_back({approx.a_prime, cls.b_prime, 2 * alpha / Rational(5 * nn)});
    for (std::size_t i = 0; i < n; ++i) a_hat[i] -= alpha * approx.a_prime[i];
    b_hat -= alpha * cls.b_prime;
  }
  if (s.levels.size() > n) throw std::logic_error("long_to_short: more than n+1 levels");

  // Final level from the rounded multipliers.
  IntVector a_k = a;
  Integer b_k = b;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    Integer r = round_nearest(out.states[i].alpha);
    for (std::size_t c = 0; c < n; ++c) a_k[c] -= r * s.levels[i].a[c];
    b_k -= r * s.levels[i].b;
  }
  const Integer Ra = p.R * norm(a_k, Norm::kLinf);
  if (b_k <= -Ra - 1) {
    b_k = -Ra - 1;
  } else if (b_k >= Ra) {
    b_k = Ra;
  }
  s.levels.push_back({std::move(a_k), std::move(b_k), 0});
  compose(s, n);
  return out;
}

SubstitutionSequence long_to_short(const IntVector& a, const Integer& b, const Precision& p) {
  return long_to_short_trace(a, b, p).sequence;
}

SubstitutionSequence flip_sequence(const SubstitutionSequence& s) {
  SubstitutionSequence f;
  f.precision = s.precision;
  f.a_prime = negate(s.a_prime);
  f.b_prime = -s.b_prime - 1;
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const SubstitutionLevel& lvl = s.levels[i];
    const bool last = i + 1 == s.levels.size();
    f.levels.push_back({negate(lvl.a), last ? Integer(-lvl.b - 1) : Integer(-lvl.b), lvl.gamma});
  }
  return f;
}

SubstitutionSequence normalize_gammas(SubstitutionSequence s) {
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    if (s.levels[i].gamma > s.levels[i - 1].gamma) s.levels[i].gamma = s.levels[i - 1].gamma;
  }
  return s;
}

SequenceReport verify_substitution_sequence(const SubstitutionSequence& s, const IntVector& a, const Integer& b) {
  const std::size_t n = a.size();
  const Integer& R = s.precision.R;
  const Integer& N = s.precision.N;
  const Integer& M = s.precision.M;
  const std::size_t k = s.k();
  auto fail = [](int prop, std::size_t level, std::string detail) {
    return SequenceReport{false, prop, level, std::move(detail)};
  };

  // Property 1, plus the list shape.
  if (k < 1 || k > n + 1) return fail(1, 0, "k = " + std::to_string(k) + " outside [1, n+1]");
  if (s.a_prime.size() != n) return fail(1, 0, "a' has wrong dimension");
  if (sgn(s.levels.back().gamma) != 0) return fail(1, k, "gamma_k must be 0");
  const Integer NnMn1 = pow(N, n) * pow(M, n + 1);
  if (norm(s.a_prime, Norm::kLinf) > NnMn1) return fail(1, 0, "|a'|_inf exceeds N^n M^(n+1)");
  if (abs(s.b_prime) > R * NnMn1) return fail(1, 0, "|b'| exceeds R N^n M^(n+1)");
  const Integer level_bound = 11 * Integer(static_cast<unsigned long>(n)) * pow(N, n);
  for (std::size_t i = 0; i < k; ++i) {
    const SubstitutionLevel& lvl = s.levels[i];
    if (lvl.a.size() != n) return fail(1, i + 1, "a_i has wrong dimension");
    if (sgn(lvl.gamma) < 0) return fail(1, i + 1, "gamma_i negative");
    Integer ai = norm(lvl.a, Norm::kLinf);
    if (ai > level_bound) return fail(1, i + 1, "|a_i|_inf exceeds 11 n N^n");
    if (abs(lvl.b) > R * ai + 1) return fail(1, i + 1, "|b_i| exceeds R |a_i|_inf + 1");
  }

  InequalitySystem with_prime(n);
  with_prime.add_row(s.a_prime, Rational(s.b_prime));
  for (std::size_t l = 1; l <= k; ++l) {
    // with_prime holds a'x <= b' and a_i x = b_i for i < l.
    if (l < k) {
      const SubstitutionLevel& lvl = s.levels[l - 1];
      if (!implies_R(with_prime, {lvl.a, Rational(lvl.b + 1)}, R, true)) {
        return fail(2, l, "a'x <= b' and earlier equalities do not force a_l x < b_l + 1");
      }
    }
    if (!implies_R(with_prime, {a, Rational(b) + s.levels[l - 1].gamma}, R, false)) {
      return fail(3, l, "a'x <= b' and earlier equalities do not force a x <= b + gamma_l");
    }
    if (l < k) {
      const SubstitutionLevel& lvl = s.levels[l - 1];
      InequalitySystem prem(n);
      for (std::size_t i = 0; i + 1 < l; ++i) prem.add_equality(s.levels[i].a, Rational(s.levels[i].b));
      prem.add_row(lvl.a, Rational(lvl.b - 1));
      Rational target = Rational(b) - Rational(static_cast<unsigned long>(n)) * lvl.gamma;
      if (!implies_R(prem, {a, target}, R, false)) {
        return fail(4, l, "a_l x <= b_l - 1 and earlier equalities do not force a x <= b - n gamma_l");
      }
      with_prime.add_equality(lvl.a, Rational(lvl.b));
    }
  }
  return {};
}

bool check_generalized_certificate(const InequalitySystem& K, const InequalitySystem& P, const RatVector& lambda) {
  if (lambda.size() != P.num_rows()) return false;
  RatVector combo(P.dim(), 0);
  Rational shift = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (sgn(lambda[i]) < 0) return false;
    if (sgn(lambda[i]) == 0) continue;
    for (std::size_t j = 0; j < P.dim(); ++j) combo[j] += lambda[i] * P.row(i)[j];
    shift += lambda[i] * P.rhs(i);
  }
  LpOutcome out = lp_optimize(K, combo, Sense::kMin);
  const auto* opt = std::get_if<LpOptimal>(&out);
  return opt != nullptr && opt->value - shift > 0;
}

FarkasCertificate generalized_certificate(const InequalitySystem& K, const InequalitySystem& P) {
  if (K.dim() != P.dim()) throw PreconditionError("generalized_certificate: dimension mismatch");
  if (is_empty(K)) throw PreconditionError("generalized_certificate: K is empty");
  InequalitySystem both = K;
  both.append(P);
  std::optional<FarkasCertificate> cert = is_empty(both);
  if (!cert) throw PreconditionError("generalized_certificate: K and P intersect");
  FarkasCertificate reduced = reduce_certificate(both, *cert);
  FarkasCertificate out;
  out.multipliers.assign(reduced.multipliers.begin() + static_cast<long>(K.num_rows()), reduced.multipliers.end());
  if (!check_generalized_certificate(K, P, out.multipliers)) {
    throw std::logic_error("generalized_certificate: extracted multipliers fail the check");
  }
  return out;
}

namespace {

InequalitySystem shifted(const InequalitySystem& P, const RatVector& eps) {
  InequalitySystem out(P.dim());
  for (std::size_t j = 0; j < P.num_rows(); ++j) out.add_row(P.row(j), P.rhs(j) + eps[j]);
  return out;
}

bool meets(const InequalitySystem& K, const InequalitySystem& P) {
  InequalitySystem both = K;
  both.append(P);
  return !is_empty(both).has_value();
}

}  // namespace

RowSelection select_violated_row(const InequalitySystem& K, const InequalitySystem& P, const RatVector& eps,
                                 const FarkasCertificate& lambda) {
  const RatVector& lam = lambda.multipliers;
  if (eps.size() != P.num_rows()) throw PreconditionError("select_violated_row: eps has wrong length");
  if (lambda.support_size() > P.dim() + 1 || !check_generalized_certificate(K, P, lam)) {
    throw PreconditionError("select_violated_row: lambda is not a sparse generalized certificate");
  }
  std::size_t best = P.num_rows();
  Rational best_val;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    Rational v = eps[j] * lam[j];
    if (best == P.num_rows() || v > best_val) {
      best = j;
      best_val = v;
    }
  }
  if (best == P.num_rows() || sgn(best_val) <= 0) return EmptyWitness{};
  RatVector moved = eps;
  moved[best] -= Rational(static_cast<unsigned long>(P.dim() + 1)) * eps[best];
  if (meets(K, shifted(P, moved))) throw std::logic_error("select_violated_row: selected row fails the check");
  return best;
}

namespace {

struct FixupCut {
  IntVector normal;
  Integer level_rhs;  // rhs of the level equality on this side
};

// V ⊆ {a x = b}; true when V is empty.
bool subspace_inside(const InequalitySystem& V, const IntVector& a, const Integer& b) {
  SupportValue hi = support_value(V, a);
  if (hi.empty()) return true;
  if (!hi.finite() || hi.value != b) return false;
  SupportValue lo = support_value(V, negate(a));
  return lo.finite() && lo.value == -b;
}

void check_gen_invariants(const InequalitySystem& KP, const std::vector<FixupCut>& L, const InequalitySystem& V,
                          const InequalitySystem& P, const RatVector& eps,
                          const std::vector<SubstitutionSequence>& seqs, const std::vector<std::size_t>& p) {
  std::vector<IntVector> normals;
  for (const FixupCut& c : L) normals.push_back(c.normal);
  InequalitySystem cur = apply_cg_list(KP, normals);
  if (is_empty(cur)) return;
  for (std::size_t r = 0; r < V.num_rows(); ++r) {
    SupportValue h = support_value(cur, V.row(r));
    if (!h.finite() || h.value > V.rhs(r)) throw std::logic_error("gen_cg_cuts: current set leaves V");
  }
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    if (p[j] + 1 < seqs[j].k() && subspace_inside(V, seqs[j].levels[p[j]].a, seqs[j].levels[p[j]].b)) {
      throw std::logic_error("gen_cg_cuts: counter p(j) not maximal");
    }
    SupportValue h = support_value(cur, P.row(j));
    if (!h.finite() || h.value > P.rhs(j) + eps[j]) throw std::logic_error("gen_cg_cuts: current set leaves P_eps");
  }
}

std::vector<FixupCut> fixup_cuts(const InequalitySystem& K, const InequalitySystem& P,
                                 const InequalitySystem& P_prime, const std::vector<SubstitutionSequence>& seqs,
                                 const GenCutsOptions& options) {
  const std::size_t n = K.dim();
  const std::size_t m = P.num_rows();
  if (P.dim() != n || P_prime.dim() != n) throw PreconditionError("gen_cg_cuts: dimension mismatch");
  if (seqs.size() != m || P_prime.num_rows() != m) throw PreconditionError("gen_cg_cuts: need one sequence per row");
  for (std::size_t j = 0; j < m; ++j) {
    if (P_prime.row(j) != to_rational(seqs[j].a_prime) || P_prime.rhs(j) != Rational(seqs[j].b_prime)) {
      throw PreconditionError("gen_cg_cuts: P' row " + std::to_string(j) + " differs from its sequence");
    }
  }
  InequalitySystem KP = K;
  KP.append(P_prime);
  std::vector<FixupCut> L;
  if (is_empty(KP)) return L;

  const FarkasCertificate lambda = generalized_certificate(K, P);
  std::vector<std::size_t> p(m, 0);
  RatVector eps(m);
  for (std::size_t j = 0; j < m; ++j) eps[j] = seqs[j].levels[0].gamma;
  InequalitySystem V(n);

  for (std::size_t round = 0;; ++round) {
    if (options.check_invariants) check_gen_invariants(KP, L, V, P, eps, seqs, p);
    if (!meets(K, shifted(P, eps)) || is_empty(V)) break;
    if (round > n) throw std::logic_error("gen_cg_cuts: no termination after n+1 rounds");
    RowSelection sel = select_violated_row(K, P, eps, lambda);
    if (std::holds_alternative<EmptyWitness>(sel)) throw std::logic_error("gen_cg_cuts: witness on nonempty set");
    const std::size_t js = std::get<std::size_t>(sel);
    const SubstitutionLevel& lvl = seqs[js].levels[p[js]];
    L.push_back({lvl.a, lvl.b});
    L.push_back({negate(lvl.a), -lvl.b});
    V.add_equality(lvl.a, Rational(lvl.b));
    for (std::size_t j = 0; j < m; ++j) {
      while (p[j] + 1 < seqs[j].k() && subspace_inside(V, seqs[j].levels[p[j]].a, seqs[j].levels[p[j]].b)) ++p[j];
      eps[j] = seqs[j].levels[p[j]].gamma;
    }
  }
  if (options.check_invariants) {
    std::vector<IntVector> normals;
    for (const FixupCut& c : L) normals.push_back(c.normal);
    if (!is_empty(apply_cg_list(KP, normals))) throw std::logic_error("gen_cg_cuts: cut list leaves a point");
  }
  return L;
}

}  // namespace

std::vector<IntVector> gen_cg_cuts(const InequalitySystem& K, const InequalitySystem& P,
                                   const InequalitySystem& P_prime, const std::vector<SubstitutionSequence>& seqs,
                                   const GenCutsOptions& options) {
  std::vector<IntVector> out;
  for (FixupCut& c : fixup_cuts(K, P, P_prime, seqs, options)) out.push_back(std::move(c.normal));
  return out;
}

namespace {

void internal_nodes(BranchNode& v, std::vector<BranchNode*>& out) {
  if (v.is_leaf()) return;
  out.push_back(&v);
  internal_nodes(v.left(), out);
  internal_nodes(v.right(), out);
}

struct LeafJob {
  BranchNode* leaf = nullptr;  // in the output tree
  InequalitySystem P, P_prime;
  std::vector<SubstitutionSequence> seqs;
};

// Walks original and output trees together; `seq_of` is indexed in preorder of internal nodes.
void leaf_jobs(const BranchNode& orig, BranchNode& out, const std::vector<SubstitutionSequence>& seq_of,
               std::size_t& next, LeafJob& cur, std::vector<LeafJob>& jobs) {
  if (orig.is_leaf()) {
    jobs.push_back(cur);
    jobs.back().leaf = &out;
    return;
  }
  const SubstitutionSequence& s = seq_of[next++];
  const std::size_t rows = cur.P.num_rows();

  cur.P.add_row(orig.normal, Rational(orig.rhs));
  cur.P_prime.add_row(s.a_prime, Rational(s.b_prime));
  cur.seqs.push_back(s);
  leaf_jobs(orig.left(), out.left(), seq_of, next, cur, jobs);
  cur.P.truncate(rows);
  cur.P_prime.truncate(rows);
  cur.seqs.pop_back();

  SubstitutionSequence f = flip_sequence(s);
  cur.P.add_row(negate(orig.normal), Rational(-orig.rhs - 1));
  cur.P_prime.add_row(f.a_prime, Rational(f.b_prime));
  cur.seqs.push_back(std::move(f));
  leaf_jobs(orig.right(), out.right(), seq_of, next, cur, jobs);
  cur.P.truncate(rows);
  cur.P_prime.truncate(rows);
  cur.seqs.pop_back();
}

// Cut chain below a nonempty leaf: (a x <= t | a x >= t+1), continuing on the left.
BranchNode fixup_chain(const InequalitySystem& start, const std::vector<FixupCut>& L, bool check) {
  InequalitySystem cur = start;
  std::vector<std::pair<IntVector, Integer>> labels;
  for (const FixupCut& c : L) {
    SupportValue h = support_value(cur, c.normal);
    if (h.kind == SupportValue::Kind::kUnbounded) throw std::logic_error("recompile: unbounded leaf relaxation");
    if (h.empty()) {
      // Both sides already empty; keep the substitution level's rhs.
      labels.emplace_back(c.normal, c.level_rhs);
      continue;
    }
    Integer t = floor(h.value);
    if (check) {
      InequalitySystem right = cur;
      right.add_row(negate(c.normal), Rational(-t - 1));
      if (!is_empty(right)) throw std::logic_error("recompile: fix-up right child nonempty");
    }
    cur.add_row(c.normal, Rational(t));
    labels.emplace_back(c.normal, t);
  }
  if (!is_empty(cur)) throw std::logic_error("recompile: fix-up cuts leave the leaf nonempty");
  BranchNode node = BranchNode::leaf();
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    node = BranchNode::split(it->first, it->second, std::move(node), BranchNode::leaf());
  }
  return node;
}

bool inside_l1_ball(const InequalitySystem& K, const Integer& R) {
  const std::size_t n = K.dim();
  if (n > 16) return false;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    RatVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1 : 1;
    SupportValue h = support_value(K, s);
    if (h.kind == SupportValue::Kind::kUnbounded) return false;
    if (h.finite() && h.value > R) return false;
  }
  return true;
}

template <class F>
void run_jobs(std::size_t count, bool parallel, F&& body) {
  if (!parallel) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr err;
  const long total = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

RecompileResult recompile_detailed(const InequalitySystem& K, const BranchNode& T, const RecompileOptions& options) {
  VerificationReport rep = verify_branching_proof(K, T);
  if (!rep.valid) {
    throw PreconditionError("recompile: input proof invalid at leaf " + rep.failures.front().path);
  }
  RecompileResult res;
  res.proof = T;
  if (T.is_leaf()) {
    res.radius = options.radius.value_or(1);
    res.cuts_per_leaf.push_back(0);
    return res;
  }
  const std::size_t n = K.dim();
  if (options.radius) {
    if (*options.radius < 1) throw PreconditionError("recompile: radius must be positive");
    Integer bound = l1_radius_bound(K);
    if (*options.radius < bound && !inside_l1_ball(K, *options.radius)) {
      throw PreconditionError("recompile: K is not inside the l1 ball of radius " + to_string(*options.radius));
    }
    res.radius = *options.radius;
  } else {
    res.radius = l1_radius_bound(K);
  }
  const Precision prec = default_precision(n, res.radius);

  std::vector<BranchNode*> inner;
  internal_nodes(res.proof, inner);
  std::vector<SubstitutionSequence> seq_of(inner.size());
  run_jobs(inner.size(), options.parallel,
           [&](std::size_t i) { seq_of[i] = long_to_short(inner[i]->normal, inner[i]->rhs, prec); });
  for (std::size_t i = 0; i < inner.size(); ++i) {
    inner[i]->normal = seq_of[i].a_prime;
    inner[i]->rhs = seq_of[i].b_prime;
  }

  std::vector<LeafJob> jobs;
  LeafJob cur{nullptr, InequalitySystem(n), InequalitySystem(n), {}};
  std::size_t next = 0;
  leaf_jobs(T, res.proof, seq_of, next, cur, jobs);

  std::vector<BranchNode> chains(jobs.size());
  res.cuts_per_leaf.assign(jobs.size(), 0);
  GenCutsOptions gopt{options.check_invariants};
  run_jobs(jobs.size(), options.parallel, [&](std::size_t i) {
    InequalitySystem start = K;
    start.append(jobs[i].P_prime);
    if (is_empty(start)) {
      chains[i] = BranchNode::leaf();
      return;
    }
    std::vector<FixupCut> L = fixup_cuts(K, jobs[i].P, jobs[i].P_prime, jobs[i].seqs, gopt);
    res.cuts_per_leaf[i] = L.size();
    chains[i] = fixup_chain(start, L, options.check_invariants);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    *jobs[i].leaf = std::move(chains[i]);
    res.fixup_cuts += res.cuts_per_leaf[i];
  }
  return res;
}

BranchNode recompile(const InequalitySystem& K, const BranchNode& T, const RecompileOptions& options) {
  return recompile_detailed(K, T, options).proof;
}

}  // namespace branchproof
