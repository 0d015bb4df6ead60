// SPDX-License-Identifier: Apache-2.0
// End-to-end acceptance run. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branchproof/diophantine.hpp"
#include "branchproof/enum_to_cp.hpp"
#include "branchproof/generators.hpp"
#include "branchproof/polytope.hpp"
#include "branchproof/recompile.hpp"
#include "oracles.hpp"

using namespace branchproof;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (pass) note << "first failure: " << why << "; ";
    pass = false;
  }
};

struct ThinRun {
  Integer M;
  InequalitySystem K;
  BranchNode T, recompiled;
  std::vector<std::size_t> cuts_per_leaf;
};
std::vector<ThinRun> g_thin;  // filled by criterion 1, reused by 4 and 8

void criterion1(Outcome& o) {
  const Integer bound = coefficient_bound(2, 3);
  for (const char* m : {"1000", "1000000", "1000000000"}) {
    ThinRun run;
    run.M = Integer(m);
    auto t0 = Clock::now();
    auto [K, T] = thin_segment(run.M);
    RecompileOptions opt;
    opt.radius = Integer(3);
    RecompileResult res = recompile_detailed(K, T, opt);
    bool valid = verify_branching_proof(K, res.proof).valid;
    double dt = seconds_since(t0);
    ProofStats st = proof_stats(res.proof);
    o.note << "M=" << m << ": |T'|=" << st.length << " max_coeff_bits=" << bit_length(st.max_coeff) << " "
           << dt << "s; ";
    if (!valid) o.fail("recompiled proof invalid for M=" + std::string(m));
    if (st.max_coeff > bound) o.fail("coefficient bound exceeded for M=" + std::string(m));
    if (st.length > 27) o.fail("|T'| > 27 for M=" + std::string(m));
    if (dt >= 5.0) o.fail("over 5 s for M=" + std::string(m));
    run.K = K;
    run.T = T;
    run.recompiled = res.proof;
    run.cuts_per_leaf = res.cuts_per_leaf;
    g_thin.push_back(std::move(run));
  }
}

void criterion2(Outcome& o) {
  std::mt19937_64 rng(20250101);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 50), dim(1, 4), prec(1, 40);
  int ok = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    RatVector a(n);
    bool nonzero = false;
    for (auto& x : a) {
      x = Rational(rng() % 4 == 0 ? 0 : num(rng), den(rng));
      x.canonicalize();
      nonzero = nonzero || sgn(x) != 0;
    }
    if (!nonzero) a[n - 1] = Rational(1, den(rng));
    const Integer N = prec(rng);
    DioApprox d = dirichlet_approx(a, N);
    bool good = d.multiplier >= 1 && d.multiplier <= pow(N, n) && norm(d.a_prime, Norm::kLinf) == d.multiplier;
    Rational scale = Rational(d.multiplier) / norm(a, Norm::kLinf);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(abs(scale * a[i] - d.a_prime[i]) < Rational(1) / N)) good = false;
      if (sgn(a[i]) == 0 && d.a_prime[i] != 0) good = false;
    }
    if (good) ++ok;
    else o.fail("vector " + to_string(a) + " N=" + to_string(N));
  }
  o.note << ok << "/500 exact";
}

void criterion3(Outcome& o) {
  std::mt19937_64 rng(7331);
  std::uniform_int_distribution<long> big(-1000000, 1000000), small(-30, 30);
  auto t0 = Clock::now();
  int ok = 0;
  std::size_t max_k = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const Integer R = 1 + rng() % 4;
    IntVector a(n);
    for (auto& x : a) x = rng() % 4 == 0 ? small(rng) : big(rng);
    if (is_zero(a)) a[0] = 1000000;
    Integer b = Integer(big(rng)) * R;
    if (rng() % 5 == 0) b = small(rng);
    SubstitutionSequence s = long_to_short(a, b, default_precision(n, R));
    SequenceReport r = verify_substitution_sequence(s, a, b);
    SequenceReport f = verify_substitution_sequence(flip_sequence(s), negate(a), -b - 1);
    max_k = std::max(max_k, s.k());
    if (r.valid && f.valid && s.k() <= n + 1) {
      ++ok;
    } else {
      o.fail("a=" + to_string(a) + " b=" + to_string(b) + " property " +
             std::to_string(r.valid ? f.property : r.property));
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 120.0) o.fail("over 2 min");
  o.note << ok << "/100 valid in both orientations, max k=" << max_k << ", " << dt << "s";
}

struct LeafCase {
  InequalitySystem K, P, P_prime;
  std::vector<SubstitutionSequence> seqs;
};

// Leaves of the proof (c x <= d | >= d+1) over (a x <= t | >= t+1) on a slab t < a x < t+1.
std::vector<LeafCase> random_leaf_cases(std::mt19937_64& rng, std::size_t want) {
  std::uniform_int_distribution<long> big(-200000, 200000), tiny(-2, 2);
  std::vector<LeafCase> out;
  while (out.size() < want) {
    const std::size_t n = 2 + rng() % 2;
    IntVector a(n);
    for (auto& x : a) x = rng() % 3 == 0 ? tiny(rng) : big(rng);
    if (norm(a, Norm::kLinf) < 1000) a[0] = 765432;
    const Integer t = tiny(rng);
    InequalitySystem K = box(n, -2, 2);
    K.add_row(a, Rational(t) + Rational(4, 5));
    K.add_row(negate(a), -(Rational(t) + Rational(1, 5)));
    if (is_empty(K)) continue;
    IntVector c = oracle::random_int_vector(rng, n, 1, true);
    Integer d = tiny(rng);
    const Integer R = l1_radius_bound(K);
    const Precision p = default_precision(n, R);
    SubstitutionSequence sa = long_to_short(a, t, p), sc = long_to_short(c, d, p);
    for (int outer = 0; outer < 2 && out.size() < want; ++outer) {
      for (int inner = 0; inner < 2 && out.size() < want; ++inner) {
        LeafCase lc{K, InequalitySystem(n), InequalitySystem(n), {}};
        SubstitutionSequence s1 = outer ? flip_sequence(sc) : sc, s2 = inner ? flip_sequence(sa) : sa;
        lc.P.add_row(outer ? negate(c) : c, Rational(outer ? Integer(-d - 1) : d));
        lc.P.add_row(inner ? negate(a) : a, Rational(inner ? Integer(-t - 1) : t));
        lc.P_prime.add_row(s1.a_prime, Rational(s1.b_prime));
        lc.P_prime.add_row(s2.a_prime, Rational(s2.b_prime));
        lc.seqs = {s1, s2};
        out.push_back(std::move(lc));
      }
    }
  }
  return out;
}

void criterion4(Outcome& o) {
  int checked = 0;
  std::size_t most = 0;
  GenCutsOptions opt{true};
  auto check = [&](const LeafCase& lc) {
    const std::size_t n = lc.K.dim();
    std::vector<IntVector> L = gen_cg_cuts(lc.K, lc.P, lc.P_prime, lc.seqs, opt);
    InequalitySystem KP = lc.K;
    KP.append(lc.P_prime);
    ++checked;
    most = std::max(most, L.size());
    if (L.size() > 2 * (n + 1)) o.fail("more than 2(n+1) cuts");
    if (!is_empty(apply_cg_list(KP, L))) o.fail("cut set nonempty");
  };
  for (const ThinRun& run : g_thin) {
    const Precision p = default_precision(2, 3);
    SubstitutionSequence s = long_to_short(run.T.normal, run.T.rhs, p);
    for (int side = 0; side < 2; ++side) {
      SubstitutionSequence q = side ? flip_sequence(s) : s;
      LeafCase lc{run.K, InequalitySystem(2), InequalitySystem(2), {q}};
      lc.P.add_row(side ? negate(run.T.normal) : run.T.normal, Rational(side ? Integer(-run.T.rhs - 1) : run.T.rhs));
      lc.P_prime.add_row(q.a_prime, Rational(q.b_prime));
      check(lc);
    }
  }
  std::mt19937_64 rng(4242);
  for (const LeafCase& lc : random_leaf_cases(rng, 50)) check(lc);
  o.note << checked << " leaves, most cuts " << most;
}

InequalitySystem random_integer_free(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    IntVector c = oracle::random_int_vector(rng, n, 2, true);
    long t = static_cast<long>(rng() % 5) - 2;
    InequalitySystem K = box(n, -3, 3);
    K.add_row(c, Rational(5 * t + 4, 5));
    K.add_row(negate(c), Rational(-(5 * t + 1), 5));
    K.append(oracle::random_system(rng, n, 1 + rng() % 2, 2, 6));
    if (!is_empty(K)) return K;
  }
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(5150);
  int ok = 0;
  std::size_t longest = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    InequalitySystem K = random_integer_free(rng, n);
    EnumNode T = oracle::random_enum_proof(rng, K, 1 + static_cast<int>(rng() % 2));
    std::vector<IntVector> L = enum_to_cp(K, T);
    const std::size_t len = proof_stats(T).length;
    longest = std::max(longest, len);
    if (L.size() <= 2 * len - 1 && is_empty(apply_cg_list(K, L))) ++ok;
    else o.fail("random proof " + std::to_string(t));
  }
  int tseitin = 0;
  for (const TseitinInstance& inst : {tseitin_cycle(3), tseitin_complete(2), tseitin_complete(4), tseitin_grid(3, 3)}) {
    InequalitySystem K = tseitin_polytope(inst);
    EnumNode T = tseitin_sp_refutation(inst);
    std::vector<IntVector> L = enum_to_cp(K, T);
    if (L.size() <= 2 * proof_stats(T).length - 1 && is_empty(apply_cg_list(K, L))) ++tseitin;
    else o.fail("tseitin instance with " + std::to_string(inst.edges.size()) + " edges");
  }
  o.note << ok << "/100 random (largest |T|=" << longest << "), " << tseitin << "/4 tseitin";
}

void criterion6(Outcome& o) {
  struct Named {
    const char* name;
    TseitinInstance inst;
  };
  for (const Named& g : {Named{"C3", tseitin_cycle(3)}, Named{"K2", tseitin_complete(2)},
                         Named{"K4", tseitin_complete(4)}, Named{"grid3x3", tseitin_grid(3, 3)}}) {
    auto t0 = Clock::now();
    InequalitySystem K = tseitin_polytope(g.inst);
    EnumNode T = tseitin_sp_refutation(g.inst);
    bool valid = verify_enumerative_proof(K, T).valid;
    std::vector<IntVector> L = enum_to_cp(K, T);
    bool converted = is_empty(apply_cg_list(K, L)).has_value();
    double dt = seconds_since(t0);
    o.note << g.name << ": |T|=" << proof_stats(T).length << " |L|=" << L.size() << " " << dt << "s; ";
    if (!valid) o.fail(std::string(g.name) + " refutation invalid");
    if (!converted) o.fail(std::string(g.name) + " conversion leaves a point");
    if (dt >= 300.0) o.fail(std::string(g.name) + " over 5 min");
  }
}

void criterion7(Outcome& o) {
  for (std::size_t n : {2u, 3u, 4u}) {
    InequalitySystem P = pn_polytope(n);
    if (!oracle::lattice_points(P, 0, 1).empty()) o.fail("P_" + std::to_string(n) + " has an integer point");
    for (unsigned long S = 0; S < (1ul << n); ++S) {
      InequalitySystem Q(n);
      for (std::size_t i = 0; i < P.num_rows(); ++i) {
        if (i != S) Q.add_row(P.row(i), P.rhs(i));
      }
      if (oracle::lattice_points(Q, 0, 1).size() != 1) o.fail("P_" + std::to_string(n) + " not critical");
    }
  }
  std::size_t sides = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    QnSplitReport r = qn_split_refutation(n);
    sides += r.sides.size();
    if (!r.valid || !r.certificate) o.fail("Q_" + std::to_string(n) + " split refutation");
  }
  o.note << "P_2..P_4 integer-free and critical; Q_2..Q_6: " << sides << " side LPs, all augmented systems certified";
}

void criterion8(Outcome& o) {
  std::size_t total = 0;
  for (const ThinRun& run : g_thin) {
    BranchNode C = certify(run.K, run.recompiled);
    if (!verify_certified_proof(run.K, C)) o.fail("certificate check failed for M=" + to_string(run.M));
    for (const CertificateInfo& info : certificate_summary(C)) {
      if (info.nonzeros > 3) o.fail("certificate with more than n+1 nonzeros");
      total += info.bit_size;
    }
  }
  o.note << "total certificate bit_size " << total;
}

void criterion9(Outcome& o) {
  std::mt19937_64 rng(9009);
  int agree = 0, empties = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 3, m = 1 + rng() % 6;
    InequalitySystem P = oracle::random_system(rng, n, m, 3, 3);
    bool lp = is_empty(P).has_value(), fm = oracle::fm_is_empty(P);
    if (lp == fm) ++agree;
    else o.fail("emptiness disagreement on trial " + std::to_string(t));
    empties += lp ? 1 : 0;
  }
  int kept = 0;
  for (int t = 0; t < 500; ++t) {
    InequalitySystem K = oracle::random_system(rng, 2, 1 + rng() % 4, 3, 6);
    K.append(box(2, -3, 3));
    std::vector<IntVector> L;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 5); ++i) L.push_back(oracle::random_int_vector(rng, 2, 3, true));
    InequalitySystem C = apply_cg_list(K, L);
    bool good = true;
    for (const IntVector& x : oracle::lattice_points(K, -3, 3)) good = good && oracle::contains(C, x);
    if (good) ++kept;
    else o.fail("CG removed an integer point on trial " + std::to_string(t));
  }
  o.note << agree << "/1000 emptiness agreements (" << empties << " empty), " << kept << "/500 cut lists sound";
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "CRITERION " << id << ' ' << (o.pass ? "PASS" : "FAIL") << " (" << seconds_since(t0) << "s) "
              << o.note.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return failed == 0 ? 0 : 1;
}
