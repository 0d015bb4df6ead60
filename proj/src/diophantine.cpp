// SPDX-License-Identifier: Apache-2.0
#include "branchproof/diophantine.hpp"

#include <stdexcept>

namespace branchproof {

DioApprox dirichlet_approx(const RatVector& a, const Integer& N) {
  if (is_zero(a)) throw PreconditionError("dirichlet_approx: zero vector");
  if (N < 1) throw PreconditionError("dirichlet_approx: N must be positive");
  const std::size_t n = a.size();
  const Rational inf = norm(a, Norm::kLinf);

  // u_i = p_i/q_i. Track s_i = N * (l p_i mod q_i) in [0, N q_i); the rounding
  // error of l u_i is below 1/N iff s_i < q_i or s_i > (N-1) q_i.
  struct Coord {
    Integer step, s, wrap, lo, hi;
  };
  std::vector<Coord> coords;
  std::vector<Rational> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = a[i] / inf;
    const Integer& q = u[i].get_den();
    if (q == 1) continue;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), u[i].get_num_mpz_t(), q.get_mpz_t());
    coords.push_back({N * r, 0, N * q, q, (N - 1) * q});
  }

  const Integer cap = pow(N, static_cast<unsigned long>(n));
  Integer l = 0;
  for (;;) {
    ++l;
    if (l > cap) throw std::logic_error("dirichlet_approx: no multiplier up to N^n");
    bool ok = true;
    for (Coord& c : coords) {
      c.s += c.step;
      if (c.s >= c.wrap) c.s -= c.wrap;
      if (ok && !(c.s < c.lo || c.s > c.hi)) ok = false;
    }
    if (ok) break;
  }

  IntVector a_prime(n);
  for (std::size_t i = 0; i < n; ++i) a_prime[i] = round_nearest(Rational(l) * u[i]);
  return {std::move(a_prime), l, N};
}

RhsClassification classify_rhs(const RatVector& a_hat, const Rational& b_hat, const DioApprox& approx,
                               const Integer& R, const Integer& N) {
  return classify_rhs(a_hat, b_hat, approx.a_prime, R, N);
}

RhsClassification classify_rhs(const RatVector& a_hat, const Rational& b_hat, const IntVector& a_prime,
                               const Integer& R, const Integer& N) {
  if (a_hat.size() != a_prime.size()) throw PreconditionError("classify_rhs: dimension mismatch");
  if (!(4 * R < N)) throw PreconditionError("classify_rhs: requires R/N < 1/4");
  const Rational A = norm(a_hat, Norm::kLinf);
  const Integer Ap = norm(a_prime, Norm::kLinf);
  if (sgn(Ap) == 0) throw PreconditionError("classify_rhs: zero approximation");
  RhsClassification out;
  out.alpha = A / Rational(Ap);
  if (out.alpha < 2) throw PreconditionError("classify_rhs: requires alpha >= 2");
  const Rational& alpha = out.alpha;
  const Rational rn(R, N);
  const Rational RA = Rational(R) * A;

  out.on_boundary = b_hat == RA || b_hat + 1 == -RA;
  if (b_hat >= RA) {
    out.kind = RhsClassification::Kind::kDominating;
    out.b_prime = R * Ap;
    return out;
  }
  if (b_hat + 1 <= -RA) {
    out.kind = RhsClassification::Kind::kDominating;
    out.b_prime = -R * Ap - 1;
    return out;
  }

  // (b_hat, b_hat+1) meets [alpha(b'-R/N), alpha(b'+R/N)] iff
  // b_hat/alpha - R/N < b' < (b_hat+1)/alpha + R/N; that window has width <= 1.
  const Rational lo = b_hat / alpha - rn;
  const Rational hi = (b_hat + 1) / alpha + rn;
  Integer cand = floor(lo) + 1;
  if (Rational(cand) < hi) {
    out.kind = RhsClassification::Kind::kNonDominating;
    out.b_prime = cand;
    out.on_boundary = out.on_boundary || Rational(cand + 1) == hi || Rational(cand - 1) == lo;
    if (abs(out.b_prime) > R * Ap) throw std::logic_error("classify_rhs: non-dominating b' out of range");
    return out;
  }
  out.on_boundary = out.on_boundary || Rational(cand) == hi || Rational(cand - 1) == lo;

  // Otherwise (b_hat, b_hat+1) sits inside (alpha(b'+R/N), alpha(b'+1-R/N)).
  out.kind = RhsClassification::Kind::kDominating;
  out.b_prime = floor(b_hat / alpha - rn);
  const Rational left = alpha * (Rational(out.b_prime) + rn);
  const Rational right = alpha * (Rational(out.b_prime) + 1 - rn);
  if (!(left <= b_hat && b_hat + 1 <= right)) {
    throw std::logic_error("classify_rhs: interval case split failed");
  }
  out.on_boundary = out.on_boundary || left == b_hat || right == b_hat + 1;
  if (out.b_prime < -R * Ap - 1 || out.b_prime > R * Ap) {
    throw std::logic_error("classify_rhs: dominating b' out of range");
  }
  return out;
}

}  // namespace branchproof
