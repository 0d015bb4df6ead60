// SPDX-License-Identifier: Apache-2.0
#include "branchproof/lp.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace branchproof {

InequalitySystem::InequalitySystem(std::size_t dim) : dim_(dim) {}

InequalitySystem::InequalitySystem(std::size_t dim, RatMatrix rows, RatVector rhs)
    : dim_(dim), rows_(std::move(rows)), rhs_(std::move(rhs)) {
  if (rows_.size() != rhs_.size()) throw PreconditionError("InequalitySystem: row/rhs count mismatch");
  for (const RatVector& r : rows_) {
    if (r.size() != dim_) throw PreconditionError("InequalitySystem: row dimension mismatch");
  }
}

void InequalitySystem::add_row(RatVector a, Rational b) {
  if (a.size() != dim_) throw PreconditionError("add_row: dimension mismatch");
  // Callers may build mpq values from raw num/den pairs; gmp needs canonical form.
  for (Rational& x : a) x.canonicalize();
  b.canonicalize();
  rows_.push_back(std::move(a));
  rhs_.push_back(std::move(b));
}

void InequalitySystem::add_row(const IntVector& a, const Rational& b) { add_row(to_rational(a), b); }

void InequalitySystem::add_equality(const RatVector& a, const Rational& b) {
  add_row(a, b);
  add_row(negate(a), -b);
}

void InequalitySystem::add_equality(const IntVector& a, const Rational& b) {
  add_equality(to_rational(a), b);
}

void InequalitySystem::append(const InequalitySystem& other) {
  if (other.dim_ != dim_) throw PreconditionError("append: dimension mismatch");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  rhs_.insert(rhs_.end(), other.rhs_.begin(), other.rhs_.end());
}

void InequalitySystem::truncate(std::size_t rows) {
  if (rows < rows_.size()) {
    rows_.resize(rows);
    rhs_.resize(rows);
  }
}

bool InequalitySystem::contains(const RatVector& x) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (dot(rows_[i], x) > rhs_[i]) return false;
  }
  return true;
}

InequalitySystem box(std::size_t dim, const Rational& lo, const Rational& hi) {
  InequalitySystem K(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector e(dim, 0);
    e[i] = 1;
    K.add_row(e, hi);
    e[i] = -1;
    K.add_row(e, -lo);
  }
  return K;
}

std::size_t FarkasCertificate::support_size() const {
  return static_cast<std::size_t>(std::count_if(multipliers.begin(), multipliers.end(),
                                                [](const Rational& x) { return sgn(x) != 0; }));
}

bool check_farkas(const InequalitySystem& P, const RatVector& lambda) {
  if (lambda.size() != P.num_rows()) return false;
  RatVector combo(P.dim(), 0);
  Rational rhs = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (sgn(lambda[i]) < 0) return false;
    if (sgn(lambda[i]) == 0) continue;
    for (std::size_t j = 0; j < P.dim(); ++j) combo[j] += lambda[i] * P.row(i)[j];
    rhs += lambda[i] * P.rhs(i);
  }
  return is_zero(combo) && sgn(rhs) < 0;
}

namespace {

// Dense tableau for  max c^T z  s.t.  D z = beta, z >= 0.
// Column layout: x+ (n), x- (n), slacks (m), artificials (one per row with b_i < 0).
class Simplex {
 public:
  explicit Simplex(const InequalitySystem& P) : n_(P.dim()), m_(P.num_rows()) {
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (sgn(P.rhs(i)) < 0) ++n_art;
    }
    first_art_ = 2 * n_ + m_;
    cols_ = first_art_ + n_art;
    T_.assign(m_, RatVector(cols_, 0));
    beta_.resize(m_);
    basis_.resize(m_);
    init_col_.resize(m_);
    sigma_.resize(m_);
    std::size_t art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      int s = sgn(P.rhs(i)) < 0 ? -1 : 1;
      sigma_[i] = s;
      for (std::size_t j = 0; j < n_; ++j) {
        const Rational& a = P.row(i)[j];
        if (sgn(a) == 0) continue;
        T_[i][j] = s > 0 ? a : Rational(-a);
        T_[i][n_ + j] = -T_[i][j];
      }
      T_[i][2 * n_ + i] = s;
      beta_[i] = s > 0 ? P.rhs(i) : Rational(-P.rhs(i));
      if (s > 0) {
        basis_[i] = 2 * n_ + i;
      } else {
        T_[i][art] = 1;
        basis_[i] = art++;
      }
      init_col_[i] = basis_[i];
    }
    cost_.assign(cols_, 0);
    allowed_.assign(cols_, 1);
    for (std::size_t j = first_art_; j < cols_; ++j) allowed_[j] = 0;
  }

  bool has_artificials() const { return cols_ > first_art_; }

  // Phase 1: maximize -sum(artificials). Returns true iff feasible.
  bool phase1() {
    if (!has_artificials()) return true;
    std::fill(cost_.begin(), cost_.end(), 0);
    for (std::size_t j = first_art_; j < cols_; ++j) cost_[j] = -1;
    reset_objective();
    Status st = iterate();
    (void)st;  // bounded above by 0
    if (sgn(obj_) < 0) return false;
    drive_out_artificials();
    return true;
  }

  enum class Status { kOptimal, kUnbounded };

  Status phase2(const RatVector& c) {
    std::fill(cost_.begin(), cost_.end(), 0);
    for (std::size_t j = 0; j < n_; ++j) {
      cost_[j] = c[j];
      cost_[n_ + j] = -c[j];
    }
    reset_objective();
    return iterate();
  }

  // y_i = c_init - d_init, mapped back through the row scaling.
  RatVector duals() const {
    RatVector out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational y = cost_[init_col_[i]] - d_[init_col_[i]];
      out[i] = sigma_[i] > 0 ? y : Rational(-y);
    }
    return out;
  }

  RatVector point() const {
    RatVector z(cols_, 0);
    for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = beta_[i];
    return project(z);
  }

  RatVector ray() const {
    RatVector z(cols_, 0);
    z[unbounded_col_] = 1;
    for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = -T_[i][unbounded_col_];
    return project(z);
  }

  const Rational& objective() const { return obj_; }

 private:
  RatVector project(const RatVector& z) const {
    RatVector x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = z[j] - z[n_ + j];
    return x;
  }

  void reset_objective() {
    d_ = cost_;
    obj_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      obj_ += cb * beta_[i];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(T_[i][j]) != 0) d_[j] -= cb * T_[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    RatVector& pr = T_[r];
    if (pr[col] != 1) {
      Rational inv = 1 / pr[col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(pr[j]) != 0) pr[j] *= inv;
      }
      beta_[r] *= inv;
    }
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn(pr[j]) != 0) nz_.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(T_[i][col]) == 0) continue;
      Rational f = T_[i][col];
      RatVector& row = T_[i];
      for (std::size_t j : nz_) row[j] -= f * pr[j];
      beta_[i] -= f * beta_[r];
    }
    if (sgn(d_[col]) != 0) {
      Rational f = d_[col];
      for (std::size_t j : nz_) d_[j] -= f * pr[j];
      obj_ += f * beta_[r];
    }
    basis_[r] = col;
  }

  Status iterate() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed_[j] && sgn(d_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return Status::kOptimal;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(T_[i][enter]) <= 0) continue;
        Rational ratio = beta_[i] / T_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) {
        unbounded_col_ = enter;
        return Status::kUnbounded;
      }
      pivot(leave, enter);
    }
  }

  // Artificials still basic at level zero; redundant rows keep theirs.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (sgn(T_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t n_, m_, cols_ = 0, first_art_ = 0;
  std::vector<RatVector> T_;
  RatVector beta_;
  std::vector<std::size_t> basis_, init_col_;
  std::vector<int> sigma_;
  RatVector cost_, d_;
  Rational obj_;
  std::vector<char> allowed_;
  std::vector<std::size_t> nz_;
  std::size_t unbounded_col_ = 0;
};

}  // namespace

LpOutcome lp_optimize(const InequalitySystem& P, const RatVector& c, Sense sense) {
  if (c.size() != P.dim()) throw PreconditionError("lp_optimize: objective dimension mismatch");
  Simplex s(P);
  if (!s.phase1()) {
    FarkasCertificate cert{s.duals()};
    return LpInfeasible{std::move(cert)};
  }
  RatVector obj = sense == Sense::kMax ? c : negate(c);
  if (s.phase2(obj) == Simplex::Status::kUnbounded) return LpUnbounded{s.ray()};
  Rational value = sense == Sense::kMax ? s.objective() : Rational(-s.objective());
  return LpOptimal{value, s.point(), s.duals()};
}

std::optional<FarkasCertificate> is_empty(const InequalitySystem& P) {
  Simplex s(P);
  if (s.phase1()) return std::nullopt;
  return FarkasCertificate{s.duals()};
}

namespace {

// First nonzero kernel vector of the (n+1) x |cols| matrix [a_i; b_i], or empty.
RatVector kernel_vector(const InequalitySystem& P, const std::vector<std::size_t>& cols) {
  const std::size_t rows = P.dim() + 1;
  const std::size_t k = cols.size();
  std::vector<RatVector> M(rows, RatVector(k));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < P.dim(); ++r) M[r][c] = P.row(cols[c])[r];
    M[P.dim()][c] = P.rhs(cols[c]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(M[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    Rational inv = 1 / M[r][c];
    for (std::size_t j = c; j < k; ++j) M[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(M[i][c]) == 0) continue;
      Rational f = M[i][c];
      for (std::size_t j = c; j < k; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == k) return {};
  std::size_t free_col = 0;
  for (std::size_t c = 0, p = 0; c < k; ++c) {
    if (p < pivot_col.size() && pivot_col[p] == c) {
      ++p;
      continue;
    }
    free_col = c;
    break;
  }
  RatVector mu(k, 0);
  mu[free_col] = 1;
  for (std::size_t i = 0; i < pivot_col.size(); ++i) mu[pivot_col[i]] = -M[i][free_col];
  return mu;
}

RatVector primitive_integer(RatVector v) {
  Integer l = 1, g = 0;
  for (const Rational& x : v) {
    if (sgn(x) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  for (Rational& x : v) x *= l;
  for (const Rational& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  if (sgn(g) != 0) {
    for (Rational& x : v) x /= g;
  }
  return v;
}

}  // namespace

FarkasCertificate reduce_certificate(const InequalitySystem& P, const FarkasCertificate& lambda) {
  if (!check_farkas(P, lambda.multipliers)) {
    throw PreconditionError("reduce_certificate: input is not a Farkas certificate");
  }
  RatVector lam = lambda.multipliers;
  for (;;) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      if (sgn(lam[i]) != 0) support.push_back(i);
    }
    RatVector mu = kernel_vector(P, support);
    if (mu.empty()) break;
    if (std::none_of(mu.begin(), mu.end(), [](const Rational& x) { return sgn(x) > 0; })) {
      for (Rational& x : mu) x = -x;
    }
    // Largest step keeping lam >= 0; the blocking coordinate drops out.
    std::size_t block = support.size();
    Rational t;
    for (std::size_t c = 0; c < support.size(); ++c) {
      if (sgn(mu[c]) <= 0) continue;
      Rational ratio = lam[support[c]] / mu[c];
      if (block == support.size() || ratio < t) {
        block = c;
        t = ratio;
      }
    }
    for (std::size_t c = 0; c < support.size(); ++c) lam[support[c]] -= t * mu[c];
    lam[support[block]] = 0;
  }
  FarkasCertificate out{primitive_integer(std::move(lam))};
  if (!check_farkas(P, out.multipliers)) {
    throw std::logic_error("reduce_certificate: reduction broke the certificate");
  }
  return out;
}

}  // namespace branchproof
