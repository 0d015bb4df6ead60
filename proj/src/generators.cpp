// SPDX-License-Identifier: Apache-2.0
#include "branchproof/generators.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "branchproof/polytope.hpp"

namespace branchproof {

std::vector<std::size_t> TseitinInstance::incident(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].first == v || edges[e].second == v) out.push_back(e);
  }
  return out;
}

std::size_t TseitinInstance::max_degree() const {
  std::vector<std::size_t> deg(num_vertices, 0);
  for (const auto& [u, v] : edges) {
    if (u < num_vertices) ++deg[u];
    if (v < num_vertices) ++deg[v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void TseitinInstance::validate() const {
  if (num_vertices == 0 || edges.empty()) throw PreconditionError("tseitin: need at least one vertex and one edge");
  if (parity.size() != num_vertices) throw PreconditionError("tseitin: need one parity per vertex");
  int total = 0;
  for (int l : parity) {
    if (l != 0 && l != 1) throw PreconditionError("tseitin: parities must be 0 or 1");
    total += l;
  }
  if (total % 2 == 0) throw PreconditionError("tseitin: total charge is even, formula is satisfiable");
  for (const auto& [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) throw PreconditionError("tseitin: edge endpoint out of range");
    if (u == v) throw PreconditionError("tseitin: self-loop at vertex " + std::to_string(u));
  }
}

TseitinInstance parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  TseitinInstance inst;
  std::size_t m = 0;
  if (!(in >> inst.num_vertices >> m)) throw ParseError("graph: expected \"V E\" header");
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u = 0, v = 0;
    if (!(in >> u >> v)) throw ParseError("graph: expected edge " + std::to_string(e));
    inst.edges.emplace_back(u, v);
  }
  for (std::size_t v = 0; v < inst.num_vertices; ++v) {
    int l = 0;
    if (!(in >> l)) throw ParseError("graph: expected parity for vertex " + std::to_string(v));
    inst.parity.push_back(l);
  }
  std::string extra;
  if (in >> extra) throw ParseError("graph: trailing token '" + extra + "'");
  return inst;
}

std::string write_graph(const TseitinInstance& inst) {
  std::ostringstream out;
  out << inst.num_vertices << ' ' << inst.edges.size() << '\n';
  for (const auto& [u, v] : inst.edges) out << u << ' ' << v << '\n';
  for (std::size_t v = 0; v < inst.parity.size(); ++v) out << (v ? " " : "") << inst.parity[v];
  out << '\n';
  return out.str();
}

namespace {

TseitinInstance charged(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  TseitinInstance inst{n, std::move(edges), std::vector<int>(n, 0)};
  if (n > 0) inst.parity[0] = 1;
  return inst;
}

}  // namespace

TseitinInstance tseitin_cycle(std::size_t n) {
  if (n < 3) throw PreconditionError("tseitin_cycle: need n >= 3");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return charged(n, std::move(e));
}

TseitinInstance tseitin_complete(std::size_t n) {
  if (n < 2) throw PreconditionError("tseitin_complete: need n >= 2");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return charged(n, std::move(e));
}

TseitinInstance tseitin_grid(std::size_t rows, std::size_t cols) {
  if (rows * cols < 2) throw PreconditionError("tseitin_grid: need at least two vertices");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return charged(rows * cols, std::move(e));
}

InequalitySystem tseitin_polytope(const TseitinInstance& inst) {
  inst.validate();
  if (inst.max_degree() > 20) throw PreconditionError("tseitin_polytope: degree above 20");
  const std::size_t m = inst.edges.size();
  InequalitySystem K(m);
  for (std::size_t v = 0; v < inst.num_vertices; ++v) {
    std::vector<std::size_t> inc = inst.incident(v);
    const std::size_t d = inc.size();
    for (unsigned long sigma = 0; sigma < (1ul << d); ++sigma) {
      int ones = __builtin_popcountl(sigma);
      if (ones % 2 == inst.parity[v]) continue;
      // Excludes sigma: sum_{sigma=0} x + sum_{sigma=1} (1 - x) >= 1.
      RatVector row(m, 0);
      for (std::size_t i = 0; i < d; ++i) row[inc[i]] += (sigma >> i) & 1 ? 1 : -1;
      K.add_row(row, Rational(ones - 1));
    }
  }
  K.append(box(m, 0, 1));
  return K;
}

namespace {

class SpBuilder {
 public:
  explicit SpBuilder(const TseitinInstance& inst) : inst_(inst), m_(inst.edges.size()) {}

  EnumNode root(const InequalitySystem& K) {
    std::vector<std::size_t> all(inst_.num_vertices);
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    if (!is_empty(K)) return contradicting(K, all, 0);
    // Empty relaxation: branch once on trivial bounds so the proof still has a root.
    auto [w1, w2] = halves(all);
    IntVector f = between(w1, w2);
    if (is_zero(f)) f = unit(0);
    Integer top = 0;
    for (const Integer& c : f) top += c;
    std::vector<EnumChild> kids;
    for (Integer b = 0; b <= top; ++b) kids.push_back({b, EnumNode::empty_leaf()});
    return EnumNode::branch(f, 0, Rational(top), std::move(kids));
  }

 private:
  using Next = std::function<EnumNode(const InequalitySystem&, const Integer&)>;

  // Branch on f over K with LP bounds; a zero functional is fixed at 0 without a node.
  EnumNode branch(const InequalitySystem& K, const IntVector& f, const Next& next) {
    if (is_empty(K)) return EnumNode::empty_leaf();
    if (is_zero(f)) return next(K, 0);
    SupportValue hi = support_value(K, f);
    SupportValue lo = support_value(K, negate(f));
    Rational l = -lo.value, u = hi.value;
    std::vector<EnumChild> kids;
    for (Integer b = ceil(l); b <= floor(u); ++b) {
      InequalitySystem child = K;
      child.add_equality(f, Rational(b));
      kids.push_back({b, next(child, b)});
    }
    if (kids.empty()) return EnumNode::gap(f, l, u);
    return EnumNode::branch(f, l, u, std::move(kids));
  }

  // W contradicts: sum of charges in W differs in parity from c = x(delta(W)).
  EnumNode contradicting(const InequalitySystem& K, const std::vector<std::size_t>& W, const Integer& c) {
    if (W.size() == 1) return singleton(K, inst_.incident(W[0]), 0);
    auto [w1, w2] = halves(W);
    IntVector f1 = between(w1, w2);
    std::vector<std::size_t> rest = complement(W);
    IntVector outside = between(w1, rest);
    return branch(K, f1, [=, this](const InequalitySystem& K1, const Integer& b1) {
      auto pick = [=, this](const InequalitySystem& K2, const Integer& b2) {
        Integer c1 = b2;
        Integer c2 = c - b2 + 2 * b1;
        if (mpz_odd_p(Integer(charge(w1) - c1).get_mpz_t())) return contradicting(K2, w1, c1);
        return contradicting(K2, w2, c2);
      };
      if (is_zero(outside)) return pick(K1, b1);
      IntVector f2 = f1;
      for (std::size_t e = 0; e < m_; ++e) f2[e] += outside[e];
      return branch(K1, f2, pick);
    });
  }

  EnumNode singleton(const InequalitySystem& K, const std::vector<std::size_t>& inc, std::size_t i) {
    if (i == inc.size()) {
      if (!is_empty(K)) throw std::logic_error("tseitin_sp_refutation: singleton leaf is nonempty");
      return EnumNode::empty_leaf();
    }
    return branch(K, unit(inc[i]),
                  [=, this](const InequalitySystem& K1, const Integer&) { return singleton(K1, inc, i + 1); });
  }

  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> halves(const std::vector<std::size_t>& W) const {
    std::size_t cut = (W.size() + 1) / 2;
    return {{W.begin(), W.begin() + static_cast<long>(cut)}, {W.begin() + static_cast<long>(cut), W.end()}};
  }

  std::vector<std::size_t> complement(const std::vector<std::size_t>& W) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < inst_.num_vertices; ++v) {
      if (!std::binary_search(W.begin(), W.end(), v)) out.push_back(v);
    }
    return out;
  }

  // Indicator of the edges with one end in A and the other in B.
  IntVector between(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B) const {
    IntVector f(m_, 0);
    auto in = [](const std::vector<std::size_t>& S, std::size_t v) { return std::binary_search(S.begin(), S.end(), v); };
    for (std::size_t e = 0; e < m_; ++e) {
      auto [u, v] = inst_.edges[e];
      if ((in(A, u) && in(B, v)) || (in(A, v) && in(B, u))) f[e] = 1;
    }
    return f;
  }

  IntVector unit(std::size_t e) const {
    IntVector f(m_, 0);
    f[e] = 1;
    return f;
  }

  Integer charge(const std::vector<std::size_t>& W) const {
    Integer s = 0;
    for (std::size_t v : W) s += inst_.parity[v];
    return s;
  }

  const TseitinInstance& inst_;
  std::size_t m_;
};

}  // namespace

EnumNode tseitin_sp_refutation(const TseitinInstance& inst) {
  InequalitySystem K = tseitin_polytope(inst);
  return SpBuilder(inst).root(K);
}

InequalitySystem pn_polytope(std::size_t n) {
  if (n < 2 || n > 16) throw PreconditionError("pn_polytope: need 2 <= n <= 16");
  InequalitySystem K(n);
  for (unsigned long S = 0; S < (1ul << n); ++S) {
    RatVector row(n);
    long outside = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool in = (S >> i) & 1;
      row[i] = in ? -1 : 1;
      outside += in ? 0 : 1;
    }
    K.add_row(row, Rational(outside - 1));
  }
  K.append(box(n, 0, 1));
  return K;
}

InequalitySystem qn_polytope(std::size_t n) {
  if (n < 2 || n > 16) throw PreconditionError("qn_polytope: need 2 <= n <= 16");
  const std::size_t d = 2 * n;
  InequalitySystem K(d);
  RatVector sum(d, 0);
  for (std::size_t i = 0; i < n; ++i) sum[n + i] = 1;
  K.add_row(sum, Rational(static_cast<long>(n), 2) - 1);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector up(d, 0), down(d, 0);
    up[i] = 1;
    up[n + i] = -1;
    down[i] = -1;
    down[n + i] = -1;
    K.add_row(up, Rational(1, 2));
    K.add_row(down, Rational(-1, 2));
  }
  K.append(box(d, 0, 1));
  return K;
}

QnSplitReport qn_split_refutation(std::size_t n, const Rational& cut) {
  const InequalitySystem Q = qn_polytope(n);
  const std::size_t d = 2 * n;
  QnSplitReport rep;
  bool all = true;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector y(d, 0);
    y[n + i] = 1;
    for (bool left : {true, false}) {
      InequalitySystem side = Q;
      RatVector xi(d, 0);
      xi[i] = left ? 1 : -1;
      side.add_row(xi, Rational(left ? 0 : -1));
      LpOutcome out = lp_optimize(side, y, Sense::kMin);
      bool ok = std::holds_alternative<LpInfeasible>(out) ||
                (std::holds_alternative<LpOptimal>(out) && std::get<LpOptimal>(out).value >= cut);
      rep.sides.push_back({i, left, ok});
      all = all && ok;
    }
  }
  InequalitySystem aug = Q;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector row(d, 0);
    row[n + i] = -1;
    aug.add_row(row, -cut);
  }
  if (auto cert = is_empty(aug)) {
    rep.certificate = reduce_certificate(aug, *cert);
    rep.augmented_empty = check_farkas(aug, rep.certificate->multipliers);
  }
  rep.valid = all && rep.augmented_empty;
  return rep;
}

std::pair<InequalitySystem, BranchNode> thin_segment(const Integer& M) {
  if (M < 1) throw PreconditionError("thin_segment: need M >= 1");
  InequalitySystem K(2);
  K.add_row(IntVector{M, 1}, Rational(1, 2));
  K.add_row(IntVector{-M, -1}, Rational(-1, 2));
  K.add_row(IntVector{0, -1}, Rational(0));
  K.add_row(IntVector{0, 1}, Rational(2));
  return {K, BranchNode::split({M, 1}, 0, BranchNode::leaf(), BranchNode::leaf())};
}

BranchNode thin_segment_axis_proof() { return BranchNode::split({1, 0}, 0, BranchNode::leaf(), BranchNode::leaf()); }

}  // namespace branchproof
