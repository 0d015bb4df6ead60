// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "branchproof/lp.hpp"
#include "branchproof/proof.hpp"

namespace branchproof {

// Edge variables are indexed by position in `edges`. Parallel edges are allowed, loops are not.
struct TseitinInstance {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> parity;  // l_v in {0,1}

  std::vector<std::size_t> incident(std::size_t v) const;  // edge indices, increasing
  std::size_t max_degree() const;
  // Throws PreconditionError: loops, bad indices, parities not 0/1, even total charge, no edges.
  void validate() const;
};

// .graph: "V E", then E lines "u v", then one line of V parities.
TseitinInstance parse_graph(std::string_view text);
std::string write_graph(const TseitinInstance& inst);

// Charge on vertex 0 only.
TseitinInstance tseitin_cycle(std::size_t n);
TseitinInstance tseitin_complete(std::size_t n);
TseitinInstance tseitin_grid(std::size_t rows, std::size_t cols);

// One clause per parity-violating assignment at each vertex, then 0 <= x <= 1. Degree <= 20.
InequalitySystem tseitin_polytope(const TseitinInstance& inst);

// Enumerative refutation by halving the contradicting vertex set.
EnumNode tseitin_sp_refutation(const TseitinInstance& inst);

// Clause rows indexed by the mask of S (bit i set: x_i appears positively), then the box. 2 <= n <= 16.
InequalitySystem pn_polytope(std::size_t n);

// Variables (x_1..x_n, y_1..y_n). 2 <= n <= 16.
InequalitySystem qn_polytope(std::size_t n);

struct SplitSideCheck {
  std::size_t index = 0;
  bool left = true;  // x_i <= 0 side, else x_i >= 1
  bool valid = false;
};

struct QnSplitReport {
  bool valid = false;
  std::vector<SplitSideCheck> sides;
  bool augmented_empty = false;
  std::optional<FarkasCertificate> certificate;  // over Q_n's rows then the n cuts
};

// Checks y_i >= cut on both sides of x_i <= 0 | x_i >= 1, then that Q_n plus all cuts is empty.
QnSplitReport qn_split_refutation(std::size_t n, const Rational& cut = Rational(1, 2));

// {M x1 + x2 = 1/2, 0 <= x2 <= 2} and the proof (M x1 + x2 <= 0 | >= 1).
std::pair<InequalitySystem, BranchNode> thin_segment(const Integer& M);
// (x1 <= 0 | x1 >= 1): fails on the thin segment.
BranchNode thin_segment_axis_proof();

}  // namespace branchproof
