// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "branchproof/lp.hpp"
#include "branchproof/proof.hpp"

namespace branchproof {

// .ineq: "n m" then m lines "a_1 ... a_n b".
std::string write_system(const InequalitySystem& K);
InequalitySystem parse_system(std::string_view text);

// .cuts: one normal per line.
std::string write_cuts(const std::vector<IntVector>& cuts);
std::vector<IntVector> parse_cuts(std::string_view text);

// .proof, branching: (node (a_1 ... a_n b) LEFT RIGHT) | (leaf) | (leaf (cert l_1 ... l_m))
std::string write_branching(const BranchNode& T);
BranchNode parse_branching(std::string_view text);

// .proof, enumerative: (enode (a_1 ... a_n) l u (child b SUBTREE)...) | (eleaf empty)
// | (eleaf gap (a_1 ... a_n) l u). A childless enode parses as a gap leaf.
std::string write_enumerative(const EnumNode& T);
EnumNode parse_enumerative(std::string_view text);

enum class ProofKind { kBranching, kEnumerative, kCuts };
ProofKind detect_proof_kind(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace branchproof
