// SPDX-License-Identifier: Apache-2.0
// branchproof: generate, recompile, convert and verify proofs of integer infeasibility.
//
// Commands taking SYSTEM ARTIFACT also accept a single "-": a bundle on stdin made of
// an .ineq system followed by the artifact. Without -o, artifacts go to stdout (as a
// bundle where a system is involved) and the report goes to stderr.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "branchproof/enum_to_cp.hpp"
#include "branchproof/generators.hpp"
#include "branchproof/polytope.hpp"
#include "branchproof/proof_io.hpp"
#include "branchproof/recompile.hpp"

namespace bp = branchproof;

namespace {

enum Exit { kValid = 0, kInvalid = 1, kError = 2 };

struct Inputs {
  bp::InequalitySystem system{1};
  std::string artifact;
};

// Splits "n m" plus m rows off the front of a bundle.
Inputs split_bundle(const std::string& text) {
  std::istringstream in(text);
  std::string line, head;
  std::size_t want = 0;
  bool have_header = false;
  std::ostringstream rest;
  while (std::getline(in, line)) {
    if (!have_header || want > 0) {
      head += line + '\n';
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#') {
        continue;
      }
      if (!have_header) {
        std::istringstream hs(line);
        std::size_t n = 0;
        if (!(hs >> n >> want)) throw bp::ParseError("bundle: expected an .ineq header");
        have_header = true;
      } else {
        --want;
      }
      continue;
    }
    rest << line << '\n';
  }
  if (!have_header || want > 0) throw bp::ParseError("bundle: truncated system");
  return {bp::parse_system(head), rest.str()};
}

std::string slurp_stdin() {
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

Inputs load(const std::string& system_path, const std::string& artifact_path) {
  if (system_path == "-") return split_bundle(slurp_stdin());
  if (artifact_path.empty()) throw bp::ParseError("missing artifact path");
  Inputs in{bp::parse_system(bp::read_file(system_path)), {}};
  in.artifact = artifact_path == "-" ? slurp_stdin() : bp::read_file(artifact_path);
  return in;
}

// Where the report goes: stdout unless stdout carries an artifact.
struct Output {
  std::string prefix;  // -o value
  std::ostream* report = &std::cout;

  explicit Output(std::string o) : prefix(std::move(o)) {
    if (prefix.empty()) report = &std::cerr;
  }
  void emit(const std::string& path, const std::string& content) {
    if (prefix.empty()) {
      std::cout << content;
    } else {
      bp::write_file(path, content);
      *report << "wrote " << path << '\n';
    }
  }
};

void print_stats(std::ostream& os, const bp::ProofStats& s) {
  os << "length " << s.length << '\n';
  os << "bit_size " << s.bit_size << '\n';
  os << "max_coeff " << bp::to_string(s.max_coeff) << '\n';
}

int report_verification(std::ostream& os, const std::string& kind, const bp::VerificationReport& rep,
                        std::size_t length) {
  for (const bp::Failure& f : rep.failures) os << "FAIL " << f.path << ": " << f.reason << '\n';
  if (rep.valid) {
    os << "RESULT valid " << kind << " length=" << length << '\n';
    return kValid;
  }
  os << "RESULT invalid " << kind << " failures=" << rep.failures.size() << " first=" << rep.failures.front().path
     << '\n';
  return kInvalid;
}

int cmd_gen_tseitin(const std::string& graph, const std::string& out) {
  Output o(out);
  bp::TseitinInstance inst = bp::parse_graph(bp::read_file(graph));
  bp::InequalitySystem K = bp::tseitin_polytope(inst);
  bp::EnumNode T = bp::tseitin_sp_refutation(inst);
  o.emit(out + ".ineq", bp::write_system(K));
  o.emit(out + ".proof", bp::write_enumerative(T));
  bp::ProofStats s = bp::proof_stats(T);
  *o.report << "vertices " << inst.num_vertices << "\nedges " << inst.edges.size() << "\nrows " << K.num_rows()
            << '\n';
  print_stats(*o.report, s);
  *o.report << "RESULT valid tseitin length=" << s.length << '\n';
  return kValid;
}

int cmd_gen_system(const std::string& what, std::size_t n, const std::string& out) {
  Output o(out);
  bp::InequalitySystem K = what == "pn" ? bp::pn_polytope(n) : bp::qn_polytope(n);
  o.emit(out + ".ineq", bp::write_system(K));
  *o.report << "dimension " << K.dim() << "\nrows " << K.num_rows() << '\n';
  if (what == "qn") {
    bp::QnSplitReport rep = bp::qn_split_refutation(n);
    for (const bp::SplitSideCheck& c : rep.sides) {
      *o.report << "split y" << c.index + 1 << " >= 1/2 on x" << c.index + 1 << (c.left ? " <= 0" : " >= 1") << ": "
                << (c.valid ? "ok" : "fails") << '\n';
    }
    *o.report << "augmented system " << (rep.augmented_empty ? "empty (certified)" : "not certified empty") << '\n';
    if (!rep.valid) {
      *o.report << "RESULT invalid qn split refutation\n";
      return kInvalid;
    }
  }
  *o.report << "RESULT valid " << what << " n=" << n << '\n';
  return kValid;
}

int cmd_thin_segment(const std::string& M, bool axis, const std::string& out) {
  Output o(out);
  auto [K, T] = bp::thin_segment(bp::parse_integer(M));
  if (axis) T = bp::thin_segment_axis_proof();
  o.emit(out + ".ineq", bp::write_system(K));
  o.emit(out + ".proof", bp::write_branching(T));
  print_stats(*o.report, bp::proof_stats(T));
  *o.report << "RESULT valid thin-segment M=" << M << '\n';
  return kValid;
}

int cmd_recompile(const std::string& sys, const std::string& proof, const std::string& radius, bool serial,
                  const std::string& out) {
  Inputs in = load(sys, proof);
  bp::BranchNode T = bp::parse_branching(in.artifact);
  bp::RecompileOptions opt;
  if (!radius.empty()) opt.radius = bp::parse_integer(radius);
  opt.parallel = !serial;
  bp::RecompileResult res = bp::recompile_detailed(in.system, T, opt);
  Output o(out);
  if (out.empty() && sys == "-") o.emit("", bp::write_system(in.system));
  o.emit(out, bp::write_branching(res.proof));
  const std::size_t n = in.system.dim();
  bp::Precision p = bp::default_precision(n, res.radius);
  *o.report << "radius " << bp::to_string(res.radius) << "\nN " << bp::to_string(p.N) << "\nfixup_cuts "
            << res.fixup_cuts << '\n';
  bp::ProofStats before = bp::proof_stats(T), after = bp::proof_stats(res.proof);
  *o.report << "input_length " << before.length << "\ninput_max_coeff " << bp::to_string(before.max_coeff) << '\n';
  print_stats(*o.report, after);
  *o.report << "coefficient_bound_bits " << bp::bit_length(bp::coefficient_bound(n, res.radius)) << '\n';
  *o.report << "RESULT valid recompiled length=" << after.length << '\n';
  return kValid;
}

int cmd_enum_to_cp(const std::string& sys, const std::string& proof, const std::string& out) {
  Inputs in = load(sys, proof);
  bp::EnumNode T = bp::parse_enumerative(in.artifact);
  std::vector<bp::IntVector> L = bp::enum_to_cp(in.system, T);
  Output o(out);
  if (out.empty() && sys == "-") o.emit("", bp::write_system(in.system));
  o.emit(out, bp::write_cuts(L));
  const std::size_t t = bp::proof_stats(T).length;
  *o.report << "enumerative_length " << t << "\ncuts " << L.size() << "\nbound " << 2 * t - 1 << '\n';
  *o.report << "RESULT valid cp length=" << L.size() << '\n';
  return kValid;
}

int cmd_verify(const std::string& kind, const std::string& sys, const std::string& proof) {
  Inputs in = load(sys, proof);
  std::ostream& os = std::cout;
  if (kind == "branching") {
    bp::BranchNode T = bp::parse_branching(in.artifact);
    return report_verification(os, kind, bp::verify_branching_proof(in.system, T), bp::proof_stats(T).length);
  }
  if (kind == "certified") {
    bp::BranchNode T = bp::parse_branching(in.artifact);
    bool ok = bp::verify_certified_proof(in.system, T);
    std::size_t len = bp::proof_stats(T).length;
    os << (ok ? "RESULT valid certified length=" : "RESULT invalid certified length=") << len << '\n';
    return ok ? kValid : kInvalid;
  }
  if (kind == "enumerative") {
    bp::EnumNode T = bp::parse_enumerative(in.artifact);
    return report_verification(os, kind, bp::verify_enumerative_proof(in.system, T), bp::proof_stats(T).length);
  }
  if (kind == "cp") {
    std::vector<bp::IntVector> L = bp::parse_cuts(in.artifact);
    for (const bp::IntVector& a : L) {
      if (a.size() != in.system.dim()) throw bp::ParseError("cut has wrong dimension");
    }
    bp::InequalitySystem cur = bp::apply_cg_list(in.system, L);
    if (bp::is_empty(cur)) {
      os << "RESULT valid cp length=" << L.size() << '\n';
      return kValid;
    }
    os << "FAIL final: set nonempty after " << L.size() << " cuts\n";
    os << "RESULT invalid cp length=" << L.size() << '\n';
    return kInvalid;
  }
  throw bp::PreconditionError("unknown proof kind '" + kind + "'");
}

int cmd_certify(const std::string& sys, const std::string& proof, const std::string& out) {
  Inputs in = load(sys, proof);
  bp::BranchNode T = bp::certify(in.system, bp::parse_branching(in.artifact));
  Output o(out);
  if (out.empty() && sys == "-") o.emit("", bp::write_system(in.system));
  o.emit(out, bp::write_branching(T));
  std::size_t total = 0, widest = 0;
  for (const bp::CertificateInfo& c : bp::certificate_summary(T)) {
    *o.report << "leaf " << (c.path.empty() ? "root" : c.path) << " nonzeros " << c.nonzeros << " bit_size "
              << c.bit_size << '\n';
    total += c.bit_size;
    widest = std::max(widest, c.nonzeros);
  }
  *o.report << "certificate_bit_size " << total << "\nmax_nonzeros " << widest << '\n';
  *o.report << "RESULT valid certified length=" << bp::proof_stats(T).length << '\n';
  return kValid;
}

int cmd_stats(const std::string& path) {
  std::string text = path == "-" ? slurp_stdin() : bp::read_file(path);
  bp::ProofStats s;
  std::string kind;
  switch (bp::detect_proof_kind(text)) {
    case bp::ProofKind::kBranching:
      kind = "branching";
      s = bp::proof_stats(bp::parse_branching(text));
      break;
    case bp::ProofKind::kEnumerative:
      kind = "enumerative";
      s = bp::proof_stats(bp::parse_enumerative(text));
      break;
    case bp::ProofKind::kCuts:
      kind = "cp";
      s = bp::proof_stats(bp::parse_cuts(text));
      break;
  }
  std::cout << "kind " << kind << '\n';
  print_stats(std::cout, s);
  std::cout << "RESULT valid stats\n";
  return kValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact branching, cutting-plane and enumerative proofs of integer infeasibility"};
  app.require_subcommand(1);

  std::string out, path_a, path_b, kind, radius, number;
  bool serial = false, axis = false;

  auto* gt = app.add_subcommand("gen-tseitin", "Tseitin polytope and enumerative refutation from a .graph file");
  gt->add_option("graph", path_a, "graph file")->required();
  gt->add_option("-o,--output", out, "output prefix (writes PREFIX.ineq and PREFIX.proof)");

  auto* gp = app.add_subcommand("gen-pn", "integer-free polytope P_n");
  gp->add_option("n", number)->required();
  gp->add_option("-o,--output", out, "output prefix");

  auto* gq = app.add_subcommand("gen-qn", "mixed polytope Q_n, with its split-cut refutation checked");
  gq->add_option("n", number)->required();
  gq->add_option("-o,--output", out, "output prefix");

  auto* ts = app.add_subcommand("thin-segment", "segment M x1 + x2 = 1/2 with its one-node proof");
  ts->add_option("M", number)->required();
  ts->add_flag("--axis", axis, "emit the invalid (x1 <= 0 | x1 >= 1) proof instead");
  ts->add_option("-o,--output", out, "output prefix");

  auto* rc = app.add_subcommand("recompile", "rewrite a branching proof with small coefficients");
  rc->add_option("system", path_a)->required();
  rc->add_option("proof", path_b);
  rc->add_option("--radius", radius, "l1 radius R with K inside R*B1");
  rc->add_flag("--serial", serial, "disable per-leaf parallelism");
  rc->add_option("-o,--output", out, "output proof file");

  auto* ec = app.add_subcommand("enum-to-cp", "convert an enumerative proof to a cutting-plane proof");
  ec->add_option("system", path_a)->required();
  ec->add_option("proof", path_b);
  ec->add_option("-o,--output", out, "output cuts file");

  auto* vf = app.add_subcommand("verify", "verify a proof");
  vf->add_option("kind", kind)->required()->check(CLI::IsMember({"branching", "certified", "enumerative", "cp"}));
  vf->add_option("system", path_a)->required();
  vf->add_option("proof", path_b);

  auto* ct = app.add_subcommand("certify", "attach reduced Farkas certificates to every leaf");
  ct->add_option("system", path_a)->required();
  ct->add_option("proof", path_b);
  ct->add_option("-o,--output", out, "output proof file");

  auto* st = app.add_subcommand("stats", "length, bit size and largest coefficient of a proof or cut list");
  st->add_option("proof", path_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kValid : kError;
  }

  try {
    if (gt->parsed()) return cmd_gen_tseitin(path_a, out);
    if (gp->parsed()) return cmd_gen_system("pn", std::stoul(number), out);
    if (gq->parsed()) return cmd_gen_system("qn", std::stoul(number), out);
    if (ts->parsed()) return cmd_thin_segment(number, axis, out);
    if (rc->parsed()) return cmd_recompile(path_a, path_b, radius, serial, out);
    if (ec->parsed()) return cmd_enum_to_cp(path_a, path_b, out);
    if (vf->parsed()) return cmd_verify(kind, path_a, path_b);
    if (ct->parsed()) return cmd_certify(path_a, path_b, out);
    if (st->parsed()) return cmd_stats(path_a);
  } catch (const std::exception& e) {
    std::cout << "RESULT error " << e.what() << '\n';
    return kError;
  }
  return kError;
}
