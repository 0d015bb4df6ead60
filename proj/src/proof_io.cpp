// SPDX-License-Identifier: Apache-2.0
#include "branchproof/proof_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace branchproof {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::vector<std::string>> nonblank_lines(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    line = line.substr(0, line.find('#'));
    auto toks = split_ws(line);
    if (!toks.empty()) out.push_back(std::move(toks));
    start = end + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& tok) {
  Integer k = parse_integer(tok);
  if (k < 0 || !k.fits_ulong_p()) throw ParseError("bad count '" + tok + "'");
  return k.get_ui();
}

}  // namespace

std::string write_system(const InequalitySystem& K) {
  std::ostringstream os;
  os << K.dim() << ' ' << K.num_rows() << '\n';
  for (std::size_t i = 0; i < K.num_rows(); ++i) {
    for (const Rational& a : K.row(i)) os << to_string(a) << ' ';
    os << to_string(K.rhs(i)) << '\n';
  }
  return os.str();
}

InequalitySystem parse_system(std::string_view text) {
  auto lines = nonblank_lines(text);
  if (lines.empty() || lines[0].size() != 2) throw ParseError(".ineq: header must be 'n m'");
  const std::size_t n = parse_count(lines[0][0]);
  const std::size_t m = parse_count(lines[0][1]);
  if (n == 0) throw ParseError(".ineq: dimension must be at least 1");
  if (lines.size() != m + 1) {
    throw ParseError(".ineq: expected " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - 1));
  }
  InequalitySystem K(n);
  for (std::size_t i = 1; i <= m; ++i) {
    if (lines[i].size() != n + 1) throw ParseError(".ineq: row " + std::to_string(i) + " needs n+1 entries");
    RatVector a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = parse_rational(lines[i][j]);
    K.add_row(std::move(a), parse_rational(lines[i][n]));
  }
  return K;
}

std::string write_cuts(const std::vector<IntVector>& cuts) {
  std::ostringstream os;
  for (const IntVector& a : cuts) {
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << to_string(a[j]);
    os << '\n';
  }
  return os.str();
}

std::vector<IntVector> parse_cuts(std::string_view text) {
  std::vector<IntVector> out;
  for (const auto& line : nonblank_lines(text)) {
    IntVector a;
    for (const std::string& tok : line) a.push_back(parse_integer(tok));
    if (!out.empty() && a.size() != out.front().size()) throw ParseError(".cuts: inconsistent dimension");
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

struct Sexp {
  bool atom = false;
  std::string text;
  std::vector<Sexp> items;
};

class SexpReader {
 public:
  explicit SexpReader(std::string_view s) : s_(s) {}

  Sexp read_all() {
    Sexp e = read();
    skip();
    if (pos_ != s_.size()) throw ParseError(".proof: trailing input at offset " + std::to_string(pos_));
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Sexp read() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(".proof: unexpected end of input");
    Sexp e;
    if (s_[pos_] == ')') throw ParseError(".proof: unexpected ')' at offset " + std::to_string(pos_));
    if (s_[pos_] == '(') {
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw ParseError(".proof: unbalanced '('");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.atom = true;
    std::size_t j = pos_;
    while (j < s_.size() && s_[j] != '(' && s_[j] != ')' && !std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    e.text = std::string(s_.substr(pos_, j - pos_));
    pos_ = j;
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

const std::string& head(const Sexp& e) {
  static const std::string none;
  if (e.atom || e.items.empty() || !e.items[0].atom) return none;
  return e.items[0].text;
}

const std::string& atom_of(const Sexp& e, const char* what) {
  if (!e.atom) throw ParseError(std::string(".proof: expected ") + what);
  return e.text;
}

std::vector<const Sexp*> list_of(const Sexp& e, const char* what) {
  if (e.atom) throw ParseError(std::string(".proof: expected list for ") + what);
  std::vector<const Sexp*> out;
  for (const Sexp& x : e.items) {
    if (!x.atom) throw ParseError(std::string(".proof: nested list in ") + what);
    out.push_back(&x);
  }
  return out;
}

void check_dim(std::size_t& dim, std::size_t got) {
  if (dim == 0) dim = got;
  if (got != dim || got == 0) throw ParseError(".proof: inconsistent normal dimension");
}

BranchNode branching_from(const Sexp& e, std::size_t& dim) {
  const std::string& h = head(e);
  if (h == "leaf") {
    BranchNode v = BranchNode::leaf();
    if (e.items.size() == 1) return v;
    if (e.items.size() != 2 || head(e.items[1]) != "cert") throw ParseError(".proof: malformed leaf");
    RatVector lam;
    for (std::size_t i = 1; i < e.items[1].items.size(); ++i) {
      lam.push_back(parse_rational(atom_of(e.items[1].items[i], "multiplier")));
    }
    v.certificate = std::move(lam);
    return v;
  }
  if (h == "node") {
    if (e.items.size() != 4) throw ParseError(".proof: node needs label and two children");
    auto label = list_of(e.items[1], "node label");
    if (label.size() < 2) throw ParseError(".proof: node label needs a_1..a_n b");
    check_dim(dim, label.size() - 1);
    IntVector a;
    for (std::size_t i = 0; i + 1 < label.size(); ++i) a.push_back(parse_integer(label[i]->text));
    Integer b = parse_integer(label.back()->text);
    BranchNode left = branching_from(e.items[2], dim);
    BranchNode right = branching_from(e.items[3], dim);
    return BranchNode::split(std::move(a), std::move(b), std::move(left), std::move(right));
  }
  throw ParseError(".proof: expected (node ...) or (leaf ...), got '" + h + "'");
}

EnumNode enumerative_from(const Sexp& e, std::size_t& dim) {
  const std::string& h = head(e);
  auto direction = [&](const Sexp& x) {
    auto items = list_of(x, "direction");
    check_dim(dim, items.size());
    IntVector a;
    for (const Sexp* t : items) a.push_back(parse_integer(t->text));
    return a;
  };
  if (h == "eleaf") {
    if (e.items.size() == 2 && atom_of(e.items[1], "leaf kind") == "empty") return EnumNode::empty_leaf();
    if (e.items.size() >= 2 && atom_of(e.items[1], "leaf kind") == "gap") {
      if (e.items.size() != 5) throw ParseError(".proof: gap leaf needs (a_1 ... a_n) l u");
      return EnumNode::gap(direction(e.items[2]), parse_rational(atom_of(e.items[3], "l")),
                           parse_rational(atom_of(e.items[4], "u")));
    }
    throw ParseError(".proof: malformed eleaf");
  }
  if (h == "enode") {
    if (e.items.size() < 4) throw ParseError(".proof: enode needs direction and bounds");
    IntVector a = direction(e.items[1]);
    Rational l = parse_rational(atom_of(e.items[2], "l"));
    Rational u = parse_rational(atom_of(e.items[3], "u"));
    std::vector<EnumChild> children;
    for (std::size_t i = 4; i < e.items.size(); ++i) {
      const Sexp& c = e.items[i];
      if (head(c) != "child" || c.items.size() != 3) throw ParseError(".proof: expected (child b SUBTREE)");
      children.push_back({parse_integer(atom_of(c.items[1], "child value")), enumerative_from(c.items[2], dim)});
    }
    return EnumNode::branch(std::move(a), std::move(l), std::move(u), std::move(children));
  }
  throw ParseError(".proof: expected (enode ...) or (eleaf ...), got '" + h + "'");
}

void write_branching_to(const BranchNode& v, std::size_t indent, std::ostringstream& os) {
  if (v.is_leaf()) {
    if (!v.certificate) {
      os << "(leaf)";
      return;
    }
    os << "(leaf (cert";
    for (const Rational& x : *v.certificate) os << ' ' << to_string(x);
    os << "))";
    return;
  }
  os << "(node (";
  for (const Integer& x : v.normal) os << to_string(x) << ' ';
  os << to_string(v.rhs) << ")";
  const std::string pad(indent + 2, ' ');
  os << '\n' << pad;
  write_branching_to(v.left(), indent + 2, os);
  os << '\n' << pad;
  write_branching_to(v.right(), indent + 2, os);
  os << ')';
}

void write_direction(const IntVector& a, std::ostringstream& os) {
  os << '(';
  for (std::size_t j = 0; j < a.size(); ++j) os << (j ? " " : "") << to_string(a[j]);
  os << ')';
}

void write_enum_to(const EnumNode& v, std::size_t indent, std::ostringstream& os) {
  if (v.kind == EnumNode::Kind::kEmpty) {
    os << "(eleaf empty)";
    return;
  }
  if (v.children.empty()) {
    os << "(eleaf gap ";
    write_direction(v.direction, os);
    os << ' ' << to_string(v.lower) << ' ' << to_string(v.upper) << ')';
    return;
  }
  os << "(enode ";
  write_direction(v.direction, os);
  os << ' ' << to_string(v.lower) << ' ' << to_string(v.upper);
  const std::string pad(indent + 2, ' ');
  for (const EnumChild& c : v.children) {
    os << '\n' << pad << "(child " << to_string(c.value) << ' ';
    write_enum_to(c.node, indent + 2, os);
    os << ')';
  }
  os << ')';
}

}  // namespace

std::string write_branching(const BranchNode& T) {
  std::ostringstream os;
  write_branching_to(T, 0, os);
  os << '\n';
  return os.str();
}

BranchNode parse_branching(std::string_view text) {
  Sexp e = SexpReader(text).read_all();
  std::size_t dim = 0;
  return branching_from(e, dim);
}

std::string write_enumerative(const EnumNode& T) {
  std::ostringstream os;
  write_enum_to(T, 0, os);
  os << '\n';
  return os.str();
}

EnumNode parse_enumerative(std::string_view text) {
  Sexp e = SexpReader(text).read_all();
  std::size_t dim = 0;
  return enumerative_from(e, dim);
}

ProofKind detect_proof_kind(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size() || text[i] != '(') return ProofKind::kCuts;
  std::string_view rest = text.substr(i + 1);
  std::size_t j = 0;
  while (j < rest.size() && std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
  rest = rest.substr(j);
  if (rest.substr(0, 5) == "enode" || rest.substr(0, 5) == "eleaf") return ProofKind::kEnumerative;
  if (rest.substr(0, 4) == "node" || rest.substr(0, 4) == "leaf") return ProofKind::kBranching;
  throw ParseError(".proof: unknown proof kind");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

}  // namespace branchproof
