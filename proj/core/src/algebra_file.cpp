#include "hoalg/algebra_file.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hoalg {

ParseError::ParseError(int line, int column, const std::string& msg)
    : InputError(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg : msg),
      line_(line),
      column_(column),
      msg_(msg) {}

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '^' || c == '\'';
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

struct Token {
  enum Kind { name, rational, punct } kind;
  std::string text;
  int col;
};

std::vector<Token> lex(const std::string& line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (name_char(c)) {
      size_t j = i;
      while (j < line.size() && name_char(line[j])) ++j;
      std::string w = line.substr(i, j - i);
      if (all_digits(w) && j < line.size() && line[j] == '/') {
        size_t k = j + 1;
        while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
        if (k == j + 1) throw ParseError(lineno, static_cast<int>(j) + 2, "expected a denominator");
        out.push_back({Token::rational, line.substr(i, k - i), col});
        i = k;
        continue;
      }
      out.push_back({Token::name, w, col});
      i = j;
      continue;
    }
    if (std::string("=*+-[],").find(c) != std::string::npos) {
      out.push_back({Token::punct, std::string(1, c), col});
      ++i;
      continue;
    }
    throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
  }
  return out;
}

struct LineParser {
  const std::vector<Token>& t;
  int lineno;
  int end_col;
  size_t pos = 0;

  bool done() const { return pos >= t.size(); }
  int col() const { return done() ? end_col : t[pos].col; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno, col(), msg); }
  bool at(const char* p) const { return !done() && t[pos].kind == Token::punct && t[pos].text == p; }
  void expect(const char* p) {
    if (!at(p)) fail(std::string("expected '") + p + "'");
    ++pos;
  }
  std::string name() {
    if (done() || t[pos].kind != Token::name) fail("expected a basis name");
    return t[pos++].text;
  }
  int integer() {
    bool neg = at("-");
    if (neg) ++pos;
    if (done() || t[pos].kind != Token::name || !all_digits(t[pos].text)) fail("expected an integer degree");
    int v = std::stoi(t[pos++].text);
    return neg ? -v : v;
  }
  void finish() {
    if (!done()) fail("unexpected '" + t[pos].text + "'");
  }
};

// combination := ["-"] term *( ("+" / "-") term ) | "0";  term := [rational "*"] name
SVec combination(LineParser& p, const GradedSpace& V, std::optional<int> degree) {
  if (p.done()) p.fail("expected a combination");
  if (p.t[p.pos].kind == Token::name && p.t[p.pos].text == "0" && p.pos + 1 == p.t.size() && !V.find("0")) {
    ++p.pos;
    return {};
  }
  SVecBuilder b;
  bool first = true;
  while (true) {
    Scalar sign(1);
    if (p.at("-")) {
      sign = -1;
      ++p.pos;
    } else if (p.at("+")) {
      if (first) p.fail("unexpected '+'");
      ++p.pos;
    } else if (!first) {
      break;
    }
    Scalar c(1);
    bool numeric = !p.done() && (p.t[p.pos].kind == Token::rational || all_digits(p.t[p.pos].text));
    if (numeric && p.pos + 1 < p.t.size() && p.t[p.pos + 1].kind == Token::punct && p.t[p.pos + 1].text == "*") {
      try {
        c = parse_scalar(p.t[p.pos].text);
      } catch (const InputError& e) {
        p.fail(e.what());
      }
      p.pos += 2;
    } else if (!p.done() && p.t[p.pos].kind == Token::rational) {
      p.fail("coefficient must be followed by '*'");
    }
    int col = p.col();
    std::string n = p.name();
    if (p.at("*")) p.fail("products cannot appear in a combination; declare the product as a basis element");
    auto idx = V.find(n);
    if (!idx) throw ParseError(p.lineno, col, "unknown basis element '" + n + "'");
    if (degree && V.degree(*idx) != *degree)
      throw ParseError(p.lineno, col,
                       "'" + n + "' has degree " + std::to_string(V.degree(*idx)) + ", expected " + std::to_string(*degree));
    b.add(*idx, sign * c);
    first = false;
    if (p.done()) break;
    if (!p.at("+") && !p.at("-")) p.fail("expected '+', '-' or end of line");
  }
  return b.take();
}

}  // namespace

DgAlgebra parse_algebra(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<Species> species;
  std::string aname;
  std::vector<BasisElement> basis;
  std::set<std::string> seen;
  bool in_basis = false, basis_closed = false;
  std::optional<std::pair<std::string, int>> unit;
  int unit_line = 0;
  struct Pending {
    int line;
    std::vector<Token> toks;
    int end_col;
  };
  std::vector<Pending> rest;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!species) {
      // header: algebra <species> <name>; the name runs to the end of the line
      std::istringstream hs(line.substr(0, line.find('#')));
      std::string kw, sp, rest;
      if (!(hs >> kw)) continue;
      if (kw != "algebra") throw ParseError(lineno, 1, "expected header 'algebra <species> <name>'");
      if (!(hs >> sp)) throw ParseError(lineno, static_cast<int>(line.size()) + 1, "expected a species");
      try {
        species = parse_species(sp);
      } catch (const InputError&) {
        throw ParseError(lineno, static_cast<int>(line.find(sp)) + 1, "unknown species '" + sp + "' (Ass, Com or Lie)");
      }
      std::getline(hs >> std::ws, rest);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
      if (rest.empty()) throw ParseError(lineno, static_cast<int>(line.size()) + 1, "expected an algebra name");
      aname = rest;
      continue;
    }
    auto toks = lex(line, lineno);
    if (toks.empty()) continue;
    int end_col = static_cast<int>(line.size()) + 1;
    LineParser p{toks, lineno, end_col};
    if (toks.size() == 1 && toks[0].kind == Token::name && toks[0].text == "basis") {
      if (in_basis || basis_closed) p.fail("second basis section");
      in_basis = true;
      continue;
    }
    // basis entries are indented; the first unindented line closes the section
    if (in_basis && std::isspace(static_cast<unsigned char>(line[0]))) {
      int col = p.col();
      std::string n = p.name();
      if (seen.count(n)) throw ParseError(lineno, col, "duplicate basis name '" + n + "'");
      int deg = p.integer();
      p.finish();
      seen.insert(n);
      basis.push_back({n, deg, 0, false});
      continue;
    }
    if (in_basis) {
      in_basis = false;
      basis_closed = true;
    }
    if (!basis_closed) p.fail("expected 'basis' section before definitions");
    if (toks[0].kind == Token::name && toks[0].text == "unit" && toks.size() == 2) {
      if (unit) p.fail("second unit declaration");
      p.pos = 1;
      int col = p.col();
      unit = {p.name(), col};
      unit_line = lineno;
      p.finish();
      continue;
    }
    rest.push_back({lineno, std::move(toks), end_col});
  }
  if (!species) throw ParseError(0, 0, "empty file: missing header");
  if (basis.empty() && !basis_closed && !in_basis) throw ParseError(0, 0, "missing basis section");

  if (unit) {
    bool found = false;
    for (auto& b : basis)
      if (b.name == unit->first) b.unit = found = true;
    if (!found) throw ParseError(unit_line, unit->second, "unit '" + unit->first + "' is not a basis element");
    if (*species == Species::Lie) throw ParseError(unit_line, 1, "Lie algebras carry no unit");
  }
  DgAlgebra a = empty_algebra(aname, *species, make_space(std::move(basis)));
  const GradedSpace& V = *a.space;
  if (unit) {
    a.unit = V.index(unit->first);
    if (V.degree(*a.unit) != 0) throw ParseError(unit_line, unit->second, "the unit must have degree 0");
  }
  std::set<int> dset;
  // written products with their positions; explicit zeros must survive completion too
  std::map<std::pair<int, int>, std::pair<SVec, std::pair<int, int>>> pset;
  for (auto& pend : rest) {
    LineParser p{pend.toks, pend.line, pend.end_col};
    auto lookup = [&]() {
      int col = p.col();
      std::string n = p.name();
      auto i = V.find(n);
      if (!i) throw ParseError(p.lineno, col, "unknown basis element '" + n + "'");
      return *i;
    };
    const Token& t0 = pend.toks[0];
    if (t0.kind == Token::name && t0.text == "d" && pend.toks.size() > 1 && pend.toks[1].kind == Token::name) {
      p.pos = 1;
      int col = p.col();
      int x = lookup();
      if (dset.count(x)) throw ParseError(p.lineno, col, "second differential for '" + V[x].name + "'");
      dset.insert(x);
      p.expect("=");
      a.d.cols[x] = combination(p, V, V.degree(x) + 1);
      continue;
    }
    int x, y, col = p.col();
    if (p.at("[")) {
      if (a.species != Species::Lie) p.fail("brackets are only allowed in Lie algebras");
      ++p.pos;
      x = lookup();
      p.expect(",");
      y = lookup();
      p.expect("]");
    } else {
      if (a.species == Species::Lie) p.fail("expected '[a, b] = ...' in a Lie algebra");
      x = lookup();
      p.expect("*");
      y = lookup();
    }
    if (pset.count({x, y})) throw ParseError(p.lineno, col, "second product for " + V[x].name + ", " + V[y].name);
    p.expect("=");
    a.product[x][y] = combination(p, V, V.degree(x) + V.degree(y));
    pset[{x, y}] = {a.product[x][y], {p.lineno, col}};
  }
  try {
    complete_products(a);
  } catch (const InputError& e) {
    throw ParseError(0, 0, e.what());
  }
  for (const auto& [xy, written] : pset)
    if (!(a.product[xy.first][xy.second] == written.first))
      throw ParseError(written.second.first, written.second.second,
                       "product of " + V[xy.first].name + ", " + V[xy.second].name + " contradicts " +
                           (a.unit && (xy.first == *a.unit || xy.second == *a.unit)
                                ? std::string("the unit")
                                : std::string("the product of the swapped pair")));
  return a;
}

DgAlgebra load_algebra(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_algebra(ss.str());
}

namespace {

std::string format_combination(const GradedSpace& V, const SVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    bool neg = c < 0;
    Scalar m = neg ? Scalar(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (m != 1) s += to_string(m) + "*";
    s += V[i].name;
  }
  return s;
}

}  // namespace

std::string serialize_algebra(const DgAlgebra& a) {
  const GradedSpace& V = *a.space;
  std::ostringstream out;
  out << "algebra " << species_name(a.species) << " " << a.name << "\n";
  out << "basis\n";
  for (const auto& b : V.basis()) out << "  " << b.name << " " << b.degree << "\n";
  if (a.unit) out << "unit " << V[*a.unit].name << "\n";
  for (int i = 0; i < V.dim(); ++i)
    if (!a.d.cols[i].empty()) out << "d " << V[i].name << " = " << format_combination(V, a.d.cols[i]) << "\n";
  for (int i = 0; i < V.dim(); ++i)
    for (int j = 0; j < V.dim(); ++j) {
      if (a.product[i][j].empty()) continue;
      if (a.unit && (i == *a.unit || j == *a.unit)) continue;
      if (a.species != Species::Ass && j < i) continue;
      if (a.species == Species::Lie)
        out << "[" << V[i].name << ", " << V[j].name << "] = ";
      else
        out << V[i].name << " * " << V[j].name << " = ";
      out << format_combination(V, a.product[i][j]) << "\n";
    }
  return out.str();
}

}  // namespace hoalg
