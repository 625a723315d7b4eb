#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hoalg/algebra_file.hpp"

using namespace hoalg;

namespace {

std::string read(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool same(const DgAlgebra& a, const DgAlgebra& b) {
  if (a.name != b.name || a.species != b.species || a.unit != b.unit || a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    if ((*a.space)[i].name != (*b.space)[i].name || a.space->degree(i) != b.space->degree(i)) return false;
    if (!(a.d.cols[i] == b.d.cols[i])) return false;
  }
  return a.product == b.product;
}

int error_line(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("minimal file") {
  DgAlgebra a = parse_algebra("algebra Lie one\nbasis\n  x -1\n");
  CHECK(a.dim() == 1);
  CHECK(a.space->degree(0) == -1);
  CHECK(a.d.is_zero());
}

TEST_CASE("shipped fixtures match the built-in corpus") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    DgAlgebra a = load_algebra(std::string(HOALG_FIXTURE_DIR) + "/" + name + ".alg");
    CHECK(same(a, fixture(name)));
    CHECK(check_axioms(a).pass);
  }
}

TEST_CASE("round trip") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    std::string text = read(std::string(HOALG_FIXTURE_DIR) + "/" + name + ".alg");
    std::string canon = serialize_algebra(parse_algebra(text));
    CHECK(serialize_algebra(parse_algebra(canon)) == canon);
    CHECK(same(parse_algebra(canon), parse_algebra(text)));
  }
  // derived algebras with generated names survive as well
  DgAlgebra h = cohomology_algebra(fixture_F2()).algebra;
  CHECK(same(parse_algebra(serialize_algebra(h)), h));
}

TEST_CASE("rational coefficients") {
  DgAlgebra a = parse_algebra(
      "algebra Lie r\nbasis\n  a 0\n  b 0\n  c 0\n"
      "[a, b] = 1/2*c - 3*a   # comment\n");
  CHECK(a.product[0][1] == SVec{{0, Scalar(-3)}, {2, Scalar(1, 2)}});
  CHECK(a.product[1][0] == SVec{{0, Scalar(3)}, {2, Scalar(-1, 2)}});
  CHECK(serialize_algebra(a).find("[a, b] = -3*a + 1/2*c") != std::string::npos);
}

TEST_CASE("errors carry positions") {
  const std::string head = "algebra Com F\nbasis\n  1 0\n  x 1\n  y 1\n  xy 2\nunit 1\n";
  // products in a differential must name a basis element
  CHECK(error_line(head + "x * y = xy\nd x = x*y\n") == 9);
  try {
    parse_algebra(head + "d x = xy*y\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 8);
    CHECK(e.column() == 9);
  }
  {
    // the F2 presentation with the differential written as a product
    std::string f2 = read(std::string(HOALG_FIXTURE_DIR) + "/F2.alg");
    auto at = f2.find("d z = xy");
    REQUIRE(at != std::string::npos);
    f2.replace(at, 8, "d z = x*y");
    int line = 1 + static_cast<int>(std::count(f2.begin(), f2.begin() + static_cast<long>(at), '\n'));
    try {
      parse_algebra(f2);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.message().find("products cannot appear") != std::string::npos);
    }
  }
  CHECK(error_line("algebra Com F\nbasis\n  x 1\n  x 2\n") == 4);          // duplicate name
  CHECK(error_line("algebra Com F\nbasis\n  x one\n") == 3);               // degree
  CHECK(error_line("algebra Com F\nbasis\n  x 1.5\n") == 3);
  CHECK(error_line(head + "x * q = xy\n") == 8);                            // unknown name
  CHECK(error_line(head + "x * y = x\n") == 8);                             // wrong degree
  CHECK(error_line(head + "[x, y] = xy\n") == 8);                           // bracket in Com
  CHECK(error_line(head + "x * y = xy\nx * y = xy\n") == 9);                // repeated product
  CHECK(error_line("algebra Foo F\nbasis\n") == 1);
  CHECK(error_line("basis\n  x 1\n") == 1);
  CHECK(error_line(head + "x * y = 2/0*xy\n") != -1);
  CHECK_THROWS_AS(parse_algebra(""), ParseError);
  // contradicting graded commutativity
  CHECK_THROWS_AS(parse_algebra(head + "x * y = xy\ny * x = xy\n"), ParseError);
  // an explicit zero is a definition as well
  try {
    parse_algebra(head + "x * y = xy\ny * x = 0\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 9);
    CHECK(e.message().find("swapped pair") != std::string::npos);
  }
  try {
    parse_algebra("algebra Com u\nbasis\n  1 0\n  e 2\nunit 1\n1 * e = 0\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.message().find("the unit") != std::string::npos);
  }
  CHECK_NOTHROW(parse_algebra("algebra Com u\nbasis\n  1 0\n  e 2\nunit 1\n1 * e = e\ne * e = 0\n"));
  CHECK_THROWS_AS(load_algebra("/nonexistent/file.alg"), InputError);
}
