#include <random>

#include "doctest.h"
#include "hoalg/algebras.hpp"
#include "hoalg/errors.hpp"
#include "hoalg/graded.hpp"

using namespace hoalg;

namespace {

// Sign oracle: bubble the factors into their target slots one adjacent swap
// at a time, multiplying by (-1)^{|a||b|} (and -1 for gamma) at each swap.
int brute_sign(const Perm& sigma, const std::vector<int>& degs, SignMode mode) {
  int n = static_cast<int>(sigma.size());
  std::vector<int> target = sigma, deg = degs;
  int s = 1;
  for (int pass = 0; pass < n; ++pass)
    for (int i = 0; i + 1 < n; ++i)
      if (target[i] > target[i + 1]) {
        std::swap(target[i], target[i + 1]);
        if ((deg[i] & 1) && (deg[i + 1] & 1)) s = -s;
        if (mode == SignMode::gamma) s = -s;
        std::swap(deg[i], deg[i + 1]);
      }
  return s;
}

SpacePtr space(std::vector<std::pair<std::string, int>> b) {
  std::vector<BasisElement> v;
  for (auto& [n, d] : b) v.push_back({n, d});
  return make_space(v);
}

}  // namespace

TEST_CASE("scalar parsing and canonical form") {
  CHECK(parse_scalar("6/4") == Scalar(3, 2));
  CHECK(to_string(parse_scalar("-6/4")) == "-3/2");
  CHECK(to_string(parse_scalar("5")) == "5");
  CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
  CHECK_THROWS_AS(parse_scalar("x"), InputError);
}

TEST_CASE("koszul sign examples") {
  CHECK(koszul_sign({0, 1, 2}, {1, 3, 5}) == 1);
  CHECK(koszul_sign({1, 0}, {1, 1}, SignMode::koszul) == -1);
  CHECK(koszul_sign({1, 0}, {1, 1}, SignMode::gamma) == 1);
  CHECK_THROWS_AS(koszul_sign({1, 0}, {1}), InputError);
}

TEST_CASE("koszul sign agrees with the adjacent-swap oracle and depends only on parity") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& s : all_perms(n))
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> d(n), d3(n);
        for (int i = 0; i < n; ++i) {
          d[i] = (mask >> i) & 1;
          d3[i] = d[i] + 2 * i - 4;
        }
        for (auto mode : {SignMode::koszul, SignMode::gamma}) {
          CHECK(koszul_sign(s, d, mode) == brute_sign(s, d, mode));
          CHECK(koszul_sign(s, d3, mode) == koszul_sign(s, d, mode));
        }
      }
}

TEST_CASE("permute_tensor is a left action") {
  auto V = space({{"a", 0}, {"b", 1}, {"c", 1}, {"d", 0}});
  auto xy = space({{"x", 1}, {"y", 2}});
  auto w = permute_tensor({1, 0}, *xy, {0, 1});
  CHECK(w.sign == 1);
  CHECK(w.word == std::vector<int>{1, 0});
  for (const auto& s : all_perms(3))
    for (const auto& t : all_perms(3))
      for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> word;
        for (int i = 0; i < 3; ++i) word.push_back((mask >> i) & 1 ? 1 : 0);
        word[2] = (mask & 4) ? 2 : 3;
        auto once = permute_tensor(compose(s, t), *V, word);
        auto inner = permute_tensor(t, *V, word);
        auto outer = permute_tensor(s, *V, inner.word);
        CHECK(once.word == outer.word);
        CHECK(once.sign == inner.sign * outer.sign);
      }
}

TEST_CASE("suspension") {
  auto V = space({{"x", 0}, {"y", 1}});
  LinearMap d = LinearMap::zero(V, V, 1);
  d.cols[0] = unit_svec(1);
  CochainComplex c{V, d};
  auto s = suspend(c);
  CHECK(s.space->degree(0) == -1);
  CHECK(s.space->degree(1) == 0);
  CHECK(s.d.cols[0] == unit_svec(1, -1));
  auto ss = suspend(s);
  CHECK(ss.d.cols[0] == unit_svec(1));
  CHECK(ss.space->degree(0) == -2);
  CHECK(ss.space->dims_by_degree() == std::map<int, int>{{-2, 1}, {-1, 1}});
}

TEST_CASE("solve_linear: leftmost pivot witness") {
  auto src = space({{"a", 0}, {"b", 0}});
  auto tgt = space({{"c", 0}});
  LinearMap m = LinearMap::zero(src, tgt, 0);
  m.cols[0] = unit_svec(0);
  m.cols[1] = unit_svec(0);
  auto w = solve_linear(m, unit_svec(0));
  REQUIRE(w);
  CHECK(*w == unit_svec(0));
  CHECK(solve_linear(m, {})->empty());
}

TEST_CASE("solve_linear on random rational matrices against a rank oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-3, 3);
  std::vector<BasisElement> sb, tb;
  for (int j = 0; j < 7; ++j) sb.push_back({"s" + std::to_string(j), 0});
  for (int i = 0; i < 5; ++i) tb.push_back({"t" + std::to_string(i), 0});
  auto S = make_space(sb), T = make_space(tb);
  for (int trial = 0; trial < 40; ++trial) {
    LinearMap m = LinearMap::zero(S, T, 0);
    // rank-deficient half of the time
    int r = trial % 2 ? 5 : 2;
    std::vector<SVec> basis;
    for (int k = 0; k < r; ++k) {
      SVecBuilder b;
      for (int i = 0; i < 5; ++i) { Scalar c(dist(rng), 1 + (dist(rng) + 3) % 3); c.canonicalize(); b.add(i, c); }
      basis.push_back(b.take());
    }
    for (int j = 0; j < 7; ++j) {
      SVecBuilder b;
      for (int k = 0; k < r; ++k) b.add(basis[k], dist(rng));
      m.cols[j] = b.take();
    }
    SVecBuilder tb2;
    for (int i = 0; i < 5; ++i) tb2.add(i, dist(rng));
    SVec target = tb2.take();
    auto w = solve_linear(m, target);
    std::vector<SVec> aug = m.cols;
    aug.push_back(target);
    bool in_image = rank(aug) == rank(m.cols);
    CHECK(w.has_value() == in_image);
    if (w) CHECK(m.apply(*w) == target);
  }
}

TEST_CASE("kernel basis and inverse") {
  auto V = space({{"a", 0}, {"b", 0}, {"c", 0}});
  LinearMap m = LinearMap::zero(V, V, 0);
  m.cols[0] = {{0, 1}, {1, 1}};
  m.cols[1] = {{1, 2}};
  m.cols[2] = {{0, 1}, {1, 3}};
  auto k = kernel_basis(m.cols);
  REQUIRE(k.size() == 1);
  CHECK(m.apply(k[0]).empty());
  m.cols[2] = {{2, 1}};
  auto inv = inverse(m);
  CHECK(inv.after(m) == LinearMap::identity(V));
}

TEST_CASE("cohomology with contraction") {
  SUBCASE("zero differential") {
    auto V = space({{"x", 0}, {"y", 1}});
    auto r = cohomology_with_contraction({V, LinearMap::zero(V, V, 1)});
    CHECK(r.H->dim() == 2);
    CHECK(r.contraction.h.is_zero());
    CHECK(r.contraction.g.after(r.contraction.f) == LinearMap::identity(V));
  }
  SUBCASE("two-term acyclic complex") {
    auto V = space({{"x", 0}, {"y", 1}});
    LinearMap d = LinearMap::zero(V, V, 1);
    d.cols[0] = unit_svec(1);
    auto r = cohomology_with_contraction({V, d});
    CHECK(r.H->dim() == 0);
    // g f - id = d h + h d forces h(y) = -x with this sign convention
    CHECK(r.contraction.h.cols[1] == unit_svec(0, -1));
    CHECK(r.contraction.h.cols[0].empty());
    CHECK(contraction_defects(r.contraction).empty());
  }
  SUBCASE("Heisenberg cdga") {
    auto a = fixture_F2();
    auto r = cohomology_with_contraction(a.complex());
    CHECK(r.H->dims_by_degree() == std::map<int, int>{{0, 1}, {1, 2}, {2, 2}, {3, 1}});
    CHECK(contraction_defects(r.contraction).empty());
  }
  SUBCASE("not a complex") {
    auto V = space({{"x", 0}, {"y", 1}, {"z", 2}});
    LinearMap d = LinearMap::zero(V, V, 1);
    d.cols[0] = unit_svec(1);
    d.cols[1] = unit_svec(2);
    CHECK_THROWS_AS(cohomology_with_contraction({V, d}), InputError);
  }
}

TEST_CASE("side conditions are enforced on a raw homotopy") {
  // class a plus an acyclic pair x -> y; h + (ds - sd) with s: y -> a keeps the
  // homotopy identity but breaks f h = 0 and h h = 0
  auto V = space({{"a", -1}, {"x", 0}, {"y", 1}});
  LinearMap d = LinearMap::zero(V, V, 1);
  d.cols[1] = unit_svec(2);
  auto r = cohomology_with_contraction({V, d});
  LinearMap s = LinearMap::zero(V, V, -2);
  s.cols[2] = unit_svec(0);
  Contraction raw = r.contraction;
  raw.h = raw.h.plus(d.after(s)).plus(s.after(d), -1);
  auto defects = contraction_defects(raw);
  CHECK(defects == std::vector<std::string>{"f h = 0", "h h = 0"});
  CHECK(contraction_defects(enforce_side_conditions(raw)).empty());
}
