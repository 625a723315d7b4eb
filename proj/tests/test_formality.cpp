#include <algorithm>
#include <random>

#include "doctest.h"
#include "hoalg/errors.hpp"
#include "hoalg/formality.hpp"

using namespace hoalg;

TEST_CASE("degree-window certificate") {
  CHECK(degree_bound_certificate(make_space({}), Species::Ass, 2));
  auto f4 = cohomology_algebra(fixture_F4()).algebra.space;
  auto r = degree_bound_report(f4, Species::Com, 2);
  CHECK(r.certified);
  CHECK(r.k_max == 0);
  // degrees 0..3 with many classes: the window stays open
  auto f2 = cohomology_algebra(fixture_F2()).algebra.space;
  CHECK_FALSE(degree_bound_certificate(f2, Species::Com, 5));
  // x of degree -1 alone: suspended degree -2, b_k lands nowhere beyond arity 1
  CHECK(degree_bound_certificate(fixture_F1().space, Species::Lie, 2));
  // sl2 in degree 0: the window closes at arity 2
  auto s = degree_bound_report(fixture_F5().space, Species::Lie, 1);
  CHECK(s.k_max == 2);
  CHECK(s.slices.at(2) > 0);
  CHECK_FALSE(s.certified);
  CHECK(degree_bound_certificate(fixture_F5().space, Species::Lie, 2));
}

TEST_CASE("slice counts against brute-force enumeration") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BasisElement> in;
    int n = 1 + trial % 3;
    for (int i = 0; i < n; ++i) in.push_back({"a" + std::to_string(i), 2 + static_cast<int>(rng() % 3), 0, false});
    auto V = make_space(in);
    auto out = make_space({{"o1", 3, 0, false}, {"o2", 5, 0, false}, {"o3", 7, 0, false}});
    for (bool sym : {false, true}) {
      auto r = degree_bound_report(*V, *out, sym, 0);
      for (const auto& [k, dim] : r.slices) {
        long brute = 0;
        for_each_tuple(*V, k, -1, [&](const Tuple& t) {
          if (sym) {
            for (size_t i = 1; i < t.size(); ++i)
              if (t[i] < t[i - 1] || (t[i] == t[i - 1] && (V->sdeg(t[i]) & 1))) return;
          }
          int s = 0;
          for (int i : t) s += V->sdeg(i);
          for (int o = 0; o < out->dim(); ++o) brute += out->sdeg(o) == s + 1;
        });
        CHECK(dim == Scalar(brute));
      }
    }
  }
}

TEST_CASE("obstruction sequence on strict algebras is empty") {
  for (const char* name : {"F4", "F5", "ground"}) {
    CAPTURE(name);
    auto H = cohomology_algebra(fixture(name)).algebra;
    auto s = strict_structure(H, 5);
    auto r = obstruction_sequence(s, 5);
    CHECK(r.entries.empty());
    CHECK(r.status != ObstructionStatus::nonzero);
  }
}

TEST_CASE("F2 is not formal at k = 3") {
  auto T = transfer_minimal_model(fixture_F2(), 5).minimal;
  auto r = obstruction_sequence(T, 5);
  CHECK(r.kind == ComplexKind::harrison);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].k == 3);
  CHECK(r.entries[0].cocycle);
  CHECK_FALSE(r.entries[0].vanishes);
  CHECK(r.status == ObstructionStatus::nonzero);
  CHECK(r.nonzero_k == 3);
}

TEST_CASE("an exact obstruction is gauged away") {
  std::mt19937 rng(9);
  auto H = cohomology_algebra(fixture_F2()).algebra;
  auto T = strict_structure(H, 5);
  T.species = Species::Ass;
  auto ctx = structure_context(T, ComplexKind::hochschild);
  // a random gauge of the formal structure produces exact b_3, b_4, ...
  auto C = cochain_basis(ctx, 2, 0);
  SVecBuilder v;
  for (int i = 0; i < C.dim(); ++i) v.add(i, Scalar(static_cast<int>(rng() % 5) - 2));
  auto T1 = gauge_transform(T, C.from_coords(v.take()), 5);
  REQUIRE_FALSE(T1.op(3).is_zero());
  auto r = obstruction_sequence(T1, 5);
  REQUIRE_FALSE(r.entries.empty());
  for (const auto& e : r.entries) CHECK(e.vanishes);
  CHECK(r.status == ObstructionStatus::all_vanish);
  for (int k = 3; k <= 5; ++k) CHECK(restrict_inputs(r.gauged.op(k), ctx.input, -1).is_zero());
  CHECK(check_relations(r.gauged, 5).pass);
}

TEST_CASE("Com versus Ass") {
  SUBCASE("F2") {
    auto r = compare_com_vs_ass(fixture_F2(), 4);
    CHECK(r.agree);
    CHECK(r.harrison_verdict.verdict == Verdict::non_formal);
    CHECK(r.harrison_verdict.k == 3);
    CHECK(r.hochschild_verdict.verdict == Verdict::non_formal);
    CHECK(r.hochschild_verdict.k == 3);
  }
  SUBCASE("F4") {
    auto r = compare_com_vs_ass(fixture_F4(), 5);
    CHECK(r.agree);
    CHECK(r.harrison_verdict.verdict == Verdict::certified_formal);
    CHECK(r.hochschild_verdict.verdict == Verdict::certified_formal);
  }
  SUBCASE("Lie input is rejected") { CHECK_THROWS_AS(compare_com_vs_ass(fixture_F5(), 4), InputError); }
}

TEST_CASE("Lie versus Ass") {
  SUBCASE("F1") {
    auto r = compare_lie_vs_ass(fixture_F1(), 5, 4);
    CHECK_FALSE(r.partial);
    CHECK(r.agree);
    CHECK(r.ce_verdict.verdict == Verdict::certified_formal);
    CHECK(r.hochschild_verdict.verdict == Verdict::certified_formal);
  }
  SUBCASE("acyclic") {
    auto r = compare_lie_vs_ass(fixture_acyclic(), 5, 4);
    CHECK_FALSE(r.partial);
    CHECK(r.agree);
    CHECK(r.ce_verdict.verdict == Verdict::certified_formal);
    CHECK(r.hochschild_verdict.verdict == Verdict::certified_formal);
  }
  SUBCASE("F3b") {
    auto r = compare_lie_vs_ass(fixture_F3b(), 4, 3);
    CHECK_MESSAGE(!r.partial, r.partial_reason);
    CHECK(r.ce_verdict.verdict == Verdict::non_formal);
    CHECK(r.ce_verdict.k == 3);
    CHECK(r.hochschild_verdict.verdict == Verdict::non_formal);
    CHECK(r.hochschild_verdict.k == 3);
    CHECK(r.compared_k == 3);
    CHECK(r.alt_is_cocycle);
    CHECK(r.classes_equal);
    CHECK(r.j_injective);
  }
}

TEST_CASE("small truncation gives a partial report") {
  auto r = compare_lie_vs_ass(fixture_F3b(), 4, 2);
  CHECK(r.partial);
  CHECK(r.hochschild_verdict.verdict == Verdict::partial);
  CHECK_FALSE(r.partial_reason.empty());
}

TEST_CASE("verdicts survive basis permutations") {
  std::mt19937 rng(23);
  for (const char* name : {"F2", "F4"}) {
    CAPTURE(name);
    DgAlgebra a = fixture(name);
    auto base = compare_com_vs_ass(a, 4);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> perm(a.dim());
      for (int i = 0; i < a.dim(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      auto r = compare_com_vs_ass(permute_basis(a, perm), 4);
      CHECK(r.harrison_verdict == base.harrison_verdict);
      CHECK(r.hochschild_verdict == base.hochschild_verdict);
    }
  }
  for (const char* name : {"F1", "F3b", "acyclic"}) {
    CAPTURE(name);
    DgAlgebra a = fixture(name);
    auto base = compare_lie_vs_ass(a, 4, 3);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> perm(a.dim());
      for (int i = 0; i < a.dim(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      auto r = compare_lie_vs_ass(permute_basis(a, perm), 4, 3);
      CHECK(r.ce_verdict == base.ce_verdict);
      CHECK(r.hochschild_verdict == base.hochschild_verdict);
    }
  }
}
