#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoalg/multilinear.hpp"
#include "hoalg/permutation.hpp"
#include "hoalg/scalar.hpp"

namespace hoalg {

/// Element of the group algebra Q[S_n]. Product: (sigma*tau) applies tau first.
struct GroupAlgebraElement {
  int n = 0;
  std::map<Perm, Scalar> terms;  // no zero coefficients

  static GroupAlgebraElement identity(int n);
  GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
  GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
  GroupAlgebraElement scaled(const Scalar& c) const;
  bool operator==(const GroupAlgebraElement& o) const { return n == o.n && terms == o.terms; }
  void add_term(const Perm& p, const Scalar& c);
  /// Coordinates in the lexicographic basis of S_n.
  Vec dense() const;
  std::string str() const;
};

GroupAlgebraElement shuffle_element(int p, int q);
GroupAlgebraElement total_shuffle(int n);

struct BarrIdempotent {
  GroupAlgebraElement e;
  /// e = sum_k poly[k] mu_n^k; poly[0] = 0
  std::vector<Scalar> poly;
  /// minimal polynomial of mu_n, low degree first
  std::vector<Scalar> minimal_polynomial;
};

constexpr int kDefaultBarrCap = 5;

/// Projection onto the image of left multiplication by mu_n along its kernel,
/// as a constant-free polynomial in mu_n. Idempotence and e mu_{i,n-i} =
/// mu_{i,n-i} are checked before returning. Cached per n.
const BarrIdempotent& barr_idempotent(int n, int cap = kDefaultBarrCap);

/// Right action on cochains: (f·x)(t) = sum_sigma x_sigma f(sigma.t), where
/// sigma.t permutes suspended factors with gamma signs.
Multilinear act(const Multilinear& f, const GroupAlgebraElement& x);

struct DgAlgebra;

struct ChainCompatibilityReport {
  bool pass = true;
  int n = 0;
  int checked = 0;
  std::string counterexample;
};

/// Checks ∂(f·e_n) = (∂f)·e_{n+1} on every basis cochain of the Hochschild
/// slice C^n of the algebra. `e_n`, `e_np1` default to the Barr idempotents.
ChainCompatibilityReport verify_chain_compatibility(int n, const DgAlgebra& algebra,
                                                    const GroupAlgebraElement* e_n = nullptr,
                                                    const GroupAlgebraElement* e_np1 = nullptr);

}  // namespace hoalg
