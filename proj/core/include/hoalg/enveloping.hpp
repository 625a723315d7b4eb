#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "hoalg/algebras.hpp"
#include "hoalg/multilinear.hpp"
#include "hoalg/opcohomology.hpp"

namespace hoalg {

/// PBW words on an ordered basis of L: weakly increasing, no repeated odd
/// letter. Words are named by joining letter names with `sep`; the empty word
/// is "1" and one-letter words keep the letter's name.
struct PBWBasis {
  std::vector<Tuple> words;
  std::map<Tuple, int> index;
  SpacePtr space;
};
PBWBasis pbw_basis(const GradedSpace& L, int W, const std::string& sep);

/// Envelope of a dgl truncated to word length W. `algebra` is the Ass dga on
/// the PBW words; products are defined when the lengths add up to at most W.
struct Envelope {
  DgAlgebra lie;
  DgAlgebra algebra;
  int W = 0;
  PBWBasis basis;

  /// Normal form of an arbitrary word of length <= W (TruncationOverflow
  /// beyond). `pick` chooses which reducible position to rewrite first
  /// (argument: number of candidates); the default rewrites the leftmost.
  SVec normal_form(const Tuple& word, const std::function<int(int)>& pick = nullptr) const;

 private:
  mutable std::map<Tuple, SVec> cache_;
  friend Envelope envelope(const DgAlgebra& L, int W);
};

/// Throws InputError if L is not a Lie algebra passing its axioms or W < 1.
Envelope envelope(const DgAlgebra& L, int W);

/// UL^ad restricted to word length <= W; the products it needs come from the
/// envelope to length W + 1.
struct AdjointModule {
  Envelope env;       // truncated at W + 1
  SpacePtr space;     // words of length <= W
  LeftModule module;  // g.m = gm - (-1)^{|g||m|} mg
  int W = 0;
};
AdjointModule adjoint_module(const DgAlgebra& L, int W);

/// The Poisson module on Λ^{<= W} L: {g, v_1...v_k} = sum ± v_1..[g,v_i]..v_k.
struct PoissonModule {
  PBWBasis basis;
  LeftModule module;
};
PoissonModule poisson_module(const DgAlgebra& L, int W);

struct EtaReport {
  LinearMap eta;  // Λ^{<=W} L -> UL^ad_{<=W}
  bool bijective = false;
  bool module_map = false;
  std::string witness;
};
/// Symmetrization η(v_1..v_k) = (1/k!) sum_σ ε(σ; v) v_σ... Throws
/// InvariantViolation if η is not a bijective module map.
EtaReport pbw_eta(const AdjointModule& ad, const PoissonModule& pm);

struct RetractionReport {
  LinearMap pi;  // UL^ad_{<=W} -> L
  bool identity_on_L = false;
  bool kills_unit = false;
  bool equivariant = false;
  std::string witness;
};
/// π = pr_1 ∘ η^{-1}. Throws InvariantViolation when a property fails.
RetractionReport summand_retraction(const AdjointModule& ad, const EtaReport& eta);

/// Alt(f) on L-inputs, with values in the module space of `ad`: the graded
/// symmetrization over S_n on suspended degrees (bar form of
/// sum_σ ± f(l_σ(1), ..., l_σ(n))).
Multilinear alt(const AdjointModule& ad, const Multilinear& f);

struct AltCheck {
  bool pass = false;
  bool partial = false;  // truncation too small to evaluate both sides
  std::string detail;
};
/// ∂_CE Alt(f) = Alt(∂_Hoch f) on L-inputs.
AltCheck alt_chain_check(const AdjointModule& ad, const Multilinear& f);

struct QuillenReport {
  // (degree, w) -> (dim of U_{<=w} H(L), dim of H(U_{<=w} L))
  std::map<std::pair<int, int>, std::pair<int, int>> dims;
  bool dims_agree = false;
  bool algebra_iso = false;
  std::string witness;
};
/// Compares UH(L) with H(UL) up to word length W through the natural map
/// [x_1]...[x_k] -> [x_1 ... x_k].
QuillenReport quillen_check(const DgAlgebra& L, int W);

}  // namespace hoalg
