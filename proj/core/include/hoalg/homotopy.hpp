#pragma once

#include <map>
#include <optional>
#include <string>

#include "hoalg/algebras.hpp"
#include "hoalg/multilinear.hpp"

namespace hoalg {

/// P∞ structure in bar form: ops[n] is B_n: (sA)^{⊗n} -> sA of bar degree 1,
/// i.e. b_n of map degree 2 - n. Lie operations are graded symmetric on sA;
/// Com operations are Ass-shaped and vanish on shuffles. Operations above
/// arity_bound are unspecified.
struct PInftyStructure {
  Species species = Species::Ass;
  SpacePtr space;
  std::map<int, Multilinear> ops;
  int arity_bound = 5;
  int max_weight = -1;

  Multilinear op(int n) const;  // zero when absent
  bool minimal() const { return op(1).is_zero(); }
};

/// (A, b1, b2, 0, 0, ...)
PInftyStructure strict_structure(const DgAlgebra& a, int arity_bound = 5);

/// ∞-morphism in bar form: components[n] of bar degree 0 from
/// (s source)^{⊗n} to s target.
struct InftyMorphism {
  Species species = Species::Ass;
  SpacePtr source, target;
  std::map<int, Multilinear> components;
  int arity_bound = 5;
  int max_weight = -1;

  Multilinear component(int n) const;
};

InftyMorphism identity_morphism(const PInftyStructure& s);

struct RelationReport {
  bool pass = true;
  int arity = 0;        // first failing arity
  std::string witness;  // failing input and value
};

/// Arity-k part of F∘(Φ⊗...⊗Φ) summed over the arities of F: the component
/// of the coalgebra map (or coderivation) with corestriction F after Φ.
Multilinear pushforward(Species s, const std::map<int, Multilinear>& F, const std::map<int, Multilinear>& phi, int k,
                        SpacePtr in, int max_weight);
/// Arity-k part of D∘D for the codifferential D with corestriction ops.
Multilinear relation_component(const PInftyStructure& s, int k);

RelationReport check_relations(const PInftyStructure& s, int N);
/// D_tgt Φ = Φ D_src up to arity N.
RelationReport check_morphism(const InftyMorphism& phi, const PInftyStructure& src, const PInftyStructure& tgt,
                              int N);
/// Every map of arity 2..N vanishes on all shuffle images.
RelationReport shuffle_vanishing_check(const std::map<int, Multilinear>& maps, int N);

/// Composition Ψ∘Φ of ∞-morphisms up to arity N.
InftyMorphism compose_morphisms(const InftyMorphism& psi, const InftyMorphism& phi, int N);

struct TransferResult {
  PInftyStructure minimal;    // on H
  InftyMorphism inclusion;    // H -> A, first component g
  Contraction contraction;
};

/// Minimal model on H by the tree formulas; postconditions (relations, the
/// morphism relations, shuffle vanishing for Com) are checked before
/// returning. Throws InputError if the contraction is not one.
TransferResult transfer_minimal_model(const DgAlgebra& a, const Contraction& c, int N);
TransferResult transfer_minimal_model(const DgAlgebra& a, int N, bool by_weight = false);

/// B' = e^{ad phi} B: the structure for which e^phi: B -> B' is an
/// ∞-isomorphism. phi is a single component of bar degree 0 and arity >= 2.
PInftyStructure gauge_transform(const PInftyStructure& s, const Multilinear& phi, int N);

struct NormalizedMorphism {
  InftyMorphism morphism;
  PInftyStructure target;  // the target after the automorphisms applied to it
  bool target_unchanged = true;
  int n = 0;               // first arity >= 3 with a nonzero source operation
};

/// φ'_1 = id via the inverse of the linear part, then φ'_i = 0 for
/// 2 <= i <= n-2 by postcomposing with e^{-Ψ_i}. Throws InputError when φ_1 is
/// not invertible and InvariantViolation if a postcondition fails.
NormalizedMorphism normalize_morphism(const InftyMorphism& psi, const PInftyStructure& source,
                                      const PInftyStructure& target);

/// m_n(x_1..x_n) from the bar value: sign (-1)^{sum_i (n-i)|x_i|}.
int desuspension_sign(const GradedSpace& V, const Tuple& t);

}  // namespace hoalg
