#pragma once

#include <map>
#include <utility>

#include "hoalg/algebras.hpp"
#include "hoalg/multilinear.hpp"

namespace hoalg {

/// Truncated cofree coalgebras on sV: tensor words with deconcatenation (Ass,
/// Com) or symmetric words with the unshuffle coproduct (Lie). Symmetric words
/// are stored as nondecreasing tuples; the empty word is the counit line.
enum class CofreeKind { tensor, symmetric };
CofreeKind cofree_kind(Species s);

using CoElem = std::map<Tuple, Scalar>;
using CoElem2 = std::map<std::pair<Tuple, Tuple>, Scalar>;

struct Cofree {
  CofreeKind kind = CofreeKind::tensor;
  SpacePtr space;
  int max_length = 5;

  /// The basis word for t with its sign (0 if it vanishes, e.g. a repeated
  /// odd letter in the symmetric case).
  std::pair<Tuple, int> canonical(const Tuple& t) const;
  CoElem word(const Tuple& t) const;
  /// All basis words of the given length.
  std::vector<Tuple> words(int length) const;

  CoElem2 coproduct(const CoElem& x) const;
  /// Coderivation with corestriction components theta (arity -> map).
  CoElem coderivation(const std::map<int, Multilinear>& theta, const CoElem& x) const;
  /// Coalgebra morphism with components phi (arity -> map, same degree 0).
  CoElem morphism(const std::map<int, Multilinear>& phi, const CoElem& x) const;
  /// e^{c theta}(x) as a finite sum.
  CoElem exp(const std::map<int, Multilinear>& theta, const CoElem& x, const Scalar& c = 1) const;
  /// Word-length-one part as a vector of the space.
  SVec corestrict(const CoElem& x) const;
};

void add_into(CoElem& acc, const CoElem& x, const Scalar& c = 1);
CoElem prune(CoElem x);

/// e^theta for a degree 0 coderivation lowering word length by i >= 1 (all
/// components of arity i+1), as the components pr_1 ∘ e^theta of arities
/// 1..W. Throws InputError on a wrong degree or arity.
std::map<int, Multilinear> exp_coderivation(Species s, const std::map<int, Multilinear>& theta, int W);

}  // namespace hoalg
