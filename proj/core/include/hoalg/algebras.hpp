#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hoalg/graded.hpp"
#include "hoalg/multilinear.hpp"

namespace hoalg {

enum class Species { Ass, Com, Lie };

std::string species_name(Species s);
Species parse_species(const std::string& s);
/// Ass -> Ass, Com -> Lie, Lie -> Com
Species koszul_dual(Species s);

/// Strict dg algebra. For Lie the product table holds the bracket.
/// With product_weight_bound >= 0 the product of a and b is only defined when
/// weight(a) + weight(b) <= product_weight_bound (truncated envelopes).
struct DgAlgebra {
  std::string name;
  Species species = Species::Ass;
  SpacePtr space;
  LinearMap d;
  std::vector<std::vector<SVec>> product;  // product[i][j] = e_i e_j
  std::optional<int> unit;
  int product_weight_bound = -1;

  int dim() const { return space->dim(); }
  bool product_defined(int i, int j) const;
  /// Throws TruncationOverflow outside the defined range.
  SVec multiply(const SVec& a, const SVec& b) const;
  SVec mul_basis(int i, int j) const;
  CochainComplex complex() const { return {space, d}; }
};

/// An algebra with empty product and differential on the given space.
DgAlgebra empty_algebra(std::string name, Species species, SpacePtr space);

/// Fills e_j e_i from e_i e_j by graded (anti)symmetry and the unit products,
/// for entries not set explicitly. Throws InputError on contradicting entries.
void complete_products(DgAlgebra& a);

struct AxiomReport {
  bool pass = true;
  std::string identity;
  std::string witness;
};

AxiomReport check_axioms(const DgAlgebra& a);

/// The space with its unit removed (used for normalized cochains).
SpacePtr reduced_space(const SpacePtr& V);

/// B1(sx) = -s(dx), B2(sx, sy) = (-1)^{|x|} s(xy); both on the full space.
Multilinear bar_differential(const DgAlgebra& a);
Multilinear bar_product(const DgAlgebra& a);
/// Inverse of bar_product: reads a strict product table off a bar arity-2 map.
std::vector<std::vector<SVec>> product_from_bar(const Multilinear& b2);

struct CohomologyAlgebra {
  DgAlgebra algebra;     // zero differential
  Contraction contraction;
};

CohomologyAlgebra cohomology_algebra(const DgAlgebra& a, bool by_weight = false);

/// Same algebra with the basis listed in the order perm (new position i holds old perm[i]).
DgAlgebra permute_basis(const DgAlgebra& a, const std::vector<int>& perm);

// Fixture corpus ------------------------------------------------------------

DgAlgebra fixture_F1();       // abelian dgl, x in degree -1
DgAlgebra fixture_F2();       // Heisenberg cdga, dz = xy
DgAlgebra fixture_F3a();      // u(-1), v(-2), zero bracket
DgAlgebra fixture_F3b();      // non-formal two-step dgl
DgAlgebra fixture_F4();       // Q[e]/(e^2), |e| = 2
DgAlgebra fixture_F5();       // sl2 in degree 0
DgAlgebra fixture_acyclic();  // dv = u
DgAlgebra fixture_ground();   // the one-dimensional algebra Q
std::vector<std::string> fixture_names();
DgAlgebra fixture(const std::string& name);

}  // namespace hoalg
