#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoalg/algebras.hpp"
#include "hoalg/multilinear.hpp"
#include "hoalg/symgroup.hpp"

namespace hoalg {

enum class ComplexKind { hochschild, harrison, chevalley_eilenberg };
std::string kind_name(ComplexKind k);

/// Left L-module M; table[x][m] = x.m (unsuspended). With weight_bound >= 0
/// the action is only defined for weight(x) + weight(m) <= weight_bound.
struct LeftModule {
  SpacePtr L, M;
  std::vector<std::vector<SVec>> table;
  int weight_bound = -1;

  SVec act(int x, int m) const;
};

/// Checks [g,h].m = g.(h.m) - (-1)^{|g||h|} h.(g.m) wherever defined. Returns
/// the failing triple, if any.
std::optional<std::string> module_axiom_defect(const LeftModule& M, const DgAlgebra& lie);
LeftModule adjoint_module_of(const DgAlgebra& lie);

/// Everything needed to write down an operadic cochain complex. Cochains are
/// bar-form maps input^{⊗n} -> output (inputs restricted to total weight
/// <= max_weight when nonnegative). `mu` is the bar product or bracket on an
/// ambient space containing input and output by name. With `filtered` only
/// cochains whose outputs have weight <= the total input weight are allowed;
/// on a truncated envelope these form the subcomplex where every product the
/// differential needs is defined.
struct OperadicContext {
  ComplexKind kind = ComplexKind::hochschild;
  SpacePtr input, output;
  int max_weight = -1;
  bool filtered = false;
  Multilinear mu;
  std::optional<LeftModule> module;  // CE with coefficients in module->M
};

/// Hochschild complex of an associative (or commutative) algebra; normalized
/// (unit removed from inputs) when the algebra has a unit and `normalized`.
OperadicContext hochschild_context(const DgAlgebra& a, bool normalized = true);
OperadicContext harrison_context(const DgAlgebra& a, bool normalized = true);
/// CE complex of a Lie algebra with coefficients in itself.
OperadicContext ce_context(const DgAlgebra& lie);
/// CE complex with coefficients in a left module.
OperadicContext ce_context(const DgAlgebra& lie, const LeftModule& M);
/// Context from a bar arity-2 operation on an ambient space.
OperadicContext make_context(ComplexKind kind, const Multilinear& mu, SpacePtr input, SpacePtr output,
                             int max_weight = -1);

Multilinear differential(const OperadicContext& ctx, const Multilinear& f);
/// CE differential with module coefficients written out directly (no bracket
/// machinery). Only for chevalley_eilenberg contexts with a module.
Multilinear ce_module_differential(const OperadicContext& ctx, const Multilinear& f);

/// Coordinates on the cochains of one arity and bar degree. For CE contexts
/// the coordinates are the values on nondecreasing tuples (graded symmetric).
struct CochainBasis {
  SpacePtr input, output;
  int arity = 0;
  int degree = 0;
  int max_weight = -1;
  bool symmetric = false;
  bool filtered = false;
  std::vector<std::pair<Tuple, int>> coords;
  std::map<std::pair<Tuple, int>, int> index;

  int dim() const { return static_cast<int>(coords.size()); }
  Multilinear zero() const;
  Multilinear element(int k) const;
  Multilinear from_coords(const SVec& v) const;
  /// Throws InvariantViolation if f has values outside these coordinates.
  SVec coordinates(const Multilinear& f) const;
};

CochainBasis cochain_basis(const OperadicContext& ctx, int arity, int degree);

/// Harrison cochains: basis (as Hochschild coordinates) of the cochains of
/// the slice that vanish on all shuffle images.
std::vector<SVec> harrison_basis(const CochainBasis& C);
/// True iff f vanishes on every shuffle image mu_{i,n-i}.t.
bool is_shuffle_vanishing(const Multilinear& f);
std::optional<std::string> shuffle_vanishing_defect(const Multilinear& f);

/// The coordinates of the space a context's n-cochains of degree q range over:
/// all of C for Hochschild/CE, the Harrison subspace for Harrison.
std::vector<SVec> context_space(const OperadicContext& ctx, const CochainBasis& C);

struct BarrSplitting {
  int n = 0;
  int dim_hochschild = 0;
  int dim_harrison = 0;
  int dim_w = 0;
  bool direct = false;            // Harr ∩ W = 0 and dims add up
  bool kernels_agree = false;     // ker(e_n action) = shuffle-vanishing
  std::vector<SVec> harrison, w;  // bases in Hochschild coordinates (all bar degrees)
};

/// Splitting C^n_Hoch = C^n_Harr ⊕ W^n for the n-cochains of a commutative
/// algebra (all bar degrees, blockwise over input multisets).
BarrSplitting barr_splitting(const OperadicContext& ctx, int n);

/// Witness theta with ∂theta = f, or nullopt if [f] != 0. Throws InputError
/// when f is not a cocycle. For Harrison contexts the witness is Harrison.
std::optional<Multilinear> is_coboundary(const OperadicContext& ctx, const Multilinear& f);

/// y1 = y - y·e_{n-1}: a Harrison witness for the Harrison cocycle x, given
/// any Hochschild witness y with ∂y = x.
Multilinear hochschild_to_harrison_witness(const OperadicContext& ctx, const Multilinear& x, const Multilinear& y);

/// dim H^{n,p} for n in [n0, n1], unsuspended map degree p in [p0, p1].
std::map<std::pair<int, int>, int> cohomology_slice_dims(const OperadicContext& ctx, int n0, int n1, int p0, int p1);

/// Matrix of ∂ between the context spaces of arity n (bar degree q) and n+1.
struct DifferentialMatrix {
  CochainBasis src, tgt;
  std::vector<SVec> src_space;  // basis of the source context space (in src coords)
  std::vector<SVec> cols;       // ∂ of each src_space vector, in tgt coords
};
DifferentialMatrix differential_matrix(const OperadicContext& ctx, int n, int q);

}  // namespace hoalg
