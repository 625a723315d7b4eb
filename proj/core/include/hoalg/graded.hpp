#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hoalg/permutation.hpp"
#include "hoalg/scalar.hpp"

namespace hoalg {

// ---------------------------------------------------------------------------
// Sparse vectors: sorted (index, coefficient) pairs, no stored zeros.

using SVec = std::vector<std::pair<int, Scalar>>;

SVec unit_svec(int i, const Scalar& c = 1);
Scalar coeff(const SVec& v, int i);
/// a + c*b
SVec add(const SVec& a, const Scalar& c, const SVec& b);
SVec scaled(const SVec& v, const Scalar& c);

/// Accumulator for building sparse vectors out of order.
class SVecBuilder {
 public:
  void add(int i, const Scalar& c) {
    if (sgn(c) != 0) acc_[i] += c;
  }
  void add(const SVec& v, const Scalar& c = 1) {
    if (sgn(c) == 0) return;
    for (const auto& [i, x] : v) acc_[i] += c * x;
  }
  SVec take();
  // true iff the accumulated vector is zero (cancelled entries count as zero)
  bool empty() const {
    for (const auto& [i, c] : acc_)
      if (sgn(c) != 0) return false;
    return true;
  }

 private:
  std::map<int, Scalar> acc_;
};

// ---------------------------------------------------------------------------

struct BasisElement {
  std::string name;
  int degree = 0;
  int weight = 0;  // auxiliary grading (word length in envelopes); 0 otherwise
  bool unit = false;
};

class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> basis);

  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisElement& operator[](int i) const { return basis_[i]; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  /// degree of s(e_i); the suspension lowers degree by one
  int sdeg(int i) const { return basis_[i].degree - 1; }
  int weight(int i) const { return basis_[i].weight; }
  std::optional<int> find(const std::string& name) const;
  int index(const std::string& name) const;
  std::map<int, int> dims_by_degree() const;
  std::vector<int> of_degree(int d) const;
  int min_degree() const;
  int max_degree() const;

 private:
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;
SpacePtr make_space(std::vector<BasisElement> basis);

/// Degree of a homogeneous vector, nullopt for zero. Throws InputError if the
/// vector is not homogeneous.
std::optional<int> homogeneous_degree(const GradedSpace& V, const SVec& v);

std::string format_svec(const GradedSpace& V, const SVec& v);

// ---------------------------------------------------------------------------

/// Linear map stored by columns: cols[j] is the image of source basis vector j.
struct LinearMap {
  SpacePtr src, tgt;
  int degree = 0;
  std::vector<SVec> cols;

  static LinearMap zero(SpacePtr src, SpacePtr tgt, int degree);
  static LinearMap identity(SpacePtr V);

  SVec apply(const SVec& v) const;
  /// this ∘ inner
  LinearMap after(const LinearMap& inner) const;
  LinearMap plus(const LinearMap& o, const Scalar& c = 1) const;
  LinearMap scaled(const Scalar& c) const;
  bool is_zero() const;
  bool operator==(const LinearMap& o) const { return cols == o.cols; }
  /// Throws InputError if some entry violates the degree (and dimension) rule.
  void validate() const;
  Scalar entry(int row, int col) const { return coeff(cols[col], row); }
};

// ---------------------------------------------------------------------------

/// Incremental semi-echelon basis with leading-term pivots. Vectors are
/// inserted in order; the first vectors of any dependent family become the
/// pivots, so witnesses are supported on the leftmost independent columns.
class Echelon {
 public:
  explicit Echelon(bool track = false) : track_(track) {}

  /// Returns true if v was independent of everything inserted before. With
  /// tracking on and v dependent, *relation receives the kernel vector
  /// e_id - sum c_j e_j in insertion coordinates.
  bool insert(const SVec& v, SVec* relation = nullptr);
  /// Residual of v after leading-term reduction; zero iff v is in the span.
  /// With tracking on, *combo receives coefficients (insertion coordinates)
  /// with v = sum combo_j v_j + residual.
  SVec reduce(const SVec& v, SVec* combo = nullptr) const;
  bool contains(const SVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  int inserted() const { return inserted_; }

 private:
  bool track_;
  int inserted_ = 0;
  std::unordered_map<int, int> pivot_row_;
  std::vector<SVec> rows_;
  std::vector<SVec> combos_;
};

int rank(const std::vector<SVec>& vectors);
/// Kernel basis of the map whose columns are given; one vector per
/// non-pivot column, in column order (the reduced-echelon free-variable basis).
std::vector<SVec> kernel_basis(const std::vector<SVec>& cols);
/// Leftmost-pivot solution x of sum_j x_j cols[j] = b, or nullopt.
std::optional<SVec> solve_columns(const std::vector<SVec>& cols, const SVec& b);
/// Inverse of a square invertible map; throws InputError otherwise.
LinearMap inverse(const LinearMap& m);

/// Exact decision of map(x) = target. Returns the leftmost-pivot witness or
/// nullopt when target is outside the image.
std::optional<SVec> solve_linear(const LinearMap& map, const SVec& target);

// ---------------------------------------------------------------------------

enum class SignMode { koszul, gamma };

/// Sign picked up when the factors a_0..a_{n-1} (with the given degrees) are
/// rearranged so that position i holds a_{sigma^{-1}(i)}.
int koszul_sign(const Perm& sigma, const std::vector<int>& degrees, SignMode mode = SignMode::koszul);

struct SignedWord {
  int sign = 1;
  std::vector<int> word;
};
/// sigma acting on a word of basis indices of V.
SignedWord permute_tensor(const Perm& sigma, const GradedSpace& V, const std::vector<int>& word,
                          SignMode mode = SignMode::koszul);

// ---------------------------------------------------------------------------

struct CochainComplex {
  SpacePtr space;
  LinearMap d;
  /// Throws InputError if d is not square-zero of degree +1.
  void validate() const;
};

/// sV^i = V^{i+1}, differential -s d s^{-1}. Names get an "s" prefix.
CochainComplex suspend(const CochainComplex& c);

/// f: big -> small, g: small -> big, h: big -> big of degree -1 with
/// f g = id, g f - id = d h + h d, h g = 0, f h = 0, h h = 0.
struct Contraction {
  CochainComplex big, small;
  LinearMap f, g, h;
};

/// Names of the identities that fail (empty when all five hold).
std::vector<std::string> contraction_defects(const Contraction& c);
/// Replaces h by the side-condition-normalized homotopy.
Contraction enforce_side_conditions(const Contraction& c);

struct CohomologyResult {
  SpacePtr H;
  Contraction contraction;  // big = input complex, small = (H, 0)
};

/// Deterministic cohomology with a contraction onto it. With by_weight the
/// basis weights are treated as an extra grading preserved by d and every
/// choice is made weight by weight.
CohomologyResult cohomology_with_contraction(const CochainComplex& c, bool by_weight = false);

}  // namespace hoalg
