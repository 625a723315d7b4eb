#pragma once

#include <functional>
#include <map>
#include <vector>

#include "hoalg/graded.hpp"

namespace hoalg {

using Tuple = std::vector<int>;

/// Multilinear map (sV)^{⊗n} -> sW in bar form. `degree` is its degree as a
/// map between suspended spaces: sdeg(out) = sum sdeg(in) + degree. Values are
/// stored only where nonzero. A nonnegative max_weight restricts the domain to
/// input tuples of total weight at most max_weight.
struct Multilinear {
  SpacePtr in, out;
  int arity = 0;
  int degree = 0;
  int max_weight = -1;
  std::map<Tuple, SVec> values;

  static Multilinear zero(SpacePtr in, SpacePtr out, int arity, int degree, int max_weight = -1);

  const SVec& at(const Tuple& t) const;
  void accumulate(const Tuple& t, const SVec& v, const Scalar& c = 1);
  bool is_zero() const { return values.empty(); }
  Multilinear plus(const Multilinear& o, const Scalar& c = 1) const;
  Multilinear scaled(const Scalar& c) const;
  bool operator==(const Multilinear& o) const { return values == o.values; }

  int tuple_sdeg(const Tuple& t) const;
  int tuple_weight(const Tuple& t) const;
  bool in_domain(const Tuple& t) const;
  /// Throws InputError on entries violating the degree rule or the domain.
  void validate() const;
};

/// Unsuspended map degree of a bar-form operation of the given arity.
inline int unsuspended_degree(int arity, int bar_degree) { return bar_degree - arity + 1; }
inline int bar_degree(int arity, int map_degree) { return map_degree + arity - 1; }

void for_each_tuple(const GradedSpace& V, int n, int max_weight, const std::function<void(const Tuple&)>& fn);

/// Index translation between spaces by basis name. Entries: target index,
/// kDropped for a unit absent from the target, kMissing otherwise.
constexpr int kDropped = -1;
constexpr int kMissing = -2;
std::vector<int> name_map(const GradedSpace& from, const GradedSpace& to);
/// Throws TruncationOverflow when a nonzero coefficient sits on a missing name.
SVec map_vec(const SVec& v, const std::vector<int>& m, const GradedSpace& from);

/// Same map with outputs re-expressed in `out` (matched by name).
Multilinear retarget(const Multilinear& f, SpacePtr out);
/// Restriction to the input space `in` (matched by name) and weight bound.
Multilinear restrict_inputs(const Multilinear& f, SpacePtr in, int max_weight);

/// f ∘_r g: (-1)^{|g| (sdeg x_0 + ... + sdeg x_{r-1})} f(x_0..x_{r-1}, g(x_r..), ..).
/// The result lives on tuples of `in` with total weight <= max_weight.
Multilinear compose_at(const Multilinear& f, int r, const Multilinear& g, SpacePtr in, int max_weight);
Multilinear compose(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight);
/// [f, g] = f∘g - (-1)^{|f||g|} g∘f
Multilinear gerstenhaber(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight);

/// Symmetric insertion: sum over (m, n-1)-unshuffles S of eps(S) f(g(x_S), x_rest).
Multilinear nr_compose(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight);
Multilinear nr_bracket(const Multilinear& f, const Multilinear& g, SpacePtr in, int max_weight);

/// F(G_0(x_{block 0}) ⊗ ... ⊗ G_{k-1}(x_{block k-1})) with consecutive blocks,
/// summed over all block-size compositions admitted by the given maps.
/// `gs[i]` lists the candidate maps for slot i, keyed by arity.
Multilinear compose_tensor(const Multilinear& F, const std::vector<std::map<int, Multilinear>>& gs, int n,
                           SpacePtr in, int max_weight);

/// Symmetric analogue: (1/k!) sum over ordered partitions of the inputs into
/// k = F.arity blocks of eps F(G(x_{B_0}), ..., G(x_{B_{k-1}})), G picked by
/// block size from `gs`.
Multilinear compose_symmetric(const Multilinear& F, const std::map<int, Multilinear>& gs, int n, SpacePtr in,
                              int max_weight);

/// Evaluation of f on a tensor of vectors (one SVec per slot).
SVec eval_tensor(const Multilinear& f, const std::vector<SVec>& xs);

/// Linear map postcomposed: m ∘ f (no sign, m acts last).
Multilinear postcompose(const LinearMap& m, const Multilinear& f);
/// Arity-one bar map with the same matrix.
Multilinear from_linear(const LinearMap& m, int max_weight = -1);

/// f ∘ sigma summed over S_n with Koszul (or gamma) signs on suspended degrees:
/// (sym f)(x) = sum_sigma sign(sigma; x) f(sigma.x).
Multilinear symmetrize(const Multilinear& f, SignMode mode);
/// First tuple where f fails graded symmetry f(sigma.x) = sign f(x), if any.
std::optional<Tuple> symmetry_defect(const Multilinear& f, SignMode mode);

/// Sign and image of a word of suspended degrees under sigma (left action).
SignedWord act_on_word(const Perm& sigma, const GradedSpace& V, const Tuple& t, SignMode mode);

std::string format_tuple(const GradedSpace& V, const Tuple& t);

}  // namespace hoalg
