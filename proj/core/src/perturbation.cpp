#include "hoalg/perturbation.hpp"

#include <algorithm>

#include "hoalg/errors.hpp"

namespace hoalg {

void certify_filtration(const Contraction& c, const LinearMap& t, const Filtration& F) {
  const int n = c.big.space->dim();
  if (static_cast<int>(F.grading.size()) != n) throw CertificationError("filtration grading has the wrong length");
  if (std::any_of(F.grading.begin(), F.grading.end(), [](int g) { return g < 0; }))
    throw CertificationError("filtration grading must be nonnegative");
  if (F.t_shift - F.h_shift < 1)
    throw CertificationError("declared shifts do not make t h lower the filtration (t_shift - h_shift < 1)");
  for (int j = 0; j < n; ++j) {
    for (const auto& [i, x] : t.cols[j])
      if (F.grading[i] > F.grading[j] - F.t_shift)
        throw CertificationError("t does not lower the filtration by " + std::to_string(F.t_shift) + " on " +
                                 (*c.big.space)[j].name);
    for (const auto& [i, x] : c.h.cols[j])
      if (F.grading[i] > F.grading[j] + F.h_shift)
        throw CertificationError("h raises the filtration by more than " + std::to_string(F.h_shift) + " on " +
                                 (*c.big.space)[j].name);
  }
}

PerturbationResult perturbation_lemma(const Contraction& c, const LinearMap& t, const Filtration& F) {
  const SpacePtr& B = c.big.space;
  if (t.src != B || t.tgt != B) throw InputError("perturbation must be an endomorphism of the big complex");
  if (t.degree != 1) throw InputError("perturbation must have degree +1");
  t.validate();
  LinearMap D = c.big.d.plus(t);
  if (!D.after(D).is_zero()) throw InputError("perturbed differential does not square to zero");
  if (!contraction_defects(c).empty()) throw InputError("input is not a contraction: " + contraction_defects(c).front());
  certify_filtration(c, t, F);

  int top = F.grading.empty() ? 0 : *std::max_element(F.grading.begin(), F.grading.end());
  int bound = top / (F.t_shift - F.h_shift) + 2;
  LinearMap k = c.h;
  LinearMap tk = t.after(k);
  // A = sum_i (t k)^i t, column by column
  PerturbationResult r;
  LinearMap A = LinearMap::zero(B, B, 1);
  for (int j = 0; j < B->dim(); ++j) {
    SVec term = t.cols[j];
    SVecBuilder acc;
    int used = 0;
    while (!term.empty()) {
      if (used >= bound) throw CertificationError("perturbation series does not terminate within the certified bound");
      acc.add(term);
      term = tk.apply(term);
      ++used;
    }
    r.terms = std::max(r.terms, used);
    A.cols[j] = acc.take();
  }

  Contraction& o = r.contraction;
  o.big = CochainComplex{B, D};
  o.small = CochainComplex{c.small.space, c.small.d.plus(c.f.after(A).after(c.g))};
  o.g = c.g.plus(k.after(A).after(c.g));
  o.f = c.f.plus(c.f.after(A).after(k));
  o.h = k.plus(k.after(A).after(k));
  if (!o.small.d.after(o.small.d).is_zero()) throw InvariantViolation("transferred differential does not square to zero");
  auto defects = contraction_defects(o);
  if (!defects.empty()) throw InvariantViolation("perturbed data fails " + defects.front());
  return r;
}

}  // namespace hoalg
