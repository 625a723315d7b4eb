#pragma once

#include <vector>

#include "hoalg/graded.hpp"

namespace hoalg {

/// Nonnegative grading on the big complex with declared shifts: t maps grade
/// g into grades <= g - t_shift, h into grades <= g + h_shift. The series
/// terminates when t_shift - h_shift >= 1.
struct Filtration {
  std::vector<int> grading;
  int t_shift = 1;
  int h_shift = 0;
};

struct PerturbationResult {
  Contraction contraction;  // big differential d + t, small d'
  int terms = 0;            // largest number of series terms used on a basis vector
};

/// Checks the declared shifts against t and h entry by entry. Throws
/// CertificationError on violation or when t_shift - h_shift < 1.
void certify_filtration(const Contraction& c, const LinearMap& t, const Filtration& F);

/// Basic perturbation lemma. With the convention g f - id = d h + h d and
/// A = sum_i (t h)^i t: d' = d_s + f A g, g' = g + h A g, f' = f + f A h,
/// h' = h + h A h. Throws InputError when (d + t)^2 != 0 or
/// t has the wrong degree, CertificationError from the certificate, and
/// InvariantViolation if the output fails a contraction identity.
PerturbationResult perturbation_lemma(const Contraction& c, const LinearMap& t, const Filtration& F);

}  // namespace hoalg
