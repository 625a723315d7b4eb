#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hoalg {

/// Exact rational number. gmp keeps it canonical (reduced, positive denominator)
/// after every arithmetic operation.
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& x);

/// Accepts "p", "-p", "p/q"; throws InputError otherwise.
Scalar parse_scalar(std::string_view text);

bool is_zero(const Vec& v);

/// v += c * w
void axpy(Vec& v, const Scalar& c, const Vec& w);

}  // namespace hoalg
