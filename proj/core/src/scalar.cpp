#include "hoalg/scalar.hpp"

#include <cctype>

#include "hoalg/errors.hpp"

namespace hoalg {

std::string to_string(const Scalar& x) { return x.get_str(); }

Scalar parse_scalar(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
    throw InputError("not a rational number: '" + std::string(text) + "'");
  Scalar out;
  if (slash == std::string_view::npos) {
    out = Scalar(mpz_class(std::string(num)));
  } else {
    mpz_class d(std::string{den});
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    out = Scalar(mpz_class(std::string(num)), d);
    out.canonicalize();
  }
  if (text.front() == '-') out = -out;
  return out;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

void axpy(Vec& v, const Scalar& c, const Vec& w) {
  if (sgn(c) == 0) return;
  for (size_t i = 0; i < w.size(); ++i)
    if (sgn(w[i]) != 0) v[i] += c * w[i];
}

}  // namespace hoalg
