#pragma once

#include <string>
#include <string_view>

#include "hoalg/algebras.hpp"
#include "hoalg/errors.hpp"

namespace hoalg {

/// Syntax or structure error in an algebra file; line and column are 1-based
/// (0 when the error concerns the file as a whole).
class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return msg_; }

 private:
  int line_, column_;
  std::string msg_;
};

/// Parses the text format of docs/format.md. Fills the products implied by
/// the unit and graded (anti)symmetry; axioms are not checked here.
DgAlgebra parse_algebra(std::string_view text);
DgAlgebra load_algebra(const std::string& path);

/// Canonical text: basis in order, nonzero differentials, and the products
/// not implied by the unit or by (anti)symmetry.
std::string serialize_algebra(const DgAlgebra& a);

}  // namespace hoalg
