#pragma once

#include <memory>
#include <string>

#include "nckit/ncpoly.hpp"

namespace nckit {

// Parses a polynomial expression over the alphabet's generator names.
//
// Grammar: rational literals (`3`, `1/2`), `zeta(m)` scalars, generator
// identifiers, `+ - * ^ ( )`.  `*` is the noncommutative product and is
// left-associative; `^` binds tightest and takes a nonnegative integer
// exponent; unary minus is allowed.  Errors carry the 1-based position of
// the offending token.  The output of NcPoly::str() always re-parses to an
// equal polynomial.
NcPoly parse_poly(const std::string& src, std::shared_ptr<const Alphabet> alpha);

}  // namespace nckit
