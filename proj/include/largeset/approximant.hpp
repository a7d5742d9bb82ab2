#pragma once

#include <string>
#include <string_view>

#include "largeset/rational.hpp"

namespace largeset {

// A rational stand-in for a (possibly irrational) parameter together with a
// rigorous bound on |true value - value|. Exact inputs have error == 0.
struct Approx {
  Rat value;
  Rat error;
  std::string provenance;  // e.g. "golden@1e-12 -> 1346269/832040", or the literal text

  bool exact() const { return error.sign() == 0; }
};

// Parses either an exact rational ("3/2", "0.25") or a named irrational
// approximant "name@precision". Supported names: golden, e, sqrtN (N a
// non-square positive integer, e.g. sqrt2). The approximant is the first
// continued-fraction convergent p_k/q_k whose bound 1/(q_k q_{k+1}) does not
// exceed the requested precision; that bound is recorded as the error.
Approx parse_approx(std::string_view text);

// Convergent of a named constant with error at most `precision`.
Approx named_approximant(std::string_view name, const Rat& precision);

}  // namespace largeset
