#pragma once

#include <doctest.h>

#include <sstream>
#include <string>

#include "rbenv/algebra_io.hpp"
#include "rbenv/envelope.hpp"
#include "rbenv/expression.hpp"

namespace rbenv::testing {

inline PostLieAlgebra algebraFromText(const std::string& text) {
  std::istringstream in(text);
  return parseAlgebra(in, "<test>");
}

/// [e1,e2] = e2, zero product.
inline PostLieAlgebra algebraE() { return algebraFromText("dim 2\ne1,e2 = e2\n"); }

/// One-dimensional, zero bracket, e.e = e.
inline PostLieAlgebra algebraP1() { return algebraFromText("dim 1\nbasis e\ne . e = e\n"); }

inline PostLieAlgebra algebraSl2() {
  return algebraFromText("dim 3\nbasis h e f\nh,e = 2*e\nh,f = -2*f\ne,f = h\n");
}

inline PostLieAlgebra algebraAbelian(int n) {
  return algebraFromText("dim " + std::to_string(n) + "\n");
}

/// Polynomial from the expression syntax.
inline Polynomial poly(const std::string& text, int dim = 2) { return parsePolynomial(text, dim); }

/// A single word from the expression syntax.
inline Word word(const std::string& text, int dim = 2) {
  const Polynomial f = parsePolynomial(text, dim);
  REQUIRE(f.size() == 1);
  REQUIRE(leadingCoefficient(f) == 1);
  return leading(f);
}

}  // namespace rbenv::testing
