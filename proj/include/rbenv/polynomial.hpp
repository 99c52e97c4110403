#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "rbenv/words.hpp"

namespace rbenv {

using Rational = mpq_class;

std::string toString(const Rational& q);

/// Finite linear combination of words with nonzero rational coefficients,
/// kept sorted descending by the monomial order.
class Polynomial {
 public:
  using Terms = std::map<Word, Rational, WordGreater>;

  Polynomial() = default;
  explicit Polynomial(const Word& w, const Rational& c = 1);
  explicit Polynomial(Generator g, const Rational& c = 1) : Polynomial(Word::of(g), c) {}

  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Word& w) const;

  /// Adds c*w, dropping the term if it cancels.
  void addTerm(const Word& w, const Rational& c);

  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator-(Polynomial f) { return f *= Rational(-1); }
  friend Polynomial operator*(const Rational& c, Polynomial f) { return f *= c; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

/// Termwise R; no reduction.
Polynomial applyR(const Polynomial& f);

/// Leading word; throws std::domain_error on the zero polynomial.
const Word& leading(const Polynomial& f);
const Rational& leadingCoefficient(const Polynomial& f);
/// f scaled to leading coefficient 1; throws std::domain_error on zero.
Polynomial monic(const Polynomial& f);

/// Linear extension of q|_u.
Polynomial substitute(const StarWord& q, const Polynomial& f);

/// Left and right multiplication by a word.
Polynomial mulLeft(const Word& u, const Polynomial& f);
Polynomial mulRight(const Polynomial& f, const Word& u);

/// Canonical rendering, e.g. "R(y1*x1) - 3/2*y1"; zero renders as "0".
std::string toString(const Polynomial& f);

}  // namespace rbenv
