#pragma once

// Concrete syntax for elements of the free RB algebra:
//
//   expr     := sign? term (('+' | '-') term)*
//   term     := (rational '*')? factor ('*' factor)*  |  '0'
//   factor   := generator | 'R' '(' expr ')' | '(' expr ')'
//   rational := integer ('/' positive-integer)?
//   generator:= ('x' | 'y') index
//
// Whitespace is insignificant. The printed form of a tree reparses to the
// same tree, and the printed form of a Polynomial parses to that polynomial.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbenv/polynomial.hpp"

namespace rbenv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Expr {
  enum class Kind { Sum, Term, Gen, R, Paren, Zero };

  Kind kind = Kind::Zero;
  std::vector<Expr> children;   // Sum: terms; Term: factors; R, Paren: one child
  std::vector<int> signs;       // Sum: +1 / -1 per term
  std::optional<Rational> coefficient;  // Term
  Generator gen;                // Gen

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Throws ParseError on syntax errors and on generator indices outside 1..dim.
Expr parseExpression(std::string_view text, int dim);

std::string toString(const Expr& e);
Polynomial evaluate(const Expr& e);

inline Polynomial parsePolynomial(std::string_view text, int dim) {
  return evaluate(parseExpression(text, dim));
}

}  // namespace rbenv
