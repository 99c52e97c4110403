#include "rbenv/polynomial.hpp"

#include <stdexcept>

namespace rbenv {

std::string toString(const Rational& q) { return q.get_str(); }

Polynomial::Polynomial(const Word& w, const Rational& c) {
  if (c != 0) terms_.emplace(w, c);
}

Rational Polynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::addTerm(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  for (const auto& [w, c] : g.terms_) addTerm(w, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  for (const auto& [w, c] : g.terms_) addTerm(w, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, k] : terms_) k *= c;
  return *this;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  Polynomial out;
  for (const auto& [u, a] : f.terms_)
    for (const auto& [v, b] : g.terms_) out.addTerm(concat(u, v), a * b);
  return out;
}

Polynomial applyR(const Polynomial& f) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) out.addTerm(wrapR(w), c);
  return out;
}

const Word& leading(const Polynomial& f) {
  if (f.isZero()) throw std::domain_error("zero polynomial has no leading word");
  return f.terms().begin()->first;
}

const Rational& leadingCoefficient(const Polynomial& f) {
  if (f.isZero()) throw std::domain_error("zero polynomial has no leading coefficient");
  return f.terms().begin()->second;
}

Polynomial monic(const Polynomial& f) {
  Rational inv = 1 / leadingCoefficient(f);
  return inv * f;
}

Polynomial substitute(const StarWord& q, const Polynomial& f) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) out.addTerm(q.substitute(w), c);
  return out;
}

Polynomial mulLeft(const Word& u, const Polynomial& f) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) out.addTerm(concat(u, w), c);
  return out;
}

Polynomial mulRight(const Polynomial& f, const Word& u) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) out.addTerm(concat(w, u), c);
  return out;
}

std::string toString(const Polynomial& f) {
  if (f.isZero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : f.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) s += toString(mag) + "*";
    s += toString(w);
  }
  return s;
}

}  // namespace rbenv
