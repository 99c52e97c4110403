#include "rbenv/expression.hpp"

#include <cctype>

namespace rbenv {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int dim) : s_(text), dim_(dim) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peekDigit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  Expr expr() {
    Expr sum;
    sum.kind = Expr::Kind::Sum;
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    for (;;) {
      sum.signs.push_back(sign);
      sum.children.push_back(term());
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        break;
      }
    }
    return sum;
  }

  Expr term() {
    Expr t;
    t.kind = Expr::Kind::Term;
    if (peekDigit()) {
      const std::size_t at = pos_;
      std::string num = digits();
      if (accept('/')) {
        std::string den = digits();
        if (mpz_class(den) == 0) fail("zero denominator");
        Rational q(num + "/" + den);
        q.canonicalize();
        t.coefficient = q;
      } else {
        t.coefficient = Rational(num);
      }
      if (!accept('*')) {
        if (*t.coefficient != 0) throw ParseError("a constant is not an element of the algebra", at);
        Expr z;
        z.kind = Expr::Kind::Zero;
        return z;
      }
    }
    t.children.push_back(factor());
    while (accept('*')) t.children.push_back(factor());
    return t;
  }

  Expr factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr p;
      p.kind = Expr::Kind::Paren;
      p.children.push_back(expr());
      expect(')');
      return p;
    }
    if (c == 'R') {
      ++pos_;
      expect('(');
      Expr r;
      r.kind = Expr::Kind::R;
      r.children.push_back(expr());
      expect(')');
      return r;
    }
    if (c == 'x' || c == 'y') {
      const std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected a generator index");
      const std::string idx = digits();
      const long i = idx.size() > 9 ? -1 : std::stol(idx);
      if (i < 1 || i > dim_)
        throw ParseError("unknown generator " + std::string(1, c) + idx, at);
      Expr g;
      g.kind = Expr::Kind::Gen;
      g.gen = {c == 'x' ? GenKind::X : GenKind::Y, static_cast<int>(i)};
      return g;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parseExpression(std::string_view text, int dim) { return Parser(text, dim).parse(); }

std::string toString(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Zero: return "0";
    case Expr::Kind::Gen: return toString(e.gen);
    case Expr::Kind::R: return "R(" + toString(e.children.front()) + ")";
    case Expr::Kind::Paren: return "(" + toString(e.children.front()) + ")";
    case Expr::Kind::Term: {
      std::string s = e.coefficient ? toString(*e.coefficient) + "*" : "";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += "*";
        s += toString(e.children[i]);
      }
      return s;
    }
    case Expr::Kind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i == 0) {
          if (e.signs[i] < 0) s += "-";
        } else {
          s += e.signs[i] < 0 ? " - " : " + ";
        }
        s += toString(e.children[i]);
      }
      return s;
    }
  }
  return {};
}

Polynomial evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Zero: return {};
    case Expr::Kind::Gen: return Polynomial(e.gen);
    case Expr::Kind::R: return applyR(evaluate(e.children.front()));
    case Expr::Kind::Paren: return evaluate(e.children.front());
    case Expr::Kind::Term: {
      Polynomial p = evaluate(e.children.front());
      for (std::size_t i = 1; i < e.children.size(); ++i) p = p * evaluate(e.children[i]);
      if (e.coefficient) p *= *e.coefficient;
      return p;
    }
    case Expr::Kind::Sum: {
      Polynomial p;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (e.signs[i] < 0) {
          p -= evaluate(e.children[i]);
        } else {
          p += evaluate(e.children[i]);
        }
      }
      return p;
    }
  }
  return {};
}

}  // namespace rbenv
