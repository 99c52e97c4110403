#include "rbenv/algebra_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rbenv {

namespace {

struct LineReader {
  const std::string& source;
  std::size_t line;

  [[noreturn]] void fail(const std::string& msg) const { throw AlgebraFileError(source, line, msg); }
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool validName(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

class CombParser {
 public:
  CombParser(std::string_view s, const std::map<std::string, int>& names, const LineReader& at)
      : s_(s), names_(names), at_(at) {}

  Vec parse() {
    Vec out(names_.size());
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return out;
      pos_ = save;
    }
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    for (;;) {
      Rational c = sign;
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        c *= rational();
        if (!accept('*')) at_.fail("expected '*' after coefficient");
      }
      const std::string name = identifier();
      auto it = names_.find(name);
      if (it == names_.end()) at_.fail("unknown basis element '" + name + "'");
      out[static_cast<std::size_t>(it->second)] += c;
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) at_.fail("unexpected text '" + std::string(s_.substr(pos_)) + "'");
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string number() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) at_.fail("expected a number");
    return std::string(s_.substr(b, pos_ - b));
  }
  Rational rational() {
    std::string num = number();
    if (!accept('/')) return Rational(num);
    std::string den = number();
    if (mpz_class(den) == 0) at_.fail("zero denominator");
    Rational q(num + "/" + den);
    q.canonicalize();
    return q;
  }
  std::string identifier() {
    skip();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (b == pos_) at_.fail("expected a basis element");
    return std::string(s_.substr(b, pos_ - b));
  }

  std::string_view s_;
  const std::map<std::string, int>& names_;
  const LineReader& at_;
  std::size_t pos_ = 0;
};

}  // namespace

PostLieAlgebra parseAlgebra(std::istream& in, const std::string& source) {
  int dim = 0;
  std::vector<std::string> basis;
  std::map<std::string, int> index;
  std::map<std::pair<int, int>, Vec> brackets, products;
  std::string raw;
  std::size_t lineNo = 0;
  bool sawEntry = false;

  auto setBasis = [&](std::vector<std::string> names, const LineReader& at) {
    index.clear();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!validName(names[i])) at.fail("invalid basis name '" + names[i] + "'");
      if (!index.emplace(names[i], static_cast<int>(i)).second)
        at.fail("duplicate basis name '" + names[i] + "'");
    }
    basis = std::move(names);
  };

  while (std::getline(in, raw)) {
    ++lineNo;
    const LineReader at{source, lineNo};
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream words(line);
    std::string head;
    words >> head;
    if (head == "dim") {
      if (dim != 0) at.fail("dimension given twice");
      std::string n, extra;
      words >> n;
      if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 6)
        at.fail("'dim' expects a positive integer");
      if (words >> extra) at.fail("unexpected text after dimension");
      dim = std::stoi(n);
      if (dim <= 0) at.fail("dimension must be positive");
      std::vector<std::string> names;
      for (int i = 1; i <= dim; ++i) names.push_back("e" + std::to_string(i));
      setBasis(std::move(names), at);
      continue;
    }
    if (dim == 0) at.fail("'dim' must come before any other line");
    if (head == "basis") {
      if (sawEntry) at.fail("'basis' must come before structure constants");
      std::vector<std::string> names;
      for (std::string s; words >> s;) names.push_back(s);
      if (static_cast<int>(names.size()) != dim)
        at.fail("'basis' lists " + std::to_string(names.size()) + " names, expected " +
                std::to_string(dim));
      setBasis(std::move(names), at);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'dim', 'basis' or an entry 'a,b = ...' / 'a . b = ...'");
    std::string lhs = trim(std::string_view(line).substr(0, eq));
    const std::string rhs = trim(std::string_view(line).substr(eq + 1));
    if (rhs.empty()) at.fail("missing right-hand side");

    bool isBracket = false;
    if (lhs.size() >= 2 && lhs.front() == '[' && lhs.back() == ']') {
      lhs = trim(std::string_view(lhs).substr(1, lhs.size() - 2));
      isBracket = true;
    }
    const auto comma = lhs.find(',');
    const auto dot = lhs.find('.');
    if (comma != std::string::npos && dot == std::string::npos) {
      isBracket = true;
    } else if (dot != std::string::npos && comma == std::string::npos && !isBracket) {
      isBracket = false;
    } else {
      at.fail("left-hand side must be 'a,b' or 'a . b'");
    }
    const auto sep = isBracket ? comma : dot;
    const std::string a = trim(std::string_view(lhs).substr(0, sep));
    const std::string b = trim(std::string_view(lhs).substr(sep + 1));
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) at.fail("unknown basis element '" + a + "'");
    if (ib == index.end()) at.fail("unknown basis element '" + b + "'");
    Vec value = CombParser(rhs, index, at).parse();
    auto& table = isBracket ? brackets : products;
    if (!table.emplace(std::pair{ia->second, ib->second}, std::move(value)).second)
      at.fail("entry for (" + a + "," + b + ") given twice");
    sawEntry = true;
  }
  if (dim == 0) throw AlgebraFileError(source, lineNo, "missing 'dim' line");

  PostLieAlgebra p(dim, basis);
  for (const auto& [ij, v] : brackets) {
    const auto [i, j] = ij;
    for (int k = 0; k < dim; ++k) p.bracket(i, j, k) = v[static_cast<std::size_t>(k)];
    if (!brackets.contains({j, i}) && i != j)
      for (int k = 0; k < dim; ++k) p.bracket(j, i, k) = -v[static_cast<std::size_t>(k)];
  }
  for (const auto& [ij, v] : products) p.setProduct(ij.first, ij.second, v);
  return p;
}

PostLieAlgebra loadAlgebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraFileError(path, 0, "cannot open file");
  return parseAlgebra(in, path);
}

namespace {

std::string formatComb(const Vec& v, const std::vector<std::string>& names) {
  return toString(v, names);
}

}  // namespace

std::string formatAlgebra(const PostLieAlgebra& p) {
  std::string out = "dim " + std::to_string(p.dim) + "\nbasis";
  for (const auto& n : p.names) out += " " + n;
  out += "\n";
  for (int i = 0; i < p.dim; ++i)
    for (int j = 0; j < p.dim; ++j) {
      const Vec v = p.bracket.apply(i, j);
      const Vec back = p.bracket.apply(j, i);
      if (i > j && isZero(back + v)) continue;
      if (i <= j && isZero(v) && (i == j || isZero(back))) continue;
      out += p.names[i] + "," + p.names[j] + " = " + formatComb(v, p.names) + "\n";
    }
  for (int i = 0; i < p.dim; ++i)
    for (int j = 0; j < p.dim; ++j) {
      const Vec v = p.product.apply(i, j);
      if (!isZero(v)) out += p.names[i] + " . " + p.names[j] + " = " + formatComb(v, p.names) + "\n";
    }
  return out;
}

}  // namespace rbenv
