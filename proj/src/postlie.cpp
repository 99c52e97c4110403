#include "rbenv/postlie.hpp"

#include <stdexcept>

namespace rbenv {

Vec StructureTensor::apply(int i, int j) const {
  Vec out(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) out[k] = (*this)(i, j, k);
  return out;
}

Vec StructureTensor::apply(const Vec& a, const Vec& b) const {
  Vec out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      const Rational ab = a[i] * b[j];
      for (int k = 0; k < n_; ++k) out[k] += ab * (*this)(i, j, k);
    }
  }
  return out;
}

Vec unitVec(int n, int i) {
  Vec v(static_cast<std::size_t>(n));
  v[i] = 1;
  return v;
}

Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec operator*(const Rational& c, Vec a) {
  for (auto& v : a) v *= c;
  return a;
}

bool isZero(const Vec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

PostLieAlgebra::PostLieAlgebra(int n, std::vector<std::string> basisNames)
    : dim(n), names(std::move(basisNames)), bracket(n), product(n) {
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
}

void PostLieAlgebra::setBracket(int i, int j, const Vec& v) {
  for (int k = 0; k < dim; ++k) {
    bracket(i, j, k) = v[k];
    bracket(j, i, k) = -v[k];
  }
}

void PostLieAlgebra::setProduct(int i, int j, const Vec& v) {
  for (int k = 0; k < dim; ++k) product(i, j, k) = v[k];
}

namespace {

void checkShape(const PostLieAlgebra& p) {
  if (p.dim <= 0) throw std::invalid_argument("post-Lie algebra must have positive dimension");
  if (p.bracket.dim() != p.dim || p.product.dim() != p.dim)
    throw std::invalid_argument("structure constants do not match the dimension");
  if (static_cast<int>(p.names.size()) != p.dim)
    throw std::invalid_argument("basis names do not match the dimension");
}

void antisymmetryAndJacobi(const StructureTensor& br, std::vector<Violation>& out) {
  const int n = br.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vec r = br.apply(i, j) + br.apply(j, i);
      if (!isZero(r)) out.push_back({"antisymmetry", {i, j}, r});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const Vec ei = unitVec(n, i), ej = unitVec(n, j), ek = unitVec(n, k);
        Vec r = br.apply(ei, br.apply(j, k)) + br.apply(ej, br.apply(k, i)) +
                br.apply(ek, br.apply(i, j));
        if (!isZero(r)) out.push_back({"jacobi", {i, j, k}, r});
      }
}

}  // namespace

std::vector<Violation> validatePostLie(const PostLieAlgebra& p) {
  checkShape(p);
  std::vector<Violation> out;
  antisymmetryAndJacobi(p.bracket, out);
  const int n = p.dim;
  const auto& dot = p.product;
  const auto& br = p.bracket;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vec x = unitVec(n, a), yv = unitVec(n, b), z = unitVec(n, c);
        Vec first = dot.apply(dot.apply(x, yv), z) - dot.apply(x, dot.apply(yv, z)) -
                    dot.apply(dot.apply(yv, x), z) + dot.apply(yv, dot.apply(x, z)) -
                    dot.apply(br.apply(yv, x), z);
        if (!isZero(first)) out.push_back({"post-lie-1", {a, b, c}, first});
        Vec second = dot.apply(x, br.apply(yv, z)) - br.apply(dot.apply(x, yv), z) -
                     br.apply(yv, dot.apply(x, z));
        if (!isZero(second)) out.push_back({"post-lie-2", {a, b, c}, second});
      }
  return out;
}

Vec RBLieAlgebra::applyR(const Vec& v) const {
  Vec out(static_cast<std::size_t>(dim()));
  for (int g = 0; g < dim(); ++g)
    if (v[g] != 0) out = out + v[g] * rAction[g];
  return out;
}

Polynomial RBLieAlgebra::toPolynomial(const Vec& v) const {
  Polynomial out;
  for (int g = 0; g < dim(); ++g) out.addTerm(Word::of(generatorAt(g)), v[g]);
  return out;
}

RBLieAlgebra hatUnchecked(const PostLieAlgebra& p, SignConvention s) {
  checkShape(p);
  const int n = p.dim;
  RBLieAlgebra h;
  h.n = n;
  h.labels = p.names;
  h.bracket = StructureTensor(2 * n);
  const Rational sigma = s.sigma, tau = s.tau, rho = s.rho;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec dab = p.product.apply(a, b);
      const Vec dba = p.product.apply(b, a);
      const Vec m = sigma * dab + tau * dba + rho * p.bracket.apply(a, b);
      for (int k = 0; k < n; ++k) {
        // [y_a, y_b] = m
        h.bracket(a, b, k) = m[k];
        // [y_a, x_b] = m + sigma (a.b)'
        h.bracket(a, n + b, k) = m[k] - sigma * dab[k];
        h.bracket(a, n + b, n + k) = sigma * dab[k];
        // [x_a, y_b] = m + tau (b.a)'
        h.bracket(n + a, b, k) = m[k] - tau * dba[k];
        h.bracket(n + a, b, n + k) = tau * dba[k];
        // [x_a, x_b] = m + m'
        h.bracket(n + a, n + b, n + k) = m[k];
      }
    }
  h.rAction.assign(static_cast<std::size_t>(2 * n), Vec(static_cast<std::size_t>(2 * n)));
  for (int i = 0; i < n; ++i) h.rAction[i][i] = 1;
  return h;
}

RBLieAlgebra hat(const PostLieAlgebra& p, SignConvention s) {
  if (auto v = validatePostLie(p); !v.empty())
    throw std::invalid_argument("not a post-Lie algebra: " + v.front().identity + " fails");
  return hatUnchecked(p, s);
}

std::vector<Violation> validateRBLie(const RBLieAlgebra& h) {
  std::vector<Violation> out;
  antisymmetryAndJacobi(h.bracket, out);
  const int d = h.dim();
  const int n = h.n;
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      const Vec eu = unitVec(d, u), ev = unitVec(d, v);
      const Vec ru = h.applyR(eu), rv = h.applyR(ev);
      Vec r = h.bracketOf(ru, rv) -
              h.applyR(h.bracketOf(ru, ev) + h.bracketOf(eu, rv) + h.weight * h.bracketOf(eu, ev));
      if (!isZero(r)) out.push_back({"rota-baxter", {u, v}, r});
    }
  for (int g = 0; g < d; ++g) {
    const Vec eg = unitVec(d, g);
    Vec r = h.applyR(h.applyR(eg)) + h.weight * h.applyR(eg);
    if (!isZero(r)) out.push_back({"idempotence", {g}, r});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec yy = h.bracket.apply(a, b);
      const Vec xx = h.bracket.apply(n + a, n + b);
      Vec leakY(static_cast<std::size_t>(d)), leakX(static_cast<std::size_t>(d));
      for (int k = 0; k < n; ++k) {
        leakY[n + k] = yy[n + k];
        leakX[k] = xx[k];
      }
      if (!isZero(leakY)) out.push_back({"y-closure", {a, b}, leakY});
      if (!isZero(leakX)) out.push_back({"x-closure", {n + a, n + b}, leakX});
    }
  return out;
}

std::vector<Violation> checkLieMorphism(const PostLieAlgebra& p, const RBLieAlgebra& h) {
  std::vector<Violation> out;
  const int n = p.dim;
  const int d = h.dim();
  auto image = [&](const Vec& v) {
    Vec out2(static_cast<std::size_t>(d));
    for (int k = 0; k < n; ++k) {
      out2[n + k] += v[k];
      out2[k] -= v[k];
    }
    return out2;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec ua = image(unitVec(n, a)), ub = image(unitVec(n, b));
      Vec prod = h.bracketOf(h.applyR(ua), ub) - image(p.product.apply(a, b));
      if (!isZero(prod)) out.push_back({"morphism-product", {a, b}, prod});
      Vec br = h.weight * h.bracketOf(ua, ub) - image(p.bracket.apply(a, b));
      if (!isZero(br)) out.push_back({"morphism-bracket", {a, b}, br});
    }
  return out;
}

ConventionSearch resolveSignConvention(const PostLieAlgebra& p) {
  ConventionSearch res;
  for (int sigma : {-1, 1})
    for (int tau : {-1, 1})
      for (int rho : {-1, 1}) {
        SignConvention s{sigma, tau, rho};
        RBLieAlgebra h = hatUnchecked(p, s);
        if (validateRBLie(h).empty() && checkLieMorphism(p, h).empty()) res.passing.push_back(s);
      }
  if (res.passing.empty()) throw std::logic_error("no sign convention makes the hat algebra valid");
  return res;
}

PostLieAlgebra referencePostLie() {
  PostLieAlgebra p(2);
  p.setBracket(0, 1, {0, 1});
  p.setProduct(0, 1, {0, -1});
  p.setProduct(1, 0, {0, 1});
  return p;
}

void certifyConvention() {
  auto res = resolveSignConvention(referencePostLie());
  if (!res.unique() || res.passing.front() != kWeightMinusOne)
    throw std::logic_error("hat sign convention could not be certified");
}

std::string toString(const Vec& v, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    Rational mag = abs(v[k]);
    if (s.empty()) {
      if (v[k] < 0) s += "-";
    } else {
      s += v[k] < 0 ? " - " : " + ";
    }
    if (mag != 1) s += toString(mag) + "*";
    s += names[k];
  }
  return s.empty() ? "0" : s;
}

}  // namespace rbenv
