#pragma once

// Finite-dimensional post-Lie algebras by structure constants, their
// validation, and the doubling into a Lie algebra with a Rota-Baxter operator
// of weight -1 written in the x/y basis.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rbenv/polynomial.hpp"

namespace rbenv {

/// Coordinates of an element in a fixed basis.
using Vec = std::vector<Rational>;

/// T(i,j) = sum_k t[i][j][k] e_k for a bilinear map on an n-dimensional space.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n) {}

  int dim() const { return n_; }
  Rational& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  const Rational& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  Vec apply(int i, int j) const;
  Vec apply(const Vec& a, const Vec& b) const;

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_ = 0;
  std::vector<Rational> data_;
};

Vec unitVec(int n, int i);
Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(const Rational& c, Vec a);
bool isZero(const Vec& v);

struct PostLieAlgebra {
  int dim = 0;
  std::vector<std::string> names;
  StructureTensor bracket;  // [e_i, e_j]
  StructureTensor product;  // e_i . e_j

  PostLieAlgebra() = default;
  explicit PostLieAlgebra(int n, std::vector<std::string> basisNames = {});

  /// Sets [e_i,e_j] = v and [e_j,e_i] = -v.
  void setBracket(int i, int j, const Vec& v);
  void setProduct(int i, int j, const Vec& v);
};

struct Violation {
  std::string identity;
  std::vector<int> indices;  // basis or generator indices, 0-based
  Vec residual;
};

/// Antisymmetry, Jacobi and the two post-Lie identities on all basis triples.
/// Throws std::invalid_argument on malformed constants (wrong dimensions).
std::vector<Violation> validatePostLie(const PostLieAlgebra& p);

/// Hat bracket scalars: [a,b]^ = sigma a.b + tau b.a + rho [a,b],
/// [a,b']^ = sigma (a.b)', [a',b]^ = tau (b.a)', [a',b']^ = rho [a,b]'.
struct SignConvention {
  int sigma = -1;
  int tau = 1;
  int rho = -1;
  friend bool operator==(const SignConvention&, const SignConvention&) = default;
};

inline constexpr SignConvention kWeightMinusOne{-1, 1, -1};

/// 2n-dimensional Lie algebra on y_1..y_n, x_1..x_n (indices 0..n-1 and
/// n..2n-1) with R(y_i) = y_i, R(x_i) = 0 of weight -1.
struct RBLieAlgebra {
  int n = 0;
  std::vector<std::string> labels;  // labels of the source basis
  StructureTensor bracket;          // over the 2n generators
  std::vector<Vec> rAction;         // rAction[g] = R(generator g)
  Rational weight = -1;

  int dim() const { return 2 * n; }
  int indexOf(Generator g) const {
    return (g.kind == GenKind::Y ? 0 : n) + g.index - 1;
  }
  Generator generatorAt(int idx) const {
    return idx < n ? y(idx + 1) : x(idx - n + 1);
  }
  Vec applyR(const Vec& v) const;
  Vec bracketOf(const Vec& a, const Vec& b) const { return bracket.apply(a, b); }
  /// sum_k v_k g_k as a degree-one polynomial.
  Polynomial toPolynomial(const Vec& v) const;
  std::string generatorName(int idx) const { return toString(generatorAt(idx)); }
};

/// Doubling of a post-Lie algebra; does not validate its input.
RBLieAlgebra hatUnchecked(const PostLieAlgebra& p, SignConvention s = kWeightMinusOne);

/// Throws std::invalid_argument if validatePostLie reports violations.
RBLieAlgebra hat(const PostLieAlgebra& p, SignConvention s = kWeightMinusOne);

/// Antisymmetry, Jacobi, the RB identity of weight -1, R^2 = R, and
/// closure of Span{x} and Span{y} under the bracket.
std::vector<Violation> validateRBLie(const RBLieAlgebra& h);

/// Images x_i - y_i of the source basis satisfy product = [R u, v] and
/// bracket = weight*[u, v] in the hat algebra.
std::vector<Violation> checkLieMorphism(const PostLieAlgebra& p, const RBLieAlgebra& h);

struct ConventionSearch {
  std::vector<SignConvention> passing;
  bool unique() const { return passing.size() == 1; }
};

/// Tries all eight sign assignments against validateRBLie and the morphism
/// check. Throws std::logic_error if none passes.
ConventionSearch resolveSignConvention(const PostLieAlgebra& p);

/// Two-dimensional algebra with nonzero bracket and product on which the sign
/// search has a unique answer: [e1,e2] = e2, e1.e2 = -e2, e2.e1 = e2.
PostLieAlgebra referencePostLie();

/// Certifies kWeightMinusOne on referencePostLie(); throws std::logic_error
/// when the search does not return exactly that assignment.
void certifyConvention();

std::string toString(const Vec& v, const std::vector<std::string>& names);

}  // namespace rbenv
