#pragma once

// The enveloping quotient of a hat algebra: its rule source, irreducible
// words, relation instances, the postassociative operations on normal forms
// and the end-to-end embedding checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rbenv/gsb.hpp"
#include "rbenv/postlie.hpp"
#include "rbenv/rewrite.hpp"

namespace rbenv {

enum class RuleVariant : std::uint8_t {
  Extended,  // general single-letter shapes 8+ / 9+ (confluent)
  Printed,   // only the literal shapes 6-10 (kept for comparison)
};

struct RuleOptions {
  RuleVariant variant = RuleVariant::Extended;
  bool dropAlmostRB = false;
  /// Flips the sign of the bracket term in the commutation rule for this
  /// ordered generator pair (lhs = first*second).
  std::optional<std::pair<Generator, Generator>> negatedBracket;
};

/// R(a)R(b) -> R(R(a)b + aR(b) + lambda*ab) without any restriction on a, b.
RewriteRule almostRBRule(const Word& a, const Word& b, const Rational& lambda, Family family);

/// Rewrites the leftmost-outermost occurrence of r.lhs in every support word
/// that contains it; words without an occurrence are kept.
Polynomial applyRule(const Polynomial& f, const RewriteRule& r);

class EnvelopeRules : public RuleSource {
 public:
  explicit EnvelopeRules(const RBLieAlgebra& h, RuleOptions options = {});

  std::vector<RewriteRule> rulesAt(std::span<const Letter> letters,
                                   std::size_t pos) const override;

  /// Commutation rule with lhs a*b (a > b), or nullopt.
  std::optional<RewriteRule> commute(Generator a, Generator b) const;
  /// Rule with lhs R(arg), or nullopt when arg has mixed or R-only top level.
  std::optional<RewriteRule> singleLetter(const Word& arg) const;
  /// Rule with lhs R(a)R(b) for a, b both outside the pure words, or nullopt.
  std::optional<RewriteRule> almostRB(const Word& a, const Word& b) const;

  /// [a,b] in the hat algebra as a degree-one polynomial.
  const Polynomial& bracket(Generator a, Generator b) const;
  const Rational& weight() const { return lambda_; }
  int dim() const { return n_; }
  const RuleOptions& options() const { return options_; }

 private:
  int index(Generator g) const;

  int n_ = 0;
  Rational lambda_;
  std::vector<Polynomial> brackets_;  // 2n x 2n, row-major by hat index
  RuleOptions options_;
};

/// The hat algebra together with the rule source of its enveloping quotient.
struct EnvelopeContext {
  RBLieAlgebra hat;
  EnvelopeRules rules;

  explicit EnvelopeContext(RBLieAlgebra h, RuleOptions options = {})
      : hat(std::move(h)), rules(hat, std::move(options)) {}
  EnvelopeContext(const EnvelopeContext&) = delete;
  EnvelopeContext& operator=(const EnvelopeContext&) = delete;
};

EnvelopeRules buildRuleSource(const RBLieAlgebra& h, RuleOptions options = {});

/// Irreducible words fitting the bounds, ascending.
std::vector<Word> irrWords(const RuleSource& rules, int dim, Bounds bounds);
inline std::vector<Word> irrWords(const EnvelopeContext& ctx, int maxDeg, int maxDegR) {
  return irrWords(ctx.rules, ctx.hat.n, {maxDeg, maxDegR});
}

/// Monic relation instances whose leading word fits the bounds, sorted by
/// leading word. Parameters of R-letters are irreducible words outside the
/// pure words; blocks are sorted pure words. With pureReading, instances of
/// the RB relation with at least one pure argument are added as PureRB.
std::vector<RelationInstance> instantiateRelations(const EnvelopeContext& ctx, int maxDeg,
                                                   int maxDegR, bool pureReading = true);

/// x_i - y_i for 1 <= i <= n; throws std::out_of_range otherwise.
Polynomial embed(const RBLieAlgebra& h, int i);
/// Linear extension of embed to coordinates in the source basis.
Polynomial embed(const RBLieAlgebra& h, const Vec& v);

struct PostProducts {
  Polynomial succ;  // P(u)v
  Polynomial prec;  // uP(v)
  Polynomial dot;   // lambda*uv
};

struct DerivedPostLie {
  Polynomial product;  // [P(u), v]
  Polynomial bracket;  // lambda*[u, v]
};

/// Operations of the quotient on normal forms, with word-level caches.
/// Not thread-safe; use one per thread.
class Quotient {
 public:
  explicit Quotient(const EnvelopeContext& ctx) : ctx_(ctx), nf_(ctx.rules) {}

  Polynomial normalForm(const Polynomial& f) { return nf_(f); }
  Polynomial mul(const Polynomial& u, const Polynomial& v);
  Polynomial P(const Polynomial& u);
  Polynomial succ(const Polynomial& u, const Polynomial& v);
  Polynomial prec(const Polynomial& u, const Polynomial& v);
  Polynomial dot(const Polynomial& u, const Polynomial& v);

  Normalizer& normalizer() { return nf_; }
  const EnvelopeContext& context() const { return ctx_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Word, Word>& p) const {
      return p.first.hash() * 0x9e3779b97f4a7c15ULL ^ p.second.hash();
    }
  };
  using PairCache = std::unordered_map<std::pair<Word, Word>, Polynomial, PairHash>;

  const Polynomial& mulWords(const Word& a, const Word& b);
  const Polynomial& pWord(const Word& a);

  const EnvelopeContext& ctx_;
  Normalizer nf_;
  PairCache mul_;
  std::unordered_map<Word, Polynomial, WordHash> p_;
};

PostProducts postOps(const EnvelopeContext& ctx, const Polynomial& u, const Polynomial& v);
DerivedPostLie derivedPostLie(const EnvelopeContext& ctx, const Polynomial& u,
                              const Polynomial& v);

struct MorphismEntry {
  int a = 0;  // 0-based source indices
  int b = 0;
  Polynomial product;
  Polynomial expectedProduct;
  Polynomial bracket;
  Polynomial expectedBracket;
  bool productOk() const { return product == expectedProduct; }
  bool bracketOk() const { return bracket == expectedBracket; }
};

struct EmbeddingReport {
  std::vector<Polynomial> images;
  bool supportsIrreducible = true;
  bool supportsDistinct = true;
  int rank = 0;
  std::vector<MorphismEntry> table;  // all ordered pairs (a, b)

  bool independent() const {
    return supportsIrreducible && supportsDistinct && rank == static_cast<int>(images.size());
  }
  bool morphism() const;
  bool pass() const { return independent() && morphism(); }
};

/// Builds hat(p) (throws on invalid input) and checks the embedding.
EmbeddingReport verifyEmbedding(const PostLieAlgebra& p);
/// Checks p's structure constants against an existing quotient.
EmbeddingReport verifyEmbedding(const PostLieAlgebra& p, const EnvelopeContext& ctx);

struct PostIdentityOptions {
  int maxDeg = 2;
  int maxDegR = 1;
  int threads = 1;
  /// Uses (x>y + y>x + x.y)>z = x>(y>z) as the third identity.
  bool printedThirdIdentity = false;
};

struct PostViolation {
  int identity = 0;  // 1..7
  Word x, y, z;
  Polynomial residual;  // lhs - rhs
};

struct PostIdentityReport {
  std::size_t words = 0;
  std::size_t triples = 0;
  std::size_t violationCount = 0;
  std::vector<PostViolation> violations;  // first kMaxListed in triple order
  bool pass() const { return violationCount == 0; }

  static constexpr std::size_t kMaxListed = 100;
};

std::string_view postIdentityText(int identity, bool printedThird = false);

/// lhs - rhs of identity k (1..7) for the triple (x, y, z).
Polynomial postIdentityResidual(Quotient& q, int identity, const Polynomial& x,
                                const Polynomial& y, const Polynomial& z,
                                bool printedThird = false);

PostIdentityReport verifyPostassociative(const EnvelopeContext& ctx,
                                         const PostIdentityOptions& options = {});

struct RBQuotientFailure {
  Word a, b;
  Polynomial lhs;
  Polynomial rhs;
};

/// NF(R(a)R(b)) == NF(R(R(a)b + aR(b) + lambda*ab)) for all irreducible a, b
/// within the bounds.
std::vector<RBQuotientFailure> checkRBInQuotient(const EnvelopeContext& ctx, Bounds bounds);

}  // namespace rbenv
