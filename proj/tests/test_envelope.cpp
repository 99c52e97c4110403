#include <algorithm>
#include <random>

#include "chains.hpp"
#include "rbenv/confluence.hpp"
#include "support.hpp"

using namespace rbenv;
using namespace rbenv::testing;

namespace {

std::vector<std::string> rendered(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(toString(w));
  return out;
}

}  // namespace

TEST_SUITE("envelope") {

TEST_CASE("rule source recognizes the defining shapes") {
  EnvelopeContext ctx(hat(algebraE()));
  const auto swap = ctx.rules.query(word("x1*y1"));
  REQUIRE(swap.size() == 1);
  CHECK(familyTag(swap[0].rule.family) == "5");
  CHECK(swap[0].rule.replacement == poly("y1*x1") + ctx.rules.bracket(x(1), y(1)));

  const auto longRel = ctx.rules.query(word("R(R(y1*x1)*y2*R(y1*x1))"));
  REQUIRE_FALSE(longRel.empty());
  CHECK(familyTag(longRel[0].rule.family) == "8");
  CHECK(longRel[0].rule.replacement == poly("R(y1*x1)*y2*R(y1*x1)"));

  const auto rb = ctx.rules.query(word("R(y1*x1)*R(y2*x1)"));
  REQUIRE(rb.size() == 1);
  CHECK(familyTag(rb[0].rule.family) == "11");
  CHECK(rb[0].rule.replacement ==
        poly("R(R(y1*x1)*y2*x1 + y1*x1*R(y2*x1) - y1*x1*y2*x1)"));
}

TEST_CASE("single-letter families and their tags") {
  EnvelopeContext ctx(hat(algebraE()));
  auto tag = [&](const char* arg) {
    const auto r = ctx.rules.singleLetter(word(arg));
    return r ? std::string(familyTag(r->family)) : std::string("-");
  };
  CHECK(tag("y2*y1") == "6");
  CHECK(tag("x1*x2") == "7");
  CHECK(tag("R(y1*x1)*y2*R(y1*x1)") == "8");
  CHECK(tag("R(y1*x1)*y2") == "8+");
  CHECK(tag("R(y1*x1)*x1*R(y1*x2)") == "9");
  CHECK(tag("R(y1*x1)*x1") == "10");
  CHECK(tag("x2*R(y1*x1)") == "10");
  CHECK(tag("x1*R(y1*x1)*x1") == "9+");
  CHECK(tag("y1*x1") == "-");
  CHECK(tag("R(y1*x1)") == "-");

  CHECK(ctx.rules.singleLetter(word("x1*R(y1*x1)*x1"))->replacement == poly("R(x1*y1*x1*x1)"));
  CHECK(ctx.rules.singleLetter(word("R(y1*x1)*y2"))->replacement == poly("R(y1*x1)*y2"));
}

TEST_CASE("printed variant keeps only the literal shapes") {
  RuleOptions o;
  o.variant = RuleVariant::Printed;
  EnvelopeContext ctx(hat(algebraE()), o);
  CHECK_FALSE(ctx.rules.singleLetter(word("R(y1*x1)*y2")));
  CHECK_FALSE(ctx.rules.singleLetter(word("x1*R(y1*x1)*x1")));
  CHECK(ctx.rules.singleLetter(word("R(y1*x1)*x1*R(y1*x2)")));
}

TEST_CASE("relation instances") {
  EnvelopeContext ctx(hat(algebraE()));
  const auto deg2 = instantiateRelations(ctx, 2, 0);
  REQUIRE(deg2.size() == 6);
  std::vector<std::string> leads;
  for (const auto& r : deg2) {
    CHECK(r.family == Family::Commute);
    leads.push_back(toString(leading(r.relation)));
  }
  std::sort(leads.begin(), leads.end());
  CHECK(leads == std::vector<std::string>{"x1*y1", "x1*y2", "x2*x1", "x2*y1", "x2*y2", "y2*y1"});

  const auto deg1 = instantiateRelations(ctx, 1, 1);
  REQUIRE(deg1.size() == 4);
  std::vector<std::string> singles;
  for (const auto& r : deg1) singles.push_back(toString(leading(r.relation)));
  CHECK(singles == std::vector<std::string>{"R(y1)", "R(y2)", "R(x1)", "R(x2)"});

  CHECK(instantiateRelations(ctx, 0, 2).empty());
}

TEST_CASE("relation instances are monic, fit the bounds and lie in the ideal") {
  EnvelopeContext ctx(hat(algebraE()));
  const auto inst = instantiateRelations(ctx, 3, 2);
  CHECK(inst.size() > 100);
  for (const auto& r : inst) {
    CHECK(leadingCoefficient(r.relation) == 1);
    CHECK(fits(leading(r.relation), {3, 2}));
    CHECK(idealMember(r.relation, ctx.rules));
  }
}

TEST_CASE("irreducible words") {
  EnvelopeContext ctx(hat(algebraE()));
  CHECK(rendered(irrWords(ctx, 1, 0)) == std::vector<std::string>{"y1", "y2", "x1", "x2"});

  const auto two = irrWords(ctx, 2, 0);
  CHECK(two.size() == 14);
  CHECK(std::is_sorted(two.begin(), two.end()));

  const auto withR = irrWords(ctx, 2, 1);
  CHECK(withR.size() == 50);
  const auto names = rendered(withR);
  CHECK(std::find(names.begin(), names.end(), "R(y1*x1)") != names.end());
  for (const auto& w : withR) {
    CHECK(isIrreducible(w, ctx.rules));
    for (const auto& l : w.letters())
      if (l.isR()) CHECK_FALSE(l.argument().isPure());
  }
}

TEST_CASE("irreducible words match a brute-force filter") {
  EnvelopeContext ctx(hat(algebraE()));
  std::mt19937_64 rng(1);
  const auto irr = irrWords(ctx, 2, 1);
  int failures = 0;
  for (int i = 0; i < 3000; ++i) {
    const Word w = randomWord(rng, 2, {2, 1});
    const bool listed = std::binary_search(irr.begin(), irr.end(), w);
    if (listed != isIrreducible(w, ctx.rules)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("embedding of generators") {
  const RBLieAlgebra h = hat(algebraE());
  CHECK(embed(h, 1) == poly("x1 - y1"));
  CHECK(embed(h, 2) == poly("x2 - y2"));
  CHECK_THROWS_AS(embed(h, 3), std::out_of_range);
  CHECK_THROWS_AS(embed(h, 0), std::out_of_range);
  Vec v{Rational(2), Rational(-1, 3)};
  CHECK(embed(h, v) == 2 * embed(h, 1) + Rational(-1, 3) * embed(h, 2));
}

TEST_CASE("postassociative operations") {
  EnvelopeContext ctx(hat(algebraE()));
  const PostProducts a = postOps(ctx, poly("y1"), poly("y2"));
  CHECK(a.succ == poly("y1*y2"));
  CHECK(a.prec == poly("y1*y2"));
  CHECK(a.dot == poly("-y1*y2"));
  for (const char* v : {"y1", "x2", "R(y1*x1)", "y2*x1"})
    CHECK(postOps(ctx, poly("x1"), poly(v)).succ.isZero());
  CHECK(postOps(ctx, poly("y1"), poly("y1")).dot == poly("-y1*y1"));
}

TEST_CASE("derived post-Lie structure on embedded generators") {
  EnvelopeContext p1(hat(algebraP1()));
  const Polynomial u = embed(p1.hat, 1);
  CHECK(derivedPostLie(p1, u, u).product == poly("x1 - y1", 1));

  EnvelopeContext e(hat(algebraE()));
  const DerivedPostLie d = derivedPostLie(e, embed(e.hat, 1), embed(e.hat, 2));
  CHECK(d.bracket == poly("x2 - y2"));
  CHECK(d.product.isZero());
}

TEST_CASE("embedding report") {
  for (const auto& p : {algebraE(), algebraP1(), algebraSl2(), referencePostLie()}) {
    const EmbeddingReport r = verifyEmbedding(p);
    CHECK(r.independent());
    CHECK(r.morphism());
    CHECK(r.table.size() == static_cast<std::size_t>(p.dim * p.dim));
  }
}

TEST_CASE("a corrupted product constant is a morphism failure at its pair") {
  EnvelopeContext ctx(hat(algebraE()));
  PostLieAlgebra corrupted = algebraE();
  corrupted.setProduct(0, 1, Vec{Rational(0), Rational(1)});
  const EmbeddingReport r = verifyEmbedding(corrupted, ctx);
  CHECK(r.independent());
  CHECK_FALSE(r.morphism());
  for (const auto& e : r.table) {
    CHECK(e.bracketOk());
    CHECK(e.productOk() == !(e.a == 0 && e.b == 1));
  }
}

TEST_CASE("enveloping property on generator pairs") {
  EnvelopeContext ctx(hat(algebraSl2()));
  for (int i = 0; i < ctx.hat.dim(); ++i)
    for (int j = 0; j < ctx.hat.dim(); ++j) {
      const Polynomial u(ctx.hat.generatorAt(i)), v(ctx.hat.generatorAt(j));
      CHECK(normalForm(u * v - v * u, ctx.rules) ==
            ctx.hat.toPolynomial(ctx.hat.bracket.apply(i, j)));
    }
}

TEST_CASE("R of a product of y-words is that product") {
  EnvelopeContext ctx(hat(algebraSl2()));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    std::vector<Letter> a, b;
    const int la = std::uniform_int_distribution<int>(1, 3)(rng);
    const int lb = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < la; ++k) a.push_back(Letter::gen(y(std::uniform_int_distribution<int>(1, 3)(rng))));
    for (int k = 0; k < lb; ++k) b.push_back(Letter::gen(y(std::uniform_int_distribution<int>(1, 3)(rng))));
    const Word ab = concat(Word(a), Word(b));
    CHECK(normalForm(Polynomial(wrapR(ab)), ctx.rules) == normalForm(Polynomial(ab), ctx.rules));
  }
}

TEST_CASE("postassociative identities at small bounds") {
  EnvelopeContext e(hat(algebraE()));
  PostIdentityOptions o;
  o.maxDeg = 1;
  const PostIdentityReport r = verifyPostassociative(e, o);
  CHECK(r.words == irrWords(e, 1, 1).size());
  CHECK(r.triples == r.words * r.words * r.words);
  CHECK(r.pass());

  EnvelopeContext p1(hat(algebraP1()));
  o.maxDeg = 2;
  CHECK(verifyPostassociative(p1, o).pass());
}

TEST_CASE("identity residuals on a sample triple") {
  EnvelopeContext ctx(hat(algebraE()));
  Quotient q(ctx);
  const Polynomial y1 = poly("y1");
  CHECK(q.dot(q.dot(y1, y1), y1) == poly("y1*y1*y1"));
  for (int k = 1; k <= 7; ++k) CHECK(postIdentityResidual(q, k, y1, poly("x2"), poly("R(y1*x1)")).isZero());
}

TEST_CASE("the printed third identity fails") {
  EnvelopeContext ctx(hat(algebraE()));
  PostIdentityOptions o;
  o.maxDeg = 1;
  o.printedThirdIdentity = true;
  const PostIdentityReport r = verifyPostassociative(ctx, o);
  CHECK_FALSE(r.pass());
  for (const auto& v : r.violations) CHECK(v.identity == 3);
}

TEST_CASE("dropping the RB rule breaks the identities") {
  RuleOptions o;
  o.dropAlmostRB = true;
  EnvelopeContext ctx(hat(algebraE()), o);
  PostIdentityOptions po;
  po.maxDeg = 2;
  const PostIdentityReport r = verifyPostassociative(ctx, po);
  CHECK_FALSE(r.pass());
  CHECK(r.violations.size() <= PostIdentityReport::kMaxListed);
}

TEST_CASE("parallel identity check agrees with the serial one") {
  RuleOptions o;
  o.dropAlmostRB = true;
  EnvelopeContext ctx(hat(algebraP1()), o);
  PostIdentityOptions po;
  po.maxDeg = 2;
  const auto serial = verifyPostassociative(ctx, po);
  po.threads = 3;
  const auto parallel = verifyPostassociative(ctx, po);
  CHECK(serial.violationCount == parallel.violationCount);
  REQUIRE(serial.violations.size() == parallel.violations.size());
  for (std::size_t i = 0; i < serial.violations.size(); ++i) {
    CHECK(serial.violations[i].identity == parallel.violations[i].identity);
    CHECK(serial.violations[i].residual == parallel.violations[i].residual);
  }
}

TEST_CASE("RB identity holds in the quotient") {
  for (const auto& p : {algebraE(), algebraP1()}) {
    EnvelopeContext ctx(hat(p));
    CHECK(checkRBInQuotient(ctx, {2, 1}).empty());
  }
}

TEST_CASE("the printed families leave the RB identity unproven in the quotient") {
  RuleOptions o;
  o.variant = RuleVariant::Printed;
  EnvelopeContext ctx(hat(algebraE()), o);
  CHECK_FALSE(checkRBInQuotient(ctx, {2, 1}).empty());
}

TEST_CASE("hand chains at w = R(a)R(x1)") {
  EnvelopeContext ctx(hat(algebraE()));
  const ChainResult r = chainXRel(ctx, word("y1*x1"));
  CHECK(r.first.isZero());
  CHECK(r.second.isZero());
}

TEST_CASE("hand chains at w = R(a)R(R(b)x1R(c)) agree") {
  EnvelopeContext ctx(hat(algebraE()));
  const Word a = word("y1*x1");
  const ChainResult r = chainXMiddle(ctx, a, a, a);
  CHECK(r.first == r.second);
  CHECK(normalForm(r.first, ctx.rules) == normalForm(r.second, ctx.rules));
  CHECK(normalForm(Polynomial(concat(wrapR(a), word("R(R(y1*x1)*x1*R(y1*x1))"))), ctx.rules) ==
        normalForm(r.first, ctx.rules));
}

}  // TEST_SUITE
