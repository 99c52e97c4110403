#include <random>

#include "rbenv/confluence.hpp"
#include "support.hpp"

using namespace rbenv;
using namespace rbenv::testing;

TEST_SUITE("rewrite") {

TEST_CASE("single steps under the rules of hat(E)") {
  EnvelopeContext ctx(hat(algebraE()));
  Strategy s;

  const StepResult killed = reduceStep(poly("R(x1)"), ctx.rules, s);
  CHECK(killed.applied);
  CHECK(killed.result.isZero());
  REQUIRE(killed.step);
  CHECK(familyTag(killed.step->family) == "7");

  const StepResult stuck = reduceStep(poly("y1"), ctx.rules, s);
  CHECK_FALSE(stuck.applied);
  CHECK(stuck.result == poly("y1"));

  const StepResult swapped = reduceStep(poly("x1*y1"), ctx.rules, s);
  CHECK(swapped.applied);
  CHECK(swapped.result == poly("y1*x1") + ctx.rules.bracket(x(1), y(1)));

  const StepResult swapped2 = reduceStep(poly("x2*y1"), ctx.rules, s);
  CHECK(swapped2.result == poly("y1*x2 + y2"));
}

TEST_CASE("normal forms") {
  EnvelopeContext ctx(hat(algebraE()));
  CHECK(normalForm(poly("R(y1*y2)"), ctx.rules) == poly("y1*y2"));
  CHECK(normalForm(poly("R(y2*y1)"), ctx.rules) == poly("y1*y2 + y2"));
  CHECK(normalForm(Polynomial(), ctx.rules).isZero());
}

TEST_CASE("traced normal form of R(y2*y1)") {
  EnvelopeContext ctx(hat(algebraE()));
  std::vector<TraceStep> trace;
  Strategy s = Strategy::innermost();
  CHECK(normalForm(poly("R(y2*y1)"), ctx.rules, s, &trace) == poly("y1*y2 + y2"));
  REQUIRE(trace.size() == 3);
  CHECK(familyTag(trace[0].family) == "5");
  CHECK(toString(trace[0].context) == "R([])");
  CHECK(familyTag(trace[1].family) == "6");
  CHECK(trace.back().after == poly("y1*y2 + y2"));
}

TEST_CASE("irreducibility") {
  EnvelopeContext ctx(hat(algebraE()));
  CHECK(isIrreducible(word("y1*x1"), ctx.rules));
  CHECK(isIrreducible(word("R(y1*x1)"), ctx.rules));
  CHECK_FALSE(isIrreducible(word("R(y1)"), ctx.rules));
  CHECK_FALSE(isIrreducible(word("x1*y1"), ctx.rules));
  CHECK_FALSE(isIrreducible(word("R(y1*x1)*R(y2*x1)"), ctx.rules));
}

TEST_CASE("ideal membership") {
  EnvelopeContext ctx(hat(algebraE()));
  CHECK(idealMember(poly("R(x1)"), ctx.rules));
  CHECK_FALSE(idealMember(poly("y1"), ctx.rules));
  const Polynomial f = poly("R(y2*y1)*x1 - 2*R(x1*R(y1*x2))");
  CHECK(idealMember(f - normalForm(f, ctx.rules), ctx.rules));
}

TEST_CASE("every match rewrites its word into strictly smaller words") {
  EnvelopeContext ctx(hat(algebraSl2()));
  std::mt19937_64 rng(21);
  int failures = 0, matches = 0;
  for (int i = 0; i < 1500; ++i) {
    const Word w = randomWord(rng, 3, {4, 2}, 0.4);
    for (const auto& m : ctx.rules.query(w)) {
      ++matches;
      if (!(m.context.substitute(m.rule.lhs) == w)) ++failures;
      for (const auto& [u, c] : m.rule.replacement.terms())
        if (!(compare(u, m.rule.lhs) < 0)) ++failures;
    }
  }
  CHECK(matches > 1000);
  CHECK(failures == 0);
}

TEST_CASE("strategy independence on random polynomials") {
  for (const auto& p : {algebraE(), algebraP1(), algebraSl2()}) {
    EnvelopeContext ctx(hat(p));
    std::mt19937_64 rng(31);
    int failures = 0;
    for (int i = 0; i < 150; ++i) {
      const Polynomial f = randomPolynomial(rng, p.dim, {4, 2});
      Strategy inner = Strategy::innermost(), outer = Strategy::outermost(),
               rnd = Strategy::random(static_cast<std::uint64_t>(i));
      const Polynomial a = normalForm(f, ctx.rules, inner);
      if (!(a == normalForm(f, ctx.rules, outer))) ++failures;
      if (!(a == normalForm(f, ctx.rules, rnd))) ++failures;
      if (!(a == normalForm(f, ctx.rules))) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("normal form is linear") {
  EnvelopeContext ctx(hat(algebraE()));
  std::mt19937_64 rng(41);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const Polynomial f = randomPolynomial(rng, 2, {4, 2});
    const Polynomial g = randomPolynomial(rng, 2, {4, 2});
    const Rational a(std::uniform_int_distribution<int>(-3, 3)(rng), 2), b(5, 3);
    const Polynomial lhs = normalForm(a * f + b * g, ctx.rules);
    const Polynomial rhs = a * normalForm(f, ctx.rules) + b * normalForm(g, ctx.rules);
    if (!(lhs == rhs)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("normal forms consist of irreducible words") {
  EnvelopeContext ctx(hat(algebraSl2()));
  std::mt19937_64 rng(51);
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const Polynomial nf = normalForm(randomPolynomial(rng, 3, {4, 2}), ctx.rules);
    for (const auto& [u, c] : nf.terms())
      if (!isIrreducible(u, ctx.rules)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("exhausted step budget is an error") {
  EnvelopeContext ctx(hat(algebraE()));
  Strategy s;
  CHECK_THROWS_AS(normalForm(poly("R(y2*y1)"), ctx.rules, s, nullptr, 1), std::runtime_error);
}

}  // TEST_SUITE
