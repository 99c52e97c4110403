// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "chains.hpp"
#include "rbenv/algebra_io.hpp"
#include "rbenv/cli.hpp"
#include "rbenv/confluence.hpp"
#include "rbenv/expression.hpp"

using namespace rbenv;

namespace {

using Clock = std::chrono::steady_clock;

std::string dataFile(const std::string& name) { return std::string(RBENV_DATA_DIR) + "/" + name; }

PostLieAlgebra load(const std::string& name) { return loadAlgebra(dataFile("algebras/" + name)); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(1);
  o << std::fixed << s << "s";
  return o.str();
}

Outcome gsbCertificate() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t compositions = 0;
  for (const char* name : {"E.alg", "P1.alg"}) {
    EnvelopeContext ctx(hat(load(name)));
    const GsbReport r = checkPairs(instantiateRelations(ctx, 5, 2), ctx.rules, {5, 2});
    compositions += r.records.size();
    o.require(r.pass(), std::string(name) + ": " + std::to_string(r.nontrivial()) + " nontrivial");
  }
  const double t = seconds(start);
  o.require(t < 300, "took " + fmt(t));
  if (o.pass) o.detail = std::to_string(compositions) + " compositions, all trivial, " + fmt(t);
  return o;
}

Outcome confluenceFuzz() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t samples = 0;
  for (const char* name : {"E.alg", "P1.alg", "sl2.alg"}) {
    const PostLieAlgebra p = load(name);
    EnvelopeContext ctx(hat(p));
    const ConfluenceReport r = runConfluence(ctx.rules, p.dim, 1000, {6, 2}, 2024);
    samples += r.samples;
    o.require(r.pass(), std::string(name) + ": " + std::to_string(r.mismatches) + " mismatches");
  }
  const double t = seconds(start);
  o.require(t < 60, "took " + fmt(t));
  if (o.pass) o.detail = std::to_string(samples) + " samples, 0 mismatches, " + fmt(t);
  return o;
}

Outcome hatValidation() {
  Outcome o;
  for (const char* name : {"E.alg", "P1.alg", "sl2.alg", "abelian2.alg"}) {
    const auto vs = validateRBLie(hat(load(name)));
    o.require(vs.empty(), std::string(name) + ": " + (vs.empty() ? "" : vs.front().identity));
  }
  if (o.pass) o.detail = "E, P1, sl2, abelian2";
  return o;
}

Outcome embedding() {
  Outcome o;
  for (const char* name : {"E.alg", "P1.alg", "sl2.alg"}) {
    const EmbeddingReport r = verifyEmbedding(load(name));
    o.require(r.independent(), std::string(name) + ": images not independent");
    o.require(r.morphism(), std::string(name) + ": morphism table mismatch");
  }
  EnvelopeContext e(hat(load("E.alg")));
  const DerivedPostLie d = derivedPostLie(e, embed(e.hat, 1), embed(e.hat, 2));
  o.require(d.bracket == parsePolynomial("x2 - y2", 2), "E: bracket of images is " + toString(d.bracket));
  o.require(d.product.isZero(), "E: product of images is " + toString(d.product));
  if (o.pass) o.detail = "E, P1, sl2";
  return o;
}

Outcome postassociative() {
  Outcome o;
  const auto start = Clock::now();
  EnvelopeContext ctx(hat(load("E.alg")));
  const PostIdentityReport r = verifyPostassociative(ctx, {});
  const double t = seconds(start);
  o.require(r.pass(), std::to_string(r.violationCount) + " violations");
  o.require(t < 120, "took " + fmt(t));
  if (o.pass)
    o.detail = std::to_string(r.triples) + " triples over " + std::to_string(r.words) +
               " irreducible words, " + fmt(t);
  return o;
}

Outcome rbInQuotient() {
  Outcome o;
  for (const char* name : {"E.alg", "P1.alg", "sl2.alg"}) {
    EnvelopeContext ctx(hat(load(name)));
    const auto failures = checkRBInQuotient(ctx, {2, 1});
    o.require(failures.empty(), std::string(name) + ": " + std::to_string(failures.size()) + " pairs");
  }
  if (o.pass) o.detail = "E, P1, sl2 at deg <= 2, degR <= 1";
  return o;
}

Outcome handChains() {
  Outcome o;
  EnvelopeContext ctx(hat(load("E.alg")));
  const Word a = leading(parsePolynomial("y1*x1", 2));
  const auto first = testing::chainXRel(ctx, a);
  o.require(first.first.isZero(), "R(a)R(x1) by the kill rule: " + toString(first.first));
  o.require(first.second.isZero(), "R(a)R(x1) by the RB relation: " + toString(first.second));
  const auto second = testing::chainXMiddle(ctx, a, a, a);
  o.require(second.first == second.second, "routes at R(a)R(R(b)x1R(c)) differ before reduction");
  o.require(normalForm(second.first, ctx.rules) == normalForm(second.second, ctx.rules),
            "routes at R(a)R(R(b)x1R(c)) differ after reduction");
  if (o.pass) o.detail = "both chains agree";
  return o;
}

Outcome orderLaws() {
  Outcome o;
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    Word u = randomWord(rng, 2, {4, 2});
    Word v = randomWord(rng, 2, {4, 2});
    const Word w = randomWord(rng, 2, {4, 2});
    const StarWord q = randomContext(rng, 2);
    const auto uv = compare(u, v), vu = compare(v, u);
    if ((uv < 0) != (vu > 0) || (uv == 0) != (vu == 0)) ++failures;
    if ((uv == 0) != (u == v)) ++failures;
    if (uv <= 0 && compare(v, w) <= 0 && compare(u, w) > 0) ++failures;
    if (uv != 0) {
      if (uv > 0) std::swap(u, v);
      if (!(compare(q.substitute(u), q.substitute(v)) < 0)) ++failures;
    }
  }
  o.require(failures == 0, std::to_string(failures) + " failures");
  if (o.pass) o.detail = "10000 triples with random contexts";
  return o;
}

int runCli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = runCommand(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

Outcome mutations() {
  Outcome o;
  o.require(runCli({"check", dataFile("algebras/badjacobi.alg")}) == 1, "check misses the broken bracket");
  o.require(runCli({"--negate-bracket", "x2,x1", "gsb-check", dataFile("algebras/E.alg"), "--max-deg",
                    "3", "--max-rdeg", "0", "--summary"}) == 1,
            "gsb-check misses the flipped sign");
  o.require(runCli({"--drop-almost-rb", "post-identities", dataFile("algebras/E.alg"), "--max-deg",
                    "2"}) == 1,
            "post-identities misses the dropped RB rule");
  if (o.pass) o.detail = "check, gsb-check and post-identities all report violations";
  return o;
}

Outcome determinismAndRoundTrip() {
  Outcome o;
  const std::string e = dataFile("algebras/E.alg"), sl2 = dataFile("algebras/sl2.alg");
  const std::vector<std::vector<std::string>> commands{
      {"gsb-check", e, "--max-deg", "3", "--max-rdeg", "2"},
      {"--json", "gsb-check", e, "--max-deg", "3", "--max-rdeg", "2"},
      {"--negate-bracket", "x2,x1", "gsb-check", e, "--max-deg", "3", "--max-rdeg", "1"},
      {"confluence", sl2, "--samples", "200", "--max-deg", "5", "--seed", "3"},
      {"--printed-families", "--json", "confluence", e, "--samples", "200", "--seed", "4"},
      {"post-identities", e, "--max-deg", "1"},
      {"--drop-almost-rb", "post-identities", e, "--max-deg", "2"},
      {"--json", "verify-embedding", sl2},
      {"hat", sl2},
      {"irr", e, "--max-deg", "2", "--max-rdeg", "1"},
      {"nf", sl2, "-e", "R(x3*x1*R(y2*x1))*R(y3*x2)", "--trace"},
  };
  std::size_t runs = 0;
  for (const auto& cmd : commands) {
    std::string reference;
    runCli(cmd, &reference);
    for (const char* threads : {"1", "1", "2", "4"}) {
      std::vector<std::string> args{"--threads", threads};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::string out;
      runCli(args, &out);
      ++runs;
      if (out != reference) o.require(false, "output differs: " + cmd.front() + " with " + threads + " threads");
    }
  }

  std::ifstream corpus(dataFile("expressions.txt"));
  std::size_t expressions = 0;
  for (std::string line; std::getline(corpus, line);) {
    if (line.empty()) continue;
    ++expressions;
    try {
      const Expr tree = parseExpression(line, 3);
      const std::string printed = toString(tree);
      const Expr again = parseExpression(printed, 3);
      o.require(again == tree && toString(again) == printed, "not a fixpoint: " + line);
      const std::string poly = toString(evaluate(tree));
      o.require(toString(parsePolynomial(poly, 3)) == poly, "polynomial rendering: " + line);
    } catch (const ParseError& err) {
      o.require(false, "corpus entry rejected: " + line + " (" + err.what() + ")");
    }
  }
  o.require(expressions == 50, "corpus has " + std::to_string(expressions) + " expressions");
  if (o.pass)
    o.detail = std::to_string(runs) + " repeated runs identical; " + std::to_string(expressions) +
               " expressions round-trip";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bounded Groebner-Shirshov certificate (E, P1; deg 5, degR 2)", gsbCertificate},
      {"confluence fuzzing (1000 samples per algebra)", confluenceFuzz},
      {"hat validation", hatValidation},
      {"embedding into the enveloping postassociative algebra", embedding},
      {"seven postassociative identities (E; deg 2, degR 1)", postassociative},
      {"RB identity in the quotient", rbInQuotient},
      {"hand-computed composition chains", handChains},
      {"monomial order laws", orderLaws},
      {"mutation sensitivity", mutations},
      {"CLI determinism and expression round-trip", determinismAndRoundTrip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << " [" << o.detail << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
