#include "rbenv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "rbenv/algebra_io.hpp"
#include "rbenv/confluence.hpp"
#include "rbenv/envelope.hpp"
#include "rbenv/expression.hpp"

namespace rbenv {

using nlohmann::json;

namespace {

struct Common {
  bool json = false;
  int threads = 1;
  bool printedFamilies = false;
  bool dropAlmostRB = false;
  std::string negateBracket;
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Generator parseGenerator(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y') ||
      s.find_first_not_of("0123456789", 1) != std::string::npos)
    throw InputError("invalid generator '" + s + "'");
  return {s[0] == 'x' ? GenKind::X : GenKind::Y, std::stoi(s.substr(1))};
}

RuleOptions ruleOptions(const Common& c, int dim) {
  RuleOptions o;
  if (c.printedFamilies) o.variant = RuleVariant::Printed;
  o.dropAlmostRB = c.dropAlmostRB;
  if (!c.negateBracket.empty()) {
    const auto comma = c.negateBracket.find(',');
    if (comma == std::string::npos) throw InputError("--negate-bracket expects 'g1,g2'");
    Generator a = parseGenerator(c.negateBracket.substr(0, comma));
    Generator b = parseGenerator(c.negateBracket.substr(comma + 1));
    if (a.index > dim || b.index > dim) throw InputError("--negate-bracket: generator out of range");
    o.negatedBracket = std::pair{a, b};
  }
  return o;
}

std::vector<std::string> hatNames(const RBLieAlgebra& h) {
  std::vector<std::string> out;
  for (int g = 0; g < h.dim(); ++g) out.push_back(h.generatorName(g));
  return out;
}

std::string indicesText(const std::vector<int>& idx, const std::vector<std::string>& names) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ",";
    s += names[static_cast<std::size_t>(idx[i])];
  }
  return s + ")";
}

json violationsJson(const std::vector<Violation>& vs, const std::vector<std::string>& names) {
  json arr = json::array();
  for (const auto& v : vs) {
    json idx = json::array();
    for (int i : v.indices) idx.push_back(names[static_cast<std::size_t>(i)]);
    arr.push_back({{"identity", v.identity}, {"at", idx}, {"residual", toString(v.residual, names)}});
  }
  return arr;
}

void printViolations(std::ostream& out, const std::vector<Violation>& vs,
                     const std::vector<std::string>& names) {
  for (const auto& v : vs)
    out << "  " << v.identity << " at " << indicesText(v.indices, names) << ": "
        << toString(v.residual, names) << "\n";
}

PostLieAlgebra requirePostLie(const std::string& file) {
  PostLieAlgebra p = loadAlgebra(file);
  if (auto v = validatePostLie(p); !v.empty())
    throw InputError(file + ": not a post-Lie algebra (" + v.front().identity + " fails at " +
                     indicesText(v.front().indices, p.names) + "); run 'check' for details");
  return p;
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

// check -------------------------------------------------------------------

int cmdCheck(const Common& c, const std::string& file, std::ostream& out) {
  const PostLieAlgebra p = loadAlgebra(file);
  const auto vs = validatePostLie(p);
  if (c.json) {
    out << json{{"command", "check"}, {"dim", p.dim}, {"violations", violationsJson(vs, p.names)},
                {"pass", vs.empty()}}
               .dump(2)
        << "\n";
  } else {
    out << "post-Lie check, dim " << p.dim << ": " << verdict(vs.empty());
    if (!vs.empty()) out << " (" << vs.size() << " violations)";
    out << "\n";
    printViolations(out, vs, p.names);
  }
  return vs.empty() ? kPass : kViolation;
}

// hat ---------------------------------------------------------------------

int cmdHat(const Common& c, const std::string& file, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  const RBLieAlgebra h = hat(p);
  const auto names = hatNames(h);
  const auto vs = validateRBLie(h);
  json gens = json::array(), brackets = json::array(), rtable = json::array();
  for (int i = 0; i < h.n; ++i) {
    gens.push_back({{"generator", names[static_cast<std::size_t>(i)]}, {"element", p.names[i]}});
  }
  for (int i = 0; i < h.n; ++i) {
    gens.push_back({{"generator", names[static_cast<std::size_t>(h.n + i)]},
                    {"element", p.names[i] + " + " + p.names[i] + "'"}});
  }
  for (int i = 0; i < h.dim(); ++i)
    for (int j = i + 1; j < h.dim(); ++j) {
      const Vec v = h.bracket.apply(i, j);
      if (isZero(v)) continue;
      brackets.push_back({{"left", names[static_cast<std::size_t>(i)]},
                          {"right", names[static_cast<std::size_t>(j)]},
                          {"value", toString(v, names)}});
    }
  for (int g = 0; g < h.dim(); ++g)
    rtable.push_back({{"generator", names[static_cast<std::size_t>(g)]},
                      {"value", toString(h.rAction[static_cast<std::size_t>(g)], names)}});

  if (c.json) {
    out << json{{"command", "hat"},   {"weight", -1},         {"generators", gens},
                {"brackets", brackets}, {"R", rtable},        {"violations", violationsJson(vs, names)},
                {"pass", vs.empty()}}
               .dump(2)
        << "\n";
  } else {
    out << "generators (weight -1):\n";
    for (const auto& g : gens)
      out << "  " << g["generator"].get<std::string>() << " = " << g["element"].get<std::string>()
          << "\n";
    out << "brackets (nonzero, i < j):\n";
    for (const auto& b : brackets)
      out << "  [" << b["left"].get<std::string>() << "," << b["right"].get<std::string>()
          << "] = " << b["value"].get<std::string>() << "\n";
    out << "R:\n";
    for (const auto& r : rtable)
      out << "  R(" << r["generator"].get<std::string>() << ") = " << r["value"].get<std::string>()
          << "\n";
    out << "validation: " << verdict(vs.empty()) << "\n";
    printViolations(out, vs, names);
  }
  return vs.empty() ? kPass : kViolation;
}

// nf ----------------------------------------------------------------------

int cmdNf(const Common& c, const std::string& file, const std::string& expr, bool trace,
          const std::string& strategyName, std::uint64_t seed, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  const Polynomial f = parsePolynomial(expr, p.dim);

  std::vector<TraceStep> steps;
  Polynomial result;
  if (!trace && strategyName == "memo") {
    result = normalForm(f, ctx.rules);
  } else {
    Strategy s = strategyName == "outermost" ? Strategy::outermost()
                 : strategyName == "random"  ? Strategy::random(seed)
                                             : Strategy::innermost();
    result = normalForm(f, ctx.rules, s, trace ? &steps : nullptr);
  }

  if (c.json) {
    json j{{"command", "nf"}, {"input", toString(f)}, {"normalForm", toString(result)}};
    if (trace) {
      json arr = json::array();
      for (const auto& s : steps)
        arr.push_back({{"family", std::string(familyTag(s.family))},
                       {"word", toString(s.word)},
                       {"context", toString(s.context)},
                       {"before", toString(s.before)},
                       {"after", toString(s.after)}});
      j["trace"] = arr;
    }
    out << j.dump(2) << "\n";
  } else {
    if (trace) {
      std::size_t k = 0;
      for (const auto& s : steps) {
        out << ++k << ". (" << familyTag(s.family) << ") " << toString(s.word) << " in "
            << toString(s.context) << "\n   " << toString(s.before) << "\n   => "
            << toString(s.after) << "\n";
      }
    }
    out << toString(result) << "\n";
  }
  return kPass;
}

// gsb-check ---------------------------------------------------------------

std::string kindName(CompositionKind k) {
  return k == CompositionKind::Inclusion ? "inclusion" : "intersection";
}

int cmdGsb(const Common& c, const std::string& file, int maxDeg, int maxDegR, bool summary,
           std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  const auto inst = instantiateRelations(ctx, maxDeg, maxDegR);
  const GsbReport rep = checkPairs(inst, ctx.rules, {maxDeg, maxDegR}, c.threads);

  const std::size_t total = rep.records.size();
  const std::size_t pureTotal = rep.pureReadingCount();
  const std::size_t pureBad = rep.pureReadingNontrivial();
  const std::size_t bad = rep.nontrivial();
  std::size_t inclusions = 0;
  for (const auto& r : rep.records) inclusions += r.kind == CompositionKind::Inclusion;

  if (c.json) {
    json recs = json::array();
    for (const auto& r : rep.records) {
      if (summary && r.trivial) continue;
      json j{{"kind", kindName(r.kind)},
             {"f", {{"family", std::string(familyTag(r.familyF))}, {"parameters", r.parametersF}}},
             {"g", {{"family", std::string(familyTag(r.familyG))}, {"parameters", r.parametersG}}},
             {"w", toString(r.w)},
             {"context", r.context},
             {"trivial", r.trivial}};
      if (!r.trivial) j["normalForm"] = toString(r.normalForm);
      recs.push_back(std::move(j));
    }
    out << json{{"command", "gsb-check"},
                {"maxDeg", maxDeg},
                {"maxDegR", maxDegR},
                {"instances", rep.instances},
                {"compositions", total},
                {"nontrivial", bad},
                {"readings",
                 {{"restricted", {{"compositions", total - pureTotal}, {"nontrivial", bad - pureBad}}},
                  {"pureArguments", {{"compositions", pureTotal}, {"nontrivial", pureBad}}}}},
                {"records", recs},
                {"pass", rep.pass()}}
               .dump(2)
        << "\n";
  } else {
    out << "gsb-check: max-deg " << maxDeg << ", max-rdeg " << maxDegR << "\n"
        << "instances: " << rep.instances << "\n"
        << "compositions: " << total << " (" << inclusions << " inclusion, " << total - inclusions
        << " intersection)\n"
        << "restricted parameters: " << total - pureTotal << " compositions, " << bad - pureBad
        << " nontrivial\n"
        << "pure-argument RB instances: " << pureTotal << " compositions, " << pureBad
        << " nontrivial\n";
    for (const auto& r : rep.records) {
      if (summary && r.trivial) continue;
      out << "  " << toString(r.w) << " | " << kindName(r.kind) << " | (" << familyTag(r.familyF)
          << ") " << r.parametersF << " / (" << familyTag(r.familyG) << ") " << r.parametersG
          << " | " << r.context << " | " << (r.trivial ? "trivial" : "NONTRIVIAL: " + toString(r.normalForm))
          << "\n";
    }
    out << "nontrivial: " << bad << "\nverdict: " << verdict(rep.pass()) << "\n";
  }
  return rep.pass() ? kPass : kViolation;
}

// confluence --------------------------------------------------------------

int cmdConfluence(const Common& c, const std::string& file, std::size_t samples, int maxDeg,
                  int maxDegR, std::uint64_t seed, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  const auto rep = runConfluence(ctx.rules, p.dim, samples, {maxDeg, maxDegR}, seed, c.threads);
  if (c.json) {
    json fails = json::array();
    for (const auto& f : rep.failures)
      fails.push_back({{"input", toString(f.input)},
                       {"first", toString(f.first)},
                       {"second", toString(f.second)},
                       {"reference", toString(f.reference)}});
    out << json{{"command", "confluence"}, {"samples", rep.samples}, {"maxDeg", maxDeg},
                {"maxDegR", maxDegR},       {"seed", seed},          {"mismatches", rep.mismatches},
                {"failures", fails},        {"pass", rep.pass()}}
               .dump(2)
        << "\n";
  } else {
    out << "confluence: " << rep.samples << " samples, max-deg " << maxDeg << ", max-rdeg "
        << maxDegR << ", seed " << seed << "\n"
        << "mismatches: " << rep.mismatches << "\n";
    for (const auto& f : rep.failures)
      out << "  " << toString(f.input) << "\n    first:     " << toString(f.first)
          << "\n    second:    " << toString(f.second) << "\n    reference: "
          << toString(f.reference) << "\n";
    out << "verdict: " << verdict(rep.pass()) << "\n";
  }
  return rep.pass() ? kPass : kViolation;
}

// verify-embedding --------------------------------------------------------

int cmdEmbedding(const Common& c, const std::string& file, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  const EmbeddingReport rep = verifyEmbedding(p, ctx);
  if (c.json) {
    json images = json::array(), table = json::array();
    for (int i = 0; i < p.dim; ++i)
      images.push_back({{"element", p.names[i]}, {"image", toString(rep.images[static_cast<std::size_t>(i)])}});
    for (const auto& e : rep.table)
      table.push_back({{"left", p.names[e.a]},
                       {"right", p.names[e.b]},
                       {"product", toString(e.product)},
                       {"expectedProduct", toString(e.expectedProduct)},
                       {"bracket", toString(e.bracket)},
                       {"expectedBracket", toString(e.expectedBracket)},
                       {"ok", e.productOk() && e.bracketOk()}});
    out << json{{"command", "verify-embedding"},
                {"images", images},
                {"independence",
                 {{"supportsIrreducible", rep.supportsIrreducible},
                  {"supportsDisjoint", rep.supportsDistinct},
                  {"rank", rep.rank},
                  {"pass", rep.independent()}}},
                {"morphism", table},
                {"pass", rep.pass()}}
               .dump(2)
        << "\n";
  } else {
    out << "images:\n";
    for (int i = 0; i < p.dim; ++i)
      out << "  " << p.names[i] << " -> " << toString(rep.images[static_cast<std::size_t>(i)]) << "\n";
    out << "independence: supports irreducible " << (rep.supportsIrreducible ? "yes" : "no")
        << ", pairwise disjoint " << (rep.supportsDistinct ? "yes" : "no") << ", rank " << rep.rank
        << " of " << p.dim << ": " << verdict(rep.independent()) << "\n";
    out << "morphism table:\n";
    for (const auto& e : rep.table) {
      const std::string a = p.names[e.a], b = p.names[e.b];
      out << "  " << a << "." << b << ": " << toString(e.product) << " (expected "
          << toString(e.expectedProduct) << ") " << (e.productOk() ? "ok" : "MISMATCH") << "\n"
          << "  [" << a << "," << b << "]: " << toString(e.bracket) << " (expected "
          << toString(e.expectedBracket) << ") " << (e.bracketOk() ? "ok" : "MISMATCH") << "\n";
    }
    out << "verdict: " << verdict(rep.pass()) << "\n";
  }
  return rep.pass() ? kPass : kViolation;
}

// post-identities ---------------------------------------------------------

int cmdPostIdentities(const Common& c, const std::string& file, int maxDeg, int maxDegR,
                      bool printedThird, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  PostIdentityOptions o;
  o.maxDeg = maxDeg;
  o.maxDegR = maxDegR;
  o.threads = c.threads;
  o.printedThirdIdentity = printedThird;
  const auto rep = verifyPostassociative(ctx, o);
  if (c.json) {
    json vs = json::array();
    for (const auto& v : rep.violations)
      vs.push_back({{"identity", v.identity},
                    {"text", std::string(postIdentityText(v.identity, printedThird))},
                    {"x", toString(v.x)},
                    {"y", toString(v.y)},
                    {"z", toString(v.z)},
                    {"residual", toString(v.residual)}});
    out << json{{"command", "post-identities"}, {"maxDeg", maxDeg},      {"maxDegR", maxDegR},
                {"words", rep.words},           {"triples", rep.triples}, {"violationCount", rep.violationCount},
                {"violations", vs},             {"pass", rep.pass()}}
               .dump(2)
        << "\n";
  } else {
    out << "post-identities: max-deg " << maxDeg << ", max-rdeg " << maxDegR << "\n"
        << "irreducible words: " << rep.words << ", triples: " << rep.triples << "\n";
    for (int k = 1; k <= 7; ++k) out << "  " << k << ". " << postIdentityText(k, printedThird) << "\n";
    out << "violations: " << rep.violationCount << "\n";
    for (const auto& v : rep.violations)
      out << "  identity " << v.identity << " at (" << toString(v.x) << ", " << toString(v.y)
          << ", " << toString(v.z) << "): " << toString(v.residual) << "\n";
    out << "verdict: " << verdict(rep.pass()) << "\n";
  }
  return rep.pass() ? kPass : kViolation;
}

// irr ---------------------------------------------------------------------

int cmdIrr(const Common& c, const std::string& file, int maxDeg, int maxDegR, std::ostream& out) {
  const PostLieAlgebra p = requirePostLie(file);
  EnvelopeContext ctx(hat(p), ruleOptions(c, p.dim));
  const auto words = irrWords(ctx, maxDeg, maxDegR);
  if (c.json) {
    json arr = json::array();
    for (const auto& w : words) arr.push_back(toString(w));
    out << json{{"command", "irr"}, {"maxDeg", maxDeg}, {"maxDegR", maxDegR},
                {"count", words.size()}, {"words", arr}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& w : words) out << toString(w) << "\n";
    out << "count: " << words.size() << "\n";
  }
  return kPass;
}

}  // namespace

int runCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free Rota-Baxter algebra rewriting and post-Lie enveloping checks", "rbenv"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--threads", c.threads, "Worker threads for batch checks")->check(CLI::Range(1, 256));
  app.add_flag("--printed-families", c.printedFamilies,
               "Use only the literal single-letter shapes 6-10 instead of their general forms");
  app.add_flag("--drop-almost-rb", c.dropAlmostRB, "Remove the R(a)R(b) rule (mutation)");
  app.add_option("--negate-bracket", c.negateBracket,
                 "Flip the bracket sign of the commutation rule g1*g2, e.g. x2,x1 (mutation)");

  std::string file, expr, strategy = "memo";
  int maxDeg = 2, maxDegR = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  bool trace = false, summary = false, printedThird = false;

  auto* check = app.add_subcommand("check", "Validate the post-Lie axioms");
  auto* hatCmd = app.add_subcommand("hat", "Print the hat algebra and its R table");
  auto* nf = app.add_subcommand("nf", "Normal form of an expression");
  auto* gsb = app.add_subcommand("gsb-check", "Check all compositions within bounds");
  auto* conf = app.add_subcommand("confluence", "Random-strategy normal form agreement");
  auto* emb = app.add_subcommand("verify-embedding", "Check the embedding into the quotient");
  auto* post = app.add_subcommand("post-identities", "Check the seven postassociative identities");
  auto* irr = app.add_subcommand("irr", "List irreducible words");
  for (auto* s : {check, hatCmd, nf, gsb, conf, emb, post, irr})
    s->add_option("FILE", file, "Algebra file")->required();

  nf->add_option("-e,--expr", expr, "Expression")->required();
  nf->add_flag("--trace", trace, "Print every rewriting step");
  nf->add_option("--strategy", strategy, "memo, innermost, outermost or random")
      ->check(CLI::IsMember({"memo", "innermost", "outermost", "random"}));
  nf->add_option("--seed", seed, "Seed of the random strategy");

  gsb->add_option("--max-deg", maxDeg, "Bound on word lengths")->required();
  gsb->add_option("--max-rdeg", maxDegR, "Bound on the R-degree")->required();
  gsb->add_flag("--summary", summary, "List nontrivial compositions only");

  int confDeg = 6, confRdeg = 2;
  conf->add_option("--samples", samples, "Number of random polynomials");
  conf->add_option("--max-deg", confDeg, "Bound on word lengths");
  conf->add_option("--max-rdeg", confRdeg, "Bound on the R-degree");
  conf->add_option("--seed", seed, "Seed");

  post->add_option("--max-deg", maxDeg, "Bound on word lengths")->required();
  post->add_option("--max-rdeg", maxDegR, "Bound on the R-degree");
  post->add_flag("--printed-identity-3", printedThird,
                 "Use (x>y + y>x + x.y)>z = x>(y>z) as the third identity");

  irr->add_option("--max-deg", maxDeg, "Bound on word lengths")->required();
  irr->add_option("--max-rdeg", maxDegR, "Bound on the R-degree")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    certifyConvention();
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*check) return cmdCheck(c, file, out);
    if (*hatCmd) return cmdHat(c, file, out);
    if (*nf) return cmdNf(c, file, expr, trace, strategy, seed, out);
    if (*gsb) return cmdGsb(c, file, maxDeg, maxDegR, summary, out);
    if (*conf) return cmdConfluence(c, file, samples, confDeg, confRdeg, seed, out);
    if (*emb) return cmdEmbedding(c, file, out);
    if (*post) return cmdPostIdentities(c, file, maxDeg, maxDegR, printedThird, out);
    if (*irr) return cmdIrr(c, file, maxDeg, maxDegR, out);
  } catch (const AlgebraFileError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: expression: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace rbenv
