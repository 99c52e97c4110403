#include "rbenv/envelope.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

namespace rbenv {

RewriteRule almostRBRule(const Word& a, const Word& b, const Rational& lambda, Family family) {
  const Word ra = wrapR(a), rb = wrapR(b);
  Polynomial inner(concat(ra, b));
  inner += Polynomial(concat(a, rb));
  inner.addTerm(concat(a, b), lambda);
  return {concat(ra, rb), applyR(inner), family};
}

Polynomial applyRule(const Polynomial& f, const RewriteRule& r) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) {
    auto occ = occurrences(w, r.lhs);
    if (occ.empty()) {
      out.addTerm(w, c);
    } else {
      out += c * substitute(occ.front(), r.replacement);
    }
  }
  return out;
}

EnvelopeRules::EnvelopeRules(const RBLieAlgebra& h, RuleOptions options)
    : n_(h.n), lambda_(h.weight), options_(std::move(options)) {
  const int d = h.dim();
  brackets_.resize(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      brackets_[static_cast<std::size_t>(i) * d + j] = h.toPolynomial(h.bracket.apply(i, j));
}

int EnvelopeRules::index(Generator g) const {
  if (g.index < 1 || g.index > n_) throw std::out_of_range("generator " + toString(g) + " out of range");
  return (g.kind == GenKind::Y ? 0 : n_) + g.index - 1;
}

const Polynomial& EnvelopeRules::bracket(Generator a, Generator b) const {
  return brackets_[static_cast<std::size_t>(index(a)) * (2 * n_) + index(b)];
}

std::optional<RewriteRule> EnvelopeRules::commute(Generator a, Generator b) const {
  if (!(b < a)) return std::nullopt;
  Polynomial br = bracket(a, b);
  if (options_.negatedBracket && options_.negatedBracket->first == a &&
      options_.negatedBracket->second == b) {
    br *= Rational(-1);
  }
  Polynomial rep(Word{b, a});
  rep += br;
  return RewriteRule{Word{a, b}, std::move(rep), Family::Commute};
}

namespace {

struct TopLevel {
  int ys = 0;
  int xs = 0;
  std::vector<std::size_t> rs;  // positions of R-letters
};

TopLevel scan(const Word& w) {
  TopLevel t;
  for (std::size_t i = 0; i < w.deg(); ++i) {
    const Letter& l = w[i];
    if (l.isR()) {
      t.rs.push_back(i);
    } else if (l.generator().kind == GenKind::Y) {
      ++t.ys;
    } else {
      ++t.xs;
    }
  }
  return t;
}

bool argsOutsidePure(const Word& w, const TopLevel& t) {
  return std::all_of(t.rs.begin(), t.rs.end(), [&](std::size_t p) { return !w[p].argument().isPure(); });
}

// R(a1) block R(a2) block ... R(a_{s+1}) with s >= 1.
bool isLongShape(const Word& w, const TopLevel& t) {
  if (t.rs.size() < 2 || !w[0].isR() || !w[w.deg() - 1].isR()) return false;
  for (std::size_t i = 0; i + 1 < w.deg(); ++i)
    if (w[i].isR() && w[i + 1].isR()) return false;
  return argsOutsidePure(w, t);
}

// w with the R-letters at the chosen positions replaced by their arguments.
Word spliceArguments(const Word& w, const std::vector<std::size_t>& chosen) {
  std::vector<Letter> out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < w.deg(); ++i) {
    if (next < chosen.size() && chosen[next] == i) {
      const auto inner = w[i].argument().letters();
      out.insert(out.end(), inner.begin(), inner.end());
      ++next;
    } else {
      out.push_back(w[i]);
    }
  }
  return Word(std::move(out));
}

}  // namespace

std::optional<RewriteRule> EnvelopeRules::singleLetter(const Word& arg) const {
  const TopLevel t = scan(arg);
  const Word lhs = wrapR(arg);
  const bool printed = options_.variant == RuleVariant::Printed;

  if (t.ys > 0 && t.xs == 0) {
    Family fam = Family::YAbsorb;
    if (t.rs.empty()) {
      fam = Family::YRel;
    } else if (isLongShape(arg, t)) {
      fam = Family::LongRel;
    }
    if (printed && fam == Family::YAbsorb) return std::nullopt;
    return RewriteRule{lhs, Polynomial(arg), fam};
  }

  if (t.xs > 0 && t.ys == 0) {
    Family fam = Family::XShift;
    const std::size_t k = t.rs.size();
    if (k == 0) {
      fam = Family::XRel;
    } else if (argsOutsidePure(arg, t)) {
      const bool first = arg[0].isR(), last = arg[arg.deg() - 1].isR();
      if (k == 2 && first && last && arg.deg() > 2) fam = Family::XMiddle;
      if (k == 1 && arg.deg() > 1 && (first || last)) fam = Family::XRight;
    }
    if (printed && fam == Family::XShift) return std::nullopt;
    Polynomial rep;
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> chosen;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t{1} << b)) chosen.push_back(t.rs[b]);
      rep.addTerm(wrapR(spliceArguments(arg, chosen)), chosen.size() % 2 == 1 ? 1 : -1);
    }
    return RewriteRule{lhs, std::move(rep), fam};
  }
  return std::nullopt;
}

std::optional<RewriteRule> EnvelopeRules::almostRB(const Word& a, const Word& b) const {
  if (options_.dropAlmostRB || a.isPure() || b.isPure()) return std::nullopt;
  return almostRBRule(a, b, lambda_, Family::AlmostRB);
}

std::vector<RewriteRule> EnvelopeRules::rulesAt(std::span<const Letter> letters,
                                                std::size_t pos) const {
  std::vector<RewriteRule> out;
  const Letter& l = letters[pos];
  if (l.isR()) {
    if (auto r = singleLetter(l.argument())) out.push_back(std::move(*r));
  }
  if (pos + 1 < letters.size()) {
    const Letter& m = letters[pos + 1];
    if (l.isGenerator() && m.isGenerator()) {
      if (auto r = commute(l.generator(), m.generator())) out.push_back(std::move(*r));
    } else if (l.isR() && m.isR()) {
      if (auto r = almostRB(l.argument(), m.argument())) out.push_back(std::move(*r));
    }
  }
  return out;
}

EnvelopeRules buildRuleSource(const RBLieAlgebra& h, RuleOptions options) {
  return EnvelopeRules(h, std::move(options));
}

namespace {

std::vector<Letter> generatorLetters(int dim) {
  std::vector<Letter> out;
  for (int i = 1; i <= dim; ++i) out.push_back(Letter::gen(y(i)));
  for (int i = 1; i <= dim; ++i) out.push_back(Letter::gen(x(i)));
  return out;
}

int letterDegR(const Letter& l) { return l.isR() ? 1 + l.argument().degR() : 0; }

// True if some rule matches a factor of seq that ends at its last letter.
bool reducibleAtEnd(const RuleSource& rules, const std::vector<Letter>& seq) {
  const std::span<const Letter> s(seq);
  for (std::size_t pos = 0; pos < seq.size(); ++pos)
    for (const auto& r : rules.rulesAt(s, pos))
      if (pos + r.lhs.deg() == seq.size()) return true;
  return false;
}

}  // namespace

std::vector<Word> irrWords(const RuleSource& rules, int dim, Bounds bounds) {
  if (bounds.maxDeg <= 0 || bounds.maxDegR < 0) return {};
  std::vector<Word> prev;  // irreducible words with degR <= k-1
  std::vector<Word> cur;
  for (int k = 0; k <= bounds.maxDegR; ++k) {
    std::vector<Letter> letters = generatorLetters(dim);
    for (const auto& a : prev) {
      Letter l = Letter::r(a);
      const std::vector<Letter> single{l};
      if (rules.rulesAt(single, 0).empty()) letters.push_back(std::move(l));
    }
    cur.clear();
    std::vector<Letter> seq;
    std::function<void(int)> extend = [&](int budget) {
      for (const auto& l : letters) {
        const int d = letterDegR(l);
        if (d > budget) continue;
        seq.push_back(l);
        if (!reducibleAtEnd(rules, seq)) {
          cur.emplace_back(seq);
          if (static_cast<int>(seq.size()) < bounds.maxDeg) extend(budget - d);
        }
        seq.pop_back();
      }
    };
    extend(k);
    prev = cur;
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

namespace {

void sortedPure(GenKind kind, int dim, int maxLen, std::vector<Letter>& cur, int minIndex,
                std::vector<Word>& out) {
  if (!cur.empty()) out.emplace_back(cur);
  if (static_cast<int>(cur.size()) == maxLen) return;
  for (int i = minIndex; i <= dim; ++i) {
    cur.push_back(Letter::gen({kind, i}));
    sortedPure(kind, dim, maxLen, cur, i, out);
    cur.pop_back();
  }
}

std::vector<Word> sortedPureWords(GenKind kind, int dim, int maxLen) {
  std::vector<Word> out;
  std::vector<Letter> cur;
  if (maxLen > 0) sortedPure(kind, dim, maxLen, cur, 1, out);
  return out;
}

}  // namespace

std::vector<RelationInstance> instantiateRelations(const EnvelopeContext& ctx, int maxDeg,
                                                   int maxDegR, bool pureReading) {
  const Bounds bounds{maxDeg, maxDegR};
  const int n = ctx.hat.n;
  const auto& rules = ctx.rules;
  std::vector<RelationInstance> out;
  auto add = [&](const RewriteRule& r, std::string params) {
    if (fits(r.lhs, bounds)) out.push_back({r.relation(), r.family, std::move(params)});
  };

  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back(y(i));
  for (int i = 1; i <= n; ++i) gens.push_back(x(i));
  for (auto a : gens)
    for (auto b : gens)
      if (auto r = rules.commute(a, b)) add(*r, toString(a) + "," + toString(b));

  std::vector<Word> params;
  if (maxDegR >= 2)
    for (auto& w : irrWords(ctx, maxDeg, maxDegR - 2))
      if (!w.isPure()) params.push_back(std::move(w));

  for (GenKind kind : {GenKind::Y, GenKind::X}) {
    const auto blocks = sortedPureWords(kind, n, maxDeg);
    std::vector<Letter> seq;
    std::function<void(bool, bool, int)> extend = [&](bool lastBlock, bool hasBlock, int rdeg) {
      if (hasBlock) {
        Word arg(seq);
        if (auto r = rules.singleLetter(arg)) add(*r, toString(arg));
      }
      if (!lastBlock) {
        for (const auto& b : blocks) {
          if (seq.size() + b.deg() > static_cast<std::size_t>(maxDeg)) continue;
          seq.insert(seq.end(), b.letters().begin(), b.letters().end());
          extend(true, true, rdeg);
          seq.resize(seq.size() - b.deg());
        }
      }
      if (seq.size() < static_cast<std::size_t>(maxDeg)) {
        for (const auto& a : params) {
          const int d = rdeg + 1 + a.degR();
          if (d > maxDegR) continue;
          seq.push_back(Letter::r(a));
          extend(false, hasBlock, d);
          seq.pop_back();
        }
      }
    };
    if (maxDegR >= 1) extend(false, false, 1);
  }

  for (const auto& a : params)
    for (const auto& b : params)
      if (auto r = rules.almostRB(a, b)) add(*r, toString(a) + "," + toString(b));

  if (pureReading && maxDegR >= 2) {
    std::vector<Word> args = params;
    for (GenKind kind : {GenKind::Y, GenKind::X})
      for (auto& b : sortedPureWords(kind, n, maxDeg)) args.push_back(std::move(b));
    for (const auto& a : args)
      for (const auto& b : args)
        if (a.isPure() || b.isPure())
          add(almostRBRule(a, b, rules.weight(), Family::PureRB), toString(a) + "," + toString(b));
  }

  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (auto c = compare(leading(p.relation), leading(q.relation)); c != 0) return c < 0;
    return std::tie(p.family, p.parameters) < std::tie(q.family, q.parameters);
  });
  return out;
}

Polynomial embed(const RBLieAlgebra& h, int i) {
  if (i < 1 || i > h.n) throw std::out_of_range("basis index " + std::to_string(i) + " out of range");
  return Polynomial(x(i)) - Polynomial(y(i));
}

Polynomial embed(const RBLieAlgebra& h, const Vec& v) {
  Polynomial out;
  for (int k = 0; k < h.n; ++k)
    if (v[k] != 0) out += v[k] * embed(h, k + 1);
  return out;
}

const Polynomial& Quotient::mulWords(const Word& a, const Word& b) {
  auto key = std::pair{a, b};
  if (auto it = mul_.find(key); it != mul_.end()) return it->second;
  Polynomial v = nf_.word(concat(a, b));
  return mul_.emplace(std::move(key), std::move(v)).first->second;
}

const Polynomial& Quotient::pWord(const Word& a) {
  if (auto it = p_.find(a); it != p_.end()) return it->second;
  Polynomial v = nf_.word(wrapR(a));
  return p_.emplace(a, std::move(v)).first->second;
}

Polynomial Quotient::mul(const Polynomial& u, const Polynomial& v) {
  Polynomial out;
  for (const auto& [a, c] : u.terms())
    for (const auto& [b, d] : v.terms()) {
      const Rational cd = c * d;
      for (const auto& [w, k] : mulWords(a, b).terms()) out.addTerm(w, cd * k);
    }
  return out;
}

Polynomial Quotient::P(const Polynomial& u) {
  Polynomial out;
  for (const auto& [a, c] : u.terms())
    for (const auto& [w, k] : pWord(a).terms()) out.addTerm(w, c * k);
  return out;
}

Polynomial Quotient::succ(const Polynomial& u, const Polynomial& v) { return mul(P(u), v); }
Polynomial Quotient::prec(const Polynomial& u, const Polynomial& v) { return mul(u, P(v)); }
Polynomial Quotient::dot(const Polynomial& u, const Polynomial& v) {
  return ctx_.rules.weight() * mul(u, v);
}

PostProducts postOps(const EnvelopeContext& ctx, const Polynomial& u, const Polynomial& v) {
  Quotient q(ctx);
  return {q.succ(u, v), q.prec(u, v), q.dot(u, v)};
}

DerivedPostLie derivedPostLie(const EnvelopeContext& ctx, const Polynomial& u,
                              const Polynomial& v) {
  Quotient q(ctx);
  const Polynomial pu = q.P(u);
  return {q.mul(pu, v) - q.mul(v, pu), ctx.rules.weight() * (q.mul(u, v) - q.mul(v, u))};
}

bool EmbeddingReport::morphism() const {
  return std::all_of(table.begin(), table.end(),
                     [](const auto& e) { return e.productOk() && e.bracketOk(); });
}

namespace {

int rankOf(const std::vector<Polynomial>& rows) {
  std::vector<Word> cols;
  for (const auto& r : rows)
    for (const auto& [w, c] : r.terms())
      if (std::find(cols.begin(), cols.end(), w) == cols.end()) cols.push_back(w);
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& w : cols) row.push_back(r.coefficient(w));
    m.push_back(std::move(row));
  }
  int rank = 0;
  for (std::size_t col = 0; col < cols.size() && rank < static_cast<int>(m.size()); ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const auto& p = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][col] == 0) continue;
      const Rational f = m[r][col] / p[col];
      for (std::size_t c = col; c < cols.size(); ++c) m[r][c] -= f * p[c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

EmbeddingReport verifyEmbedding(const PostLieAlgebra& p, const EnvelopeContext& ctx) {
  const RBLieAlgebra& h = ctx.hat;
  if (p.dim != h.n) throw std::invalid_argument("algebra dimension does not match the quotient");
  EmbeddingReport rep;
  for (int i = 1; i <= h.n; ++i) rep.images.push_back(embed(h, i));
  for (std::size_t i = 0; i < rep.images.size(); ++i) {
    for (const auto& [w, c] : rep.images[i].terms()) {
      if (!isIrreducible(w, ctx.rules)) rep.supportsIrreducible = false;
      for (std::size_t j = 0; j < i; ++j)
        if (rep.images[j].coefficient(w) != 0) rep.supportsDistinct = false;
    }
  }
  rep.rank = rankOf(rep.images);

  Quotient q(ctx);
  for (int a = 0; a < p.dim; ++a)
    for (int b = 0; b < p.dim; ++b) {
      const Polynomial& ua = rep.images[static_cast<std::size_t>(a)];
      const Polynomial& ub = rep.images[static_cast<std::size_t>(b)];
      const Polynomial pu = q.P(ua);
      MorphismEntry e;
      e.a = a;
      e.b = b;
      e.product = q.mul(pu, ub) - q.mul(ub, pu);
      e.bracket = h.weight * (q.mul(ua, ub) - q.mul(ub, ua));
      e.expectedProduct = embed(h, p.product.apply(a, b));
      e.expectedBracket = embed(h, p.bracket.apply(a, b));
      rep.table.push_back(std::move(e));
    }
  return rep;
}

EmbeddingReport verifyEmbedding(const PostLieAlgebra& p) {
  EnvelopeContext ctx(hat(p));
  return verifyEmbedding(p, ctx);
}

std::string_view postIdentityText(int identity, bool printedThird) {
  switch (identity) {
    case 1: return "(x<y)<z = x<(y>z + y<z + y.z)";
    case 2: return "(x>y)<z = x>(y<z)";
    case 3:
      return printedThird ? "(x>y + y>x + x.y)>z = x>(y>z)" : "(x>y + x<y + x.y)>z = x>(y>z)";
    case 4: return "x>(y.z) = (x>y).z";
    case 5: return "(x<y).z = x.(y>z)";
    case 6: return "(x.y)<z = x.(y<z)";
    case 7: return "(x.y).z = x.(y.z)";
  }
  return "?";
}

namespace {

// Binary products of the pairs (x,y) and (y,z) shared by all seven identities.
struct TripleParts {
  const Polynomial& x;
  const Polynomial& z;
  const Polynomial& xPrecY;
  const Polynomial& xSuccY;
  const Polynomial& xDotY;
  const Polynomial& yxSucc;  // y>x, only for the printed third identity
  const Polynomial& ySuccZ;
  const Polynomial& yPrecZ;
  const Polynomial& yDotZ;
};

Polynomial residual(Quotient& q, int identity, const TripleParts& t, bool printedThird) {
  switch (identity) {
    case 1: return q.prec(t.xPrecY, t.z) - q.prec(t.x, t.ySuccZ + t.yPrecZ + t.yDotZ);
    case 2: return q.prec(t.xSuccY, t.z) - q.succ(t.x, t.yPrecZ);
    case 3: {
      Polynomial left = t.xSuccY + (printedThird ? t.yxSucc : t.xPrecY) + t.xDotY;
      return q.succ(left, t.z) - q.succ(t.x, t.ySuccZ);
    }
    case 4: return q.succ(t.x, t.yDotZ) - q.dot(t.xSuccY, t.z);
    case 5: return q.dot(t.xPrecY, t.z) - q.dot(t.x, t.ySuccZ);
    case 6: return q.prec(t.xDotY, t.z) - q.dot(t.x, t.yPrecZ);
    case 7: return q.dot(t.xDotY, t.z) - q.dot(t.x, t.yDotZ);
  }
  throw std::out_of_range("identity index must be 1..7");
}

}  // namespace

Polynomial postIdentityResidual(Quotient& q, int identity, const Polynomial& x,
                                const Polynomial& y, const Polynomial& z, bool printedThird) {
  const Polynomial a = q.prec(x, y), b = q.succ(x, y), c = q.dot(x, y), yx = q.succ(y, x);
  const Polynomial s = q.succ(y, z), p = q.prec(y, z), d = q.dot(y, z);
  return residual(q, identity, {x, z, a, b, c, yx, s, p, d}, printedThird);
}

PostIdentityReport verifyPostassociative(const EnvelopeContext& ctx,
                                         const PostIdentityOptions& options) {
  const auto words = irrWords(ctx, options.maxDeg, options.maxDegR);
  const std::size_t n = words.size();
  std::vector<Polynomial> polys;
  polys.reserve(n);
  for (const auto& w : words) polys.emplace_back(w);

  struct Found {
    std::size_t i, j, k;
    int identity;
    Polynomial residual;
  };
  const std::size_t workers = static_cast<std::size_t>(std::max(1, options.threads));
  std::vector<std::vector<Found>> found(workers);
  std::vector<std::size_t> counts(workers, 0);

  auto work = [&](std::size_t t) {
    Quotient q(ctx);
    std::vector<Polynomial> succ(n * n), prec(n * n), dot(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        succ[a * n + b] = q.succ(polys[a], polys[b]);
        prec[a * n + b] = q.prec(polys[a], polys[b]);
        dot[a * n + b] = q.dot(polys[a], polys[b]);
      }
    for (std::size_t i = t; i < n; i += workers)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const TripleParts parts{polys[i],         polys[k],         prec[i * n + j],
                                  succ[i * n + j],  dot[i * n + j],   succ[j * n + i],
                                  succ[j * n + k],  prec[j * n + k],  dot[j * n + k]};
          for (int id = 1; id <= 7; ++id) {
            Polynomial r = residual(q, id, parts, options.printedThirdIdentity);
            if (r.isZero()) continue;
            ++counts[t];
            if (found[t].size() < PostIdentityReport::kMaxListed)
              found[t].push_back({i, j, k, id, std::move(r)});
          }
        }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
  }

  std::vector<Found> all;
  for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) {
    return std::tie(a.i, a.j, a.k, a.identity) < std::tie(b.i, b.j, b.k, b.identity);
  });
  PostIdentityReport rep;
  rep.words = n;
  rep.triples = n * n * n;
  for (auto c : counts) rep.violationCount += c;
  for (auto& f : all) {
    if (rep.violations.size() == PostIdentityReport::kMaxListed) break;
    rep.violations.push_back({f.identity, words[f.i], words[f.j], words[f.k], std::move(f.residual)});
  }
  return rep;
}

std::vector<RBQuotientFailure> checkRBInQuotient(const EnvelopeContext& ctx, Bounds bounds) {
  const auto words = irrWords(ctx.rules, ctx.hat.n, bounds);
  Normalizer nf(ctx.rules);
  std::vector<RBQuotientFailure> out;
  for (const auto& a : words)
    for (const auto& b : words) {
      const RewriteRule rb = almostRBRule(a, b, ctx.rules.weight(), Family::AlmostRB);
      Polynomial lhs = nf(Polynomial(rb.lhs));
      Polynomial rhs = nf(rb.replacement);
      if (lhs != rhs) out.push_back({a, b, std::move(lhs), std::move(rhs)});
    }
  return out;
}

}  // namespace rbenv
