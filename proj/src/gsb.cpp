#include "rbenv/gsb.hpp"

#include <algorithm>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace rbenv {

std::vector<Composition> intersectionCompositions(const Polynomial& f, const Polynomial& g) {
  std::vector<Composition> out;
  for (auto& ov : overlaps(leading(f), leading(g))) {
    out.push_back({.kind = CompositionKind::Intersection,
                   .f = f,
                   .g = g,
                   .w = ov.w,
                   .value = mulRight(f, ov.mu) - mulLeft(ov.nu, g),
                   .mu = ov.mu,
                   .nu = ov.nu});
  }
  return out;
}

std::vector<Composition> inclusionCompositions(const Polynomial& f, const Polynomial& g) {
  std::vector<Composition> out;
  const bool same = f == g;
  for (auto& q : occurrences(leading(f), leading(g))) {
    if (same && q.isIdentity()) continue;
    out.push_back({.kind = CompositionKind::Inclusion,
                   .f = f,
                   .g = g,
                   .w = leading(f),
                   .value = f - substitute(q, g),
                   .context = q});
  }
  return out;
}

bool trivialMod(const Composition& c, Normalizer& nf) { return nf(c.value).isZero(); }

bool trivialMod(const Composition& c, const RuleSource& rules) {
  Normalizer nf(rules);
  return trivialMod(c, nf);
}

std::size_t GsbReport::nontrivial() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.trivial; }));
}

namespace {

bool involvesPure(const CompositionRecord& r) {
  return r.familyF == Family::PureRB || r.familyG == Family::PureRB;
}

struct Index {
  std::unordered_map<Word, std::vector<std::size_t>, WordHash> byLhs;
  std::unordered_map<Word, std::vector<std::size_t>, WordHash> byFirstLetter;
};

void factorsAt(std::span<const Letter> level, const std::vector<ContextFrame>& outer,
               std::vector<std::pair<StarWord, Word>>& out) {
  for (std::size_t i = 0; i < level.size(); ++i)
    for (std::size_t j = i + 1; j <= level.size(); ++j) {
      auto frames = outer;
      frames.push_back({{level.begin(), level.begin() + static_cast<std::ptrdiff_t>(i)},
                        {level.begin() + static_cast<std::ptrdiff_t>(j), level.end()}});
      out.emplace_back(StarWord(std::move(frames)), makeWord(level.subspan(i, j - i)));
    }
  for (std::size_t i = 0; i < level.size(); ++i) {
    if (!level[i].isR()) continue;
    auto frames = outer;
    frames.push_back({{level.begin(), level.begin() + static_cast<std::ptrdiff_t>(i)},
                      {level.begin() + static_cast<std::ptrdiff_t>(i + 1), level.end()}});
    factorsAt(level[i].argument().letters(), frames, out);
  }
}

CompositionRecord makeRecord(const Composition& c, const RelationInstance& f,
                             const RelationInstance& g, Normalizer& nf) {
  Polynomial value = nf(c.value);
  const bool trivial = value.isZero();
  return {.kind = c.kind,
          .familyF = f.family,
          .familyG = g.family,
          .parametersF = f.parameters,
          .parametersG = g.parameters,
          .w = c.w,
          .context = c.context ? toString(*c.context)
                               : "mu=" + toString(*c.mu) + ", nu=" + toString(*c.nu),
          .trivial = trivial,
          .normalForm = std::move(value)};
}

std::vector<CompositionRecord> compositionsOf(std::size_t fi,
                                              const std::vector<RelationInstance>& inst,
                                              const Index& index, Bounds bounds, Normalizer& nf) {
  std::vector<CompositionRecord> out;
  const RelationInstance& F = inst[fi];
  const Word& lf = leading(F.relation);

  // Inclusion: every factor of lead(f) at any depth that is itself a leading word.
  std::vector<std::pair<StarWord, Word>> factors;
  factorsAt(lf.letters(), {}, factors);
  for (const auto& [q, sub] : factors) {
    auto it = index.byLhs.find(sub);
    if (it == index.byLhs.end()) continue;
    for (std::size_t gi : it->second) {
      if (gi == fi && q.isIdentity()) continue;
      Composition c{.kind = CompositionKind::Inclusion,
                    .w = lf,
                    .value = F.relation - substitute(q, inst[gi].relation),
                    .context = q};
      out.push_back(makeRecord(c, F, inst[gi], nf));
    }
  }

  // Intersection: a proper suffix of lead(f) is a proper prefix of lead(g).
  const auto letters = lf.letters();
  const std::size_t k = letters.size();
  for (std::size_t m = 1; m < k; ++m) {
    const auto suffix = letters.subspan(k - m);
    auto it = index.byFirstLetter.find(makeWord(suffix.first(1)));
    if (it == index.byFirstLetter.end()) continue;
    for (std::size_t gi : it->second) {
      const Word& lg = leading(inst[gi].relation);
      if (lg.deg() <= m) continue;
      if (!(makeWord(lg.letters().first(m)) == makeWord(suffix))) continue;
      Word mu = makeWord(lg.letters().subspan(m));
      Word nu = makeWord(letters.first(k - m));
      Word w = concat(lf, mu);
      if (!fits(w, bounds)) continue;
      Composition c{.kind = CompositionKind::Intersection,
                    .w = w,
                    .value = mulRight(F.relation, mu) - mulLeft(nu, inst[gi].relation),
                    .mu = mu,
                    .nu = nu};
      out.push_back(makeRecord(c, F, inst[gi], nf));
    }
  }
  return out;
}

}  // namespace

std::size_t GsbReport::pureReadingCount() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), involvesPure));
}

std::size_t GsbReport::pureReadingNontrivial() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) {
    return involvesPure(r) && !r.trivial;
  }));
}

GsbReport checkPairs(const std::vector<RelationInstance>& instances, const RuleSource& rules,
                     Bounds bounds, int threads) {
  Index index;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Word& l = leading(instances[i].relation);
    index.byLhs[l].push_back(i);
    index.byFirstLetter[makeWord(l.letters().first(1))].push_back(i);
  }

  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::vector<CompositionRecord>> perInstance(instances.size());
  auto work = [&](std::size_t t) {
    Normalizer nf(rules);
    for (std::size_t i = t; i < instances.size(); i += workers)
      perInstance[i] = compositionsOf(i, instances, index, bounds, nf);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
  }

  GsbReport report;
  report.bounds = bounds;
  report.instances = instances.size();
  for (auto& v : perInstance)
    for (auto& r : v) report.records.push_back(std::move(r));
  std::sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
    if (auto c = compare(a.w, b.w); c != 0) return c < 0;
    return std::tie(a.kind, a.familyF, a.familyG, a.parametersF, a.parametersG, a.context) <
           std::tie(b.kind, b.familyF, b.familyG, b.parametersF, b.parametersG, b.context);
  });
  return report;
}

}  // namespace rbenv
