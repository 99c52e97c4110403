#include "rbenv/confluence.hpp"

#include <algorithm>
#include <thread>

namespace rbenv {

namespace {

Generator randomGenerator(std::mt19937_64& rng, int dim) {
  const int g = std::uniform_int_distribution<int>(0, 2 * dim - 1)(rng);
  return g < dim ? y(g + 1) : x(g - dim + 1);
}

Word randomWordImpl(std::mt19937_64& rng, int dim, Bounds bounds, double p, int& budget) {
  const int len = std::uniform_int_distribution<int>(1, std::max(1, bounds.maxDeg))(rng);
  std::vector<Letter> letters;
  std::bernoulli_distribution takeR(p);
  for (int i = 0; i < len; ++i) {
    if (budget > 0 && takeR(rng)) {
      --budget;
      letters.push_back(Letter::r(randomWordImpl(rng, dim, bounds, p, budget)));
    } else {
      letters.push_back(Letter::gen(randomGenerator(rng, dim)));
    }
  }
  return Word(std::move(letters));
}

std::vector<Letter> randomSide(std::mt19937_64& rng, int dim, int maxSide) {
  std::vector<Letter> out;
  const int n = std::uniform_int_distribution<int>(0, maxSide)(rng);
  for (int i = 0; i < n; ++i) {
    if (std::bernoulli_distribution(0.25)(rng)) {
      out.push_back(Letter::r(randomWord(rng, dim, {2, 1})));
    } else {
      out.push_back(Letter::gen(randomGenerator(rng, dim)));
    }
  }
  return out;
}

}  // namespace

Word randomWord(std::mt19937_64& rng, int dim, Bounds bounds, double rProbability) {
  int budget = bounds.maxDegR;
  return randomWordImpl(rng, dim, bounds, rProbability, budget);
}

StarWord randomContext(std::mt19937_64& rng, int dim, int maxDepth, int maxSide) {
  const int depth = std::uniform_int_distribution<int>(0, maxDepth)(rng);
  std::vector<ContextFrame> frames;
  for (int d = 0; d <= depth; ++d)
    frames.push_back({randomSide(rng, dim, maxSide), randomSide(rng, dim, maxSide)});
  return StarWord(std::move(frames));
}

Polynomial randomPolynomial(std::mt19937_64& rng, int dim, Bounds bounds, int maxTerms,
                            int maxCoeff) {
  Polynomial out;
  const int terms = std::uniform_int_distribution<int>(1, maxTerms)(rng);
  std::uniform_int_distribution<int> coeff(-maxCoeff, maxCoeff);
  for (int t = 0; t < terms; ++t) {
    Word w = randomWord(rng, dim, bounds);
    out.addTerm(w, coeff(rng));
  }
  return out;
}

std::mt19937_64 sampleEngine(std::uint64_t seed, std::uint64_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return std::mt19937_64(seq);
}

ConfluenceReport runConfluence(const RuleSource& rules, int dim, std::size_t samples,
                               Bounds bounds, std::uint64_t seed, int threads) {
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  struct Found {
    std::size_t index;
    ConfluenceCase c;
  };
  std::vector<std::vector<Found>> found(workers);
  std::vector<std::size_t> counts(workers, 0);

  auto work = [&](std::size_t t) {
    Normalizer reference(rules);
    for (std::size_t i = t; i < samples; i += workers) {
      auto rng = sampleEngine(seed, i);
      Polynomial f = randomPolynomial(rng, dim, bounds);
      Strategy s1 = Strategy::random(rng());
      Strategy s2 = Strategy::random(rng());
      Polynomial a = normalForm(f, rules, s1);
      Polynomial b = normalForm(f, rules, s2);
      Polynomial r = reference(f);
      if (a == b && b == r) continue;
      ++counts[t];
      if (found[t].size() < ConfluenceReport::kMaxListed)
        found[t].push_back({i, {std::move(f), std::move(a), std::move(b), std::move(r)}});
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
  std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) { return a.index < b.index; });
  ConfluenceReport rep;
  rep.samples = samples;
  for (auto c : counts) rep.mismatches += c;
  for (auto& f : all) {
    if (rep.failures.size() == ConfluenceReport::kMaxListed) break;
    rep.failures.push_back(std::move(f.c));
  }
  return rep;
}

}  // namespace rbenv
