#pragma once

// Random words, contexts and polynomials, and the strategy-independence
// check of normal forms built on them.

#include <cstdint>
#include <random>
#include <vector>

#include "rbenv/rewrite.hpp"

namespace rbenv {

/// Uniform top-level length in 1..maxDeg; each letter is an R-letter with
/// probability rProbability while the R-degree budget lasts.
Word randomWord(std::mt19937_64& rng, int dim, Bounds bounds, double rProbability = 0.3);

/// A context with at most maxDepth nested frames and short random sides.
StarWord randomContext(std::mt19937_64& rng, int dim, int maxDepth = 2, int maxSide = 2);

/// 1..maxTerms random words with coefficients drawn from -maxCoeff..maxCoeff.
Polynomial randomPolynomial(std::mt19937_64& rng, int dim, Bounds bounds, int maxTerms = 3,
                            int maxCoeff = 2);

/// Engine for sample i of a run seeded with seed.
std::mt19937_64 sampleEngine(std::uint64_t seed, std::uint64_t i);

struct ConfluenceCase {
  Polynomial input;
  Polynomial first;      // random strategy, first seed
  Polynomial second;     // random strategy, second seed
  Polynomial reference;  // memoized innermost
};

struct ConfluenceReport {
  std::size_t samples = 0;
  std::size_t mismatches = 0;
  std::vector<ConfluenceCase> failures;  // first kMaxListed, in sample order
  bool pass() const { return mismatches == 0; }

  static constexpr std::size_t kMaxListed = 20;
};

/// Reduces each sample under two independently seeded random strategies and
/// the memoized innermost normalizer; any disagreement is a mismatch.
ConfluenceReport runConfluence(const RuleSource& rules, int dim, std::size_t samples,
                               Bounds bounds, std::uint64_t seed, int threads = 1);

}  // namespace rbenv
