#pragma once

// Compositions of intersection and inclusion between monic relations, their
// triviality, and the bounded pairwise check over a list of relation instances.

#include <optional>
#include <string>
#include <vector>

#include "rbenv/rewrite.hpp"

namespace rbenv {

enum class CompositionKind { Intersection, Inclusion };

struct Composition {
  CompositionKind kind = CompositionKind::Intersection;
  Polynomial f;
  Polynomial g;
  Word w;
  Polynomial value;
  // Intersection: w = lead(f)*mu = nu*lead(g). Inclusion: w = lead(f) = q|lead(g).
  std::optional<Word> mu;
  std::optional<Word> nu;
  std::optional<StarWord> context;
};

/// f*mu - nu*g for every proper top-level overlap of the leading words.
std::vector<Composition> intersectionCompositions(const Polynomial& f, const Polynomial& g);

/// f - q|_g for every occurrence q of lead(g) in lead(f); when f == g the
/// identity context is skipped.
std::vector<Composition> inclusionCompositions(const Polynomial& f, const Polynomial& g);

/// True iff the composition value reduces to zero. Every step rewrites a word
/// below w, so zero is a certificate of triviality modulo (S, w).
bool trivialMod(const Composition& c, const RuleSource& rules);
bool trivialMod(const Composition& c, Normalizer& nf);

/// A monic relation together with where it came from.
struct RelationInstance {
  Polynomial relation;
  Family family = Family::Commute;
  std::string parameters;
};

struct CompositionRecord {
  CompositionKind kind = CompositionKind::Intersection;
  Family familyF = Family::Commute;
  Family familyG = Family::Commute;
  std::string parametersF;
  std::string parametersG;
  Word w;
  std::string context;  // rendered q or mu/nu
  bool trivial = true;
  Polynomial normalForm;  // of the value; zero when trivial
};

struct GsbReport {
  Bounds bounds;
  std::size_t instances = 0;
  std::vector<CompositionRecord> records;  // sorted by w, then kind, families, parameters
  std::size_t nontrivial() const;
  /// Records involving at least one PureRB instance.
  std::size_t pureReadingCount() const;
  std::size_t pureReadingNontrivial() const;
  bool pass() const { return nontrivial() == 0; }
};

/// All compositions between the given instances whose ambiguity word fits the
/// bounds, each checked for triviality against rules. Deterministic for any
/// thread count.
GsbReport checkPairs(const std::vector<RelationInstance>& instances, const RuleSource& rules,
                     Bounds bounds, int threads = 1);

}  // namespace rbenv
