#pragma once

// Generic reduction engine over a RuleSource: single steps under a selection
// strategy, normal forms, irreducibility and ideal membership.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rbenv/polynomial.hpp"

namespace rbenv {

/// Relation family a rule instance belongs to. The numbered families keep the
/// shapes of the defining relations; YAbsorb/XShift are the general shapes
/// (8+ and 9+) that contain 6,8 and 7,9,10 respectively.
enum class Family : std::uint8_t {
  Commute,    // 5
  YRel,       // 6
  XRel,       // 7
  LongRel,    // 8
  XMiddle,    // 9
  XRight,     // 10
  AlmostRB,   // 11
  YAbsorb,    // 8+
  XShift,     // 9+
  PureRB,     // 11p: RB relation with a pure argument (ideal element, not a rule)
};

std::string_view familyTag(Family f);

/// lhs -> replacement, with every replacement word strictly below lhs.
struct RewriteRule {
  Word lhs;
  Polynomial replacement;
  Family family = Family::Commute;

  /// The monic relation lhs - replacement.
  Polynomial relation() const { return Polynomial(lhs) - replacement; }
};

struct RuleMatch {
  StarWord context;
  RewriteRule rule;
};

/// Presents a (possibly infinite) set of rewrite rules through local matching.
class RuleSource {
 public:
  virtual ~RuleSource() = default;

  /// Every rule whose lhs equals letters[pos, pos+len) for some len >= 1.
  virtual std::vector<RewriteRule> rulesAt(std::span<const Letter> letters,
                                           std::size_t pos) const = 0;

  /// All (q, rule) with q|_{rule.lhs} = w, outer-leftmost first.
  std::vector<RuleMatch> query(const Word& w) const;
};

enum class StrategyKind : std::uint8_t { LeftmostInnermost, LeftmostOutermost, Random };

/// Selection policy for reduceStep. LeftmostInnermost and LeftmostOutermost
/// always reduce the leading reducible word; Random picks both the word and
/// the occurrence uniformly.
class Strategy {
 public:
  explicit Strategy(StrategyKind kind = StrategyKind::LeftmostInnermost, std::uint64_t seed = 0)
      : kind_(kind), rng_(seed) {}

  static Strategy innermost() { return Strategy(StrategyKind::LeftmostInnermost); }
  static Strategy outermost() { return Strategy(StrategyKind::LeftmostOutermost); }
  static Strategy random(std::uint64_t seed) { return Strategy(StrategyKind::Random, seed); }

  StrategyKind kind() const { return kind_; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  StrategyKind kind_;
  std::mt19937_64 rng_;
};

/// First match of w in innermost (post-order) or outermost (pre-order)
/// traversal; nullopt when w is irreducible.
std::optional<RuleMatch> findMatch(const Word& w, const RuleSource& rules, StrategyKind order);

bool isIrreducible(const Word& w, const RuleSource& rules);

struct TraceStep {
  Word word;
  StarWord context;
  Family family;
  Polynomial before;
  Polynomial after;
};

struct StepResult {
  Polynomial result;
  bool applied = false;
  std::optional<TraceStep> step;
};

StepResult reduceStep(const Polynomial& f, const RuleSource& rules, Strategy& strategy);

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

/// Stepwise normal form; throws std::runtime_error if the budget is exhausted.
Polynomial normalForm(const Polynomial& f, const RuleSource& rules, Strategy& strategy,
                      std::vector<TraceStep>* trace = nullptr,
                      std::size_t budget = kDefaultStepBudget);

/// Memoizing innermost normalizer. Not thread-safe; use one per thread.
class Normalizer {
 public:
  explicit Normalizer(const RuleSource& rules, std::size_t budget = kDefaultStepBudget)
      : rules_(rules), budget_(budget) {}

  Polynomial operator()(const Polynomial& f);
  const Polynomial& word(const Word& w);
  const RuleSource& rules() const { return rules_; }
  std::size_t cacheSize() const { return cache_.size(); }

 private:
  const RuleSource& rules_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::unordered_map<Word, Polynomial, WordHash> cache_;
};

/// Memoized innermost normal form.
Polynomial normalForm(const Polynomial& f, const RuleSource& rules);

/// True iff f reduces to zero. Exact only when the rules form a GSB.
bool idealMember(const Polynomial& f, const RuleSource& rules);

}  // namespace rbenv
