#include "rbenv/rewrite.hpp"

#include <set>
#include <stdexcept>

namespace rbenv {

std::string_view familyTag(Family f) {
  switch (f) {
    case Family::Commute: return "5";
    case Family::YRel: return "6";
    case Family::XRel: return "7";
    case Family::LongRel: return "8";
    case Family::XMiddle: return "9";
    case Family::XRight: return "10";
    case Family::AlmostRB: return "11";
    case Family::YAbsorb: return "8+";
    case Family::XShift: return "9+";
    case Family::PureRB: return "11p";
  }
  return "?";
}

namespace {

ContextFrame frameAround(std::span<const Letter> level, std::size_t pos, std::size_t len) {
  return {{level.begin(), level.begin() + static_cast<std::ptrdiff_t>(pos)},
          {level.begin() + static_cast<std::ptrdiff_t>(pos + len), level.end()}};
}

StarWord contextFor(const std::vector<ContextFrame>& outer, ContextFrame here) {
  auto frames = outer;
  frames.push_back(std::move(here));
  return StarWord(std::move(frames));
}

void collect(std::vector<RuleMatch>& out, std::span<const Letter> level, const RuleSource& rules,
             const std::vector<ContextFrame>& outer) {
  for (std::size_t pos = 0; pos < level.size(); ++pos) {
    for (auto& rule : rules.rulesAt(level, pos)) {
      auto ctx = contextFor(outer, frameAround(level, pos, rule.lhs.deg()));
      out.push_back({std::move(ctx), std::move(rule)});
    }
  }
  for (std::size_t pos = 0; pos < level.size(); ++pos) {
    if (!level[pos].isR()) continue;
    auto frames = outer;
    frames.push_back(frameAround(level, pos, 1));
    collect(out, level[pos].argument().letters(), rules, frames);
  }
}

std::optional<RuleMatch> firstAtLevel(std::span<const Letter> level, const RuleSource& rules,
                                      const std::vector<ContextFrame>& outer) {
  for (std::size_t pos = 0; pos < level.size(); ++pos) {
    auto found = rules.rulesAt(level, pos);
    if (found.empty()) continue;
    auto ctx = contextFor(outer, frameAround(level, pos, found.front().lhs.deg()));
    return RuleMatch{std::move(ctx), std::move(found.front())};
  }
  return std::nullopt;
}

std::optional<RuleMatch> search(std::span<const Letter> level, const RuleSource& rules,
                                const std::vector<ContextFrame>& outer, StrategyKind order) {
  const bool inner = order != StrategyKind::LeftmostOutermost;
  if (!inner) {
    if (auto m = firstAtLevel(level, rules, outer)) return m;
  }
  for (std::size_t pos = 0; pos < level.size(); ++pos) {
    if (!level[pos].isR()) continue;
    auto frames = outer;
    frames.push_back(frameAround(level, pos, 1));
    if (auto m = search(level[pos].argument().letters(), rules, frames, order)) return m;
  }
  if (inner) return firstAtLevel(level, rules, outer);
  return std::nullopt;
}

// Reduction driver shared by reduceStep and normalForm. Keeps the reducible
// support words of the current polynomial up to date across steps, so a step
// costs about the size of the replacement rather than of the polynomial.
class Stepper {
 public:
  Stepper(const RuleSource& rules, Strategy& strategy, Polynomial f)
      : rules_(rules), strategy_(strategy), cur_(std::move(f)) {
    for (const auto& [w, c] : cur_.terms()) track(w);
  }

  const Polynomial& current() const { return cur_; }

  // Performs one step; returns the step taken, or nullopt at a normal form.
  std::optional<std::pair<Word, RuleMatch>> step() {
    std::optional<std::pair<Word, RuleMatch>> choice;
    if (random()) {
      if (pool_.empty()) return std::nullopt;
      const Word w = pool_[strategy_.pick(pool_.size())];
      const auto& ms = matches(w);
      choice.emplace(w, ms[strategy_.pick(ms.size())]);
    } else {
      if (ordered_.empty()) return std::nullopt;
      const Word& w = *ordered_.begin();
      choice.emplace(w, *first(w));
    }
    const auto& [w, m] = *choice;
    const Rational c = cur_.coefficient(w);
    const Polynomial delta = c * substitute(m.context, m.rule.replacement);
    cur_.addTerm(w, -c);
    untrack(w);
    for (const auto& [u, k] : delta.terms()) {
      cur_.addTerm(u, k);
      if (cur_.coefficient(u) == 0) {
        untrack(u);
      } else {
        track(u);
      }
    }
    return choice;
  }

 private:
  bool random() const { return strategy_.kind() == StrategyKind::Random; }

  const std::vector<RuleMatch>& matches(const Word& w) {
    auto it = matches_.find(w);
    if (it == matches_.end()) it = matches_.emplace(w, rules_.query(w)).first;
    return it->second;
  }

  const std::optional<RuleMatch>& first(const Word& w) {
    auto it = first_.find(w);
    if (it == first_.end()) it = first_.emplace(w, findMatch(w, rules_, strategy_.kind())).first;
    return it->second;
  }

  void track(const Word& w) {
    if (random()) {
      if (slot_.contains(w) || matches(w).empty()) return;
      slot_.emplace(w, pool_.size());
      pool_.push_back(w);
    } else if (first(w)) {
      ordered_.insert(w);
    }
  }

  void untrack(const Word& w) {
    if (!random()) {
      ordered_.erase(w);
      return;
    }
    auto it = slot_.find(w);
    if (it == slot_.end()) return;
    const std::size_t i = it->second;
    slot_.erase(it);
    if (i + 1 != pool_.size()) {
      pool_[i] = std::move(pool_.back());
      slot_[pool_[i]] = i;
    }
    pool_.pop_back();
  }

  const RuleSource& rules_;
  Strategy& strategy_;
  Polynomial cur_;
  std::set<Word, WordGreater> ordered_;
  std::vector<Word> pool_;
  std::unordered_map<Word, std::size_t, WordHash> slot_;
  std::unordered_map<Word, std::optional<RuleMatch>, WordHash> first_;
  std::unordered_map<Word, std::vector<RuleMatch>, WordHash> matches_;
};

}  // namespace

std::vector<RuleMatch> RuleSource::query(const Word& w) const {
  std::vector<RuleMatch> out;
  collect(out, w.letters(), *this, {});
  return out;
}

std::optional<RuleMatch> findMatch(const Word& w, const RuleSource& rules, StrategyKind order) {
  return search(w.letters(), rules, {}, order);
}

bool isIrreducible(const Word& w, const RuleSource& rules) {
  return !findMatch(w, rules, StrategyKind::LeftmostOutermost).has_value();
}

StepResult reduceStep(const Polynomial& f, const RuleSource& rules, Strategy& strategy) {
  Stepper stepper(rules, strategy, f);
  auto choice = stepper.step();
  if (!choice) return {f, false, std::nullopt};
  auto& [w, m] = *choice;
  TraceStep step{w, m.context, m.rule.family, f, stepper.current()};
  return {stepper.current(), true, std::move(step)};
}

Polynomial normalForm(const Polynomial& f, const RuleSource& rules, Strategy& strategy,
                      std::vector<TraceStep>* trace, std::size_t budget) {
  Stepper stepper(rules, strategy, f);
  for (std::size_t steps = 0;; ++steps) {
    if (steps >= budget) throw std::runtime_error("reduction step budget exceeded");
    Polynomial before;
    if (trace) before = stepper.current();
    auto choice = stepper.step();
    if (!choice) return stepper.current();
    if (trace) {
      auto& [w, m] = *choice;
      trace->push_back({w, m.context, m.rule.family, std::move(before), stepper.current()});
    }
  }
}

const Polynomial& Normalizer::word(const Word& w) {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  if (++steps_ > budget_) throw std::runtime_error("reduction step budget exceeded");

  Polynomial result;
  bool changed = false;
  std::vector<Polynomial> factors;
  factors.reserve(w.deg());
  for (const auto& l : w.letters()) {
    if (l.isGenerator()) {
      factors.emplace_back(Word({l}));
      continue;
    }
    const Polynomial& arg = word(l.argument());
    if (arg.size() != 1 || !(arg.terms().begin()->first == l.argument()) ||
        arg.terms().begin()->second != 1) {
      changed = true;
    }
    factors.push_back(applyR(arg));
  }

  if (changed) {
    Polynomial prod = factors.front();
    for (std::size_t i = 1; i < factors.size() && !prod.isZero(); ++i) prod = prod * factors[i];
    result = (*this)(prod);
  } else if (auto m = firstAtLevel(w.letters(), rules_, {})) {
    result = (*this)(substitute(m->context, m->rule.replacement));
  } else {
    result = Polynomial(w);
  }
  return cache_.emplace(w, std::move(result)).first->second;
}

Polynomial Normalizer::operator()(const Polynomial& f) {
  Polynomial out;
  for (const auto& [w, c] : f.terms()) {
    const Polynomial& nf = word(w);
    for (const auto& [v, k] : nf.terms()) out.addTerm(v, c * k);
  }
  return out;
}

Polynomial normalForm(const Polynomial& f, const RuleSource& rules) {
  Normalizer nf(rules);
  return nf(f);
}

bool idealMember(const Polynomial& f, const RuleSource& rules) {
  return normalForm(f, rules).isZero();
}

}  // namespace rbenv
