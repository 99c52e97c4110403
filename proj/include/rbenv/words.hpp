#pragma once

// Bracketed words of the free Rota-Baxter associative algebra over a doubled
// generator set {y_i} u {x_i}, the monomial order on them, one-hole contexts
// and the subword/overlap machinery used by the rewriting engine.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rbenv {

enum class GenKind : std::uint8_t { Y = 0, X = 1 };

/// A generator y_i or x_i (index is 1-based). All y's precede all x's.
struct Generator {
  GenKind kind = GenKind::Y;
  int index = 1;

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator y(int i) { return {GenKind::Y, i}; }
inline Generator x(int i) { return {GenKind::X, i}; }

class Word;

/// A single letter: either a generator or an R-letter R(w).
class Letter {
 public:
  static Letter gen(Generator g);
  static Letter r(Word argument);

  bool isGenerator() const { return !arg_; }
  bool isR() const { return static_cast<bool>(arg_); }
  const Generator& generator() const { return gen_; }
  const Word& argument() const { return *arg_; }
  const std::shared_ptr<const Word>& argumentPtr() const { return arg_; }

 private:
  Generator gen_{};
  std::shared_ptr<const Word> arg_;
};

/// Nonempty sequence of letters. Immutable; R-letter arguments are shared.
class Word {
 public:
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Generator> gens);

  static Word of(Generator g) { return Word({g}); }

  std::span<const Letter> letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  /// Top-level letter count.
  std::size_t deg() const { return letters_.size(); }
  /// Number of R symbols at every nesting depth.
  int degR() const { return degR_; }
  std::size_t hash() const { return hash_; }

  /// The kind of a word with no R-letters whose generators are all of one
  /// kind; nullopt otherwise.
  std::optional<GenKind> pureKind() const;
  bool isPure() const { return pureKind().has_value(); }

  friend bool operator==(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
  int degR_ = 0;
  std::size_t hash_ = 0;
};

std::strong_ordering compare(const Word& u, const Word& v);
std::strong_ordering compareLetters(const Letter& a, const Letter& b);

inline bool operator<(const Word& a, const Word& b) { return compare(a, b) < 0; }

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

struct WordGreater {
  bool operator()(const Word& a, const Word& b) const { return compare(a, b) > 0; }
};

inline int degR(const Word& w) { return w.degR(); }
Word concat(const Word& u, const Word& v);
Word wrapR(const Word& u);

/// Word built from a letter range; the range must be nonempty.
Word makeWord(std::span<const Letter> letters);

/// One level of a context: the letters left and right of the hole (or of the
/// R-letter containing the next level).
struct ContextFrame {
  std::vector<Letter> prefix;
  std::vector<Letter> suffix;
};

/// A bracketed word with exactly one hole. frames()[0] is the outermost level;
/// the hole sits between prefix and suffix of the last frame.
class StarWord {
 public:
  StarWord() : frames_(1) {}
  explicit StarWord(std::vector<ContextFrame> frames);

  static StarWord identity() { return StarWord(); }

  const std::vector<ContextFrame>& frames() const { return frames_; }
  bool isIdentity() const;
  std::size_t depth() const { return frames_.size() - 1; }

  /// Splices u's letters into the hole.
  Word substitute(const Word& u) const;

  /// Wraps this context inside an outer frame: result = outer.prefix R(this) outer.suffix.
  StarWord nestedIn(const ContextFrame& outer) const;

  friend bool operator==(const StarWord&, const StarWord&);

 private:
  std::vector<ContextFrame> frames_;
};

inline Word substitute(const StarWord& q, const Word& u) { return q.substitute(u); }

/// Every context q with q|_p = w, top-level matches left to right first, then
/// recursively inside R-letters left to right.
std::vector<StarWord> occurrences(const Word& w, const Word& p);

struct Overlap {
  Word mu;
  Word nu;
  Word w;
};

/// Top-level proper overlaps w = u*mu = nu*v with nonempty mu, nu and
/// deg w < deg u + deg v, ordered by increasing deg w.
std::vector<Overlap> overlaps(const Word& u, const Word& v);

/// Bounds used by every enumeration: degR(w) <= maxDegR, and the top-level
/// length of w and of every nested R-argument is <= maxDeg.
struct Bounds {
  int maxDeg = 0;
  int maxDegR = 0;
};

bool fits(const Word& w, Bounds b);

std::string toString(const Generator& g);
std::string toString(const Word& w);
std::string toString(const StarWord& q);

}  // namespace rbenv
