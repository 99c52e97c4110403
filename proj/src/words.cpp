#include "rbenv/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbenv {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t letterHash(const Letter& l) {
  if (l.isGenerator()) {
    return mix(static_cast<std::size_t>(l.generator().kind) + 1,
               static_cast<std::size_t>(l.generator().index));
  }
  return mix(0xabcdefULL, l.argument().hash());
}

bool sameLetter(const Letter& a, const Letter& b) {
  if (a.isGenerator() != b.isGenerator()) return false;
  if (a.isGenerator()) return a.generator() == b.generator();
  return a.argumentPtr() == b.argumentPtr() || a.argument() == b.argument();
}

void appendLevel(std::vector<StarWord>& out, std::span<const Letter> level,
                 const Word& p, const std::vector<ContextFrame>& outer) {
  const auto pat = p.letters();
  if (pat.size() <= level.size()) {
    for (std::size_t i = 0; i + pat.size() <= level.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k < pat.size() && ok; ++k) ok = sameLetter(level[i + k], pat[k]);
      if (!ok) continue;
      auto frames = outer;
      frames.push_back({{level.begin(), level.begin() + static_cast<std::ptrdiff_t>(i)},
                        {level.begin() + static_cast<std::ptrdiff_t>(i + pat.size()), level.end()}});
      out.emplace_back(std::move(frames));
    }
  }
  for (std::size_t j = 0; j < level.size(); ++j) {
    if (!level[j].isR()) continue;
    const Word& arg = level[j].argument();
    if (arg.degR() < p.degR()) continue;
    auto frames = outer;
    frames.push_back({{level.begin(), level.begin() + static_cast<std::ptrdiff_t>(j)},
                      {level.begin() + static_cast<std::ptrdiff_t>(j + 1), level.end()}});
    appendLevel(out, arg.letters(), p, frames);
  }
}

}  // namespace

Letter Letter::gen(Generator g) {
  Letter l;
  l.gen_ = g;
  return l;
}

Letter Letter::r(Word argument) {
  Letter l;
  l.arg_ = std::make_shared<const Word>(std::move(argument));
  return l;
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("word must have at least one letter");
  std::size_t h = letters_.size();
  for (const auto& l : letters_) {
    if (l.isR()) degR_ += 1 + l.argument().degR();
    h = mix(h, letterHash(l));
  }
  hash_ = h;
}

Word::Word(std::initializer_list<Generator> gens)
    : Word([&] {
        std::vector<Letter> ls;
        for (auto g : gens) ls.push_back(Letter::gen(g));
        return ls;
      }()) {}

std::optional<GenKind> Word::pureKind() const {
  if (degR_ != 0) return std::nullopt;
  const GenKind k = letters_.front().generator().kind;
  for (const auto& l : letters_)
    if (l.generator().kind != k) return std::nullopt;
  return k;
}

bool operator==(const Word& a, const Word& b) {
  if (&a == &b) return true;
  if (a.hash_ != b.hash_ || a.degR_ != b.degR_ || a.letters_.size() != b.letters_.size())
    return false;
  for (std::size_t i = 0; i < a.letters_.size(); ++i)
    if (!sameLetter(a.letters_[i], b.letters_[i])) return false;
  return true;
}

std::strong_ordering compareLetters(const Letter& a, const Letter& b) {
  if (a.isGenerator() && b.isGenerator()) return a.generator() <=> b.generator();
  if (a.isGenerator()) return std::strong_ordering::less;
  if (b.isGenerator()) return std::strong_ordering::greater;
  if (a.argumentPtr() == b.argumentPtr()) return std::strong_ordering::equal;
  return compare(a.argument(), b.argument());
}

std::strong_ordering compare(const Word& u, const Word& v) {
  if (auto c = u.degR() <=> v.degR(); c != 0) return c;
  if (auto c = u.deg() <=> v.deg(); c != 0) return c;
  for (std::size_t i = 0; i < u.deg(); ++i)
    if (auto c = compareLetters(u[i], v[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

Word concat(const Word& u, const Word& v) {
  std::vector<Letter> ls(u.letters().begin(), u.letters().end());
  ls.insert(ls.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(ls));
}

Word wrapR(const Word& u) { return Word({Letter::r(u)}); }

Word makeWord(std::span<const Letter> letters) {
  return Word(std::vector<Letter>(letters.begin(), letters.end()));
}

StarWord::StarWord(std::vector<ContextFrame> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw std::invalid_argument("context needs at least one frame");
}

bool StarWord::isIdentity() const {
  return frames_.size() == 1 && frames_[0].prefix.empty() && frames_[0].suffix.empty();
}

Word StarWord::substitute(const Word& u) const {
  std::vector<Letter> inner;
  for (std::size_t k = frames_.size(); k-- > 0;) {
    const auto& f = frames_[k];
    std::vector<Letter> level(f.prefix);
    if (k + 1 == frames_.size()) {
      level.insert(level.end(), u.letters().begin(), u.letters().end());
    } else {
      level.push_back(Letter::r(Word(std::move(inner))));
    }
    level.insert(level.end(), f.suffix.begin(), f.suffix.end());
    inner = std::move(level);
  }
  return Word(std::move(inner));
}

StarWord StarWord::nestedIn(const ContextFrame& outer) const {
  std::vector<ContextFrame> fs;
  fs.reserve(frames_.size() + 1);
  fs.push_back(outer);
  fs.insert(fs.end(), frames_.begin(), frames_.end());
  return StarWord(std::move(fs));
}

bool operator==(const StarWord& a, const StarWord& b) {
  if (a.frames_.size() != b.frames_.size()) return false;
  auto eq = [](const std::vector<Letter>& l, const std::vector<Letter>& r) {
    return std::equal(l.begin(), l.end(), r.begin(), r.end(), sameLetter);
  };
  for (std::size_t i = 0; i < a.frames_.size(); ++i) {
    if (!eq(a.frames_[i].prefix, b.frames_[i].prefix) || !eq(a.frames_[i].suffix, b.frames_[i].suffix))
      return false;
  }
  return true;
}

std::vector<StarWord> occurrences(const Word& w, const Word& p) {
  std::vector<StarWord> out;
  appendLevel(out, w.letters(), p, {});
  return out;
}

std::vector<Overlap> overlaps(const Word& u, const Word& v) {
  std::vector<Overlap> out;
  const auto a = u.letters();
  const auto b = v.letters();
  const std::size_t maxShared = std::min(a.size(), b.size());
  // Larger shared part gives a shorter w; emit by increasing deg w.
  for (std::size_t k = maxShared; k >= 1; --k) {
    if (k == a.size() || k == b.size()) continue;  // mu or nu would be empty
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) ok = sameLetter(a[a.size() - k + i], b[i]);
    if (!ok) continue;
    Word mu = makeWord(b.subspan(k));
    Word nu = makeWord(a.first(a.size() - k));
    Word w = concat(u, mu);
    out.push_back({std::move(mu), std::move(nu), std::move(w)});
  }
  return out;
}

bool fits(const Word& w, Bounds b) {
  if (w.degR() > b.maxDegR) return false;
  if (static_cast<int>(w.deg()) > b.maxDeg) return false;
  for (const auto& l : w.letters())
    if (l.isR() && !fits(l.argument(), {b.maxDeg, b.maxDegR})) return false;
  return true;
}

std::string toString(const Generator& g) {
  return (g.kind == GenKind::Y ? "y" : "x") + std::to_string(g.index);
}

namespace {
void render(std::string& out, std::span<const Letter> letters) {
  bool first = true;
  for (const auto& l : letters) {
    if (!first) out += '*';
    first = false;
    if (l.isGenerator()) {
      out += toString(l.generator());
    } else {
      out += "R(";
      render(out, l.argument().letters());
      out += ')';
    }
  }
}
}  // namespace

std::string toString(const Word& w) {
  std::string s;
  render(s, w.letters());
  return s;
}

std::string toString(const StarWord& q) {
  // The hole renders as "[]".
  std::string inner;
  const auto& fs = q.frames();
  for (std::size_t k = fs.size(); k-- > 0;) {
    std::string level;
    render(level, fs[k].prefix);
    auto sep = [&] {
      if (!level.empty()) level += '*';
    };
    sep();
    if (k + 1 == fs.size()) {
      level += "[]";
    } else {
      level += "R(" + inner + ")";
    }
    if (!fs[k].suffix.empty()) {
      level += '*';
      render(level, fs[k].suffix);
    }
    inner = std::move(level);
  }
  return inner;
}

}  // namespace rbenv
