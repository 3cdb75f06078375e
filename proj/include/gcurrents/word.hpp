#pragma once

// Reduced words in a free group F_N with a fixed basis a, b, c, ...
//
// Text syntax: lowercase letters are generators in order, uppercase letters
// are their inverses (A = a^-1); "1" or the empty string is the identity.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcurrents/errors.hpp"

namespace gcurrents {

inline constexpr int kMaxRank = 26;

/// A generator or its inverse. Encoded as 2*(index-1) + (inverse ? 1 : 0), so
/// the natural order is a < A < b < B < ... (index first, then sign).
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::uint8_t>(2 * (generator - 1) + (sign < 0 ? 1 : 0))) {}

  static constexpr Letter from_code(std::uint8_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  static Letter parse(int rank, char c) {
    int gen = 0;
    int sign = 1;
    if (c >= 'a' && c <= 'z') {
      gen = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      gen = c - 'A' + 1;
      sign = -1;
    } else {
      throw ParseError(std::string("not a letter: '") + c + "'");
    }
    if (gen > rank) {
      throw ParseError(std::string("letter '") + c + "' outside rank " + std::to_string(rank));
    }
    return Letter(gen, sign);
  }

  constexpr int generator() const { return code_ / 2 + 1; }
  constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
  constexpr bool positive() const { return (code_ & 1) == 0; }
  constexpr std::uint8_t code() const { return code_; }
  constexpr Letter inverse() const { return from_code(static_cast<std::uint8_t>(code_ ^ 1)); }

  char to_char() const {
    char base = positive() ? 'a' : 'A';
    return static_cast<char>(base + generator() - 1);
  }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

/// Appends letters to a reduced sequence, cancelling x x^-1 pairs on the fly.
/// Returns the number of cancelled pairs.
inline std::size_t push_reduced(std::vector<Letter>& stack, Letter l) {
  if (!stack.empty() && stack.back() == l.inverse()) {
    stack.pop_back();
    return 1;
  }
  stack.push_back(l);
  return 0;
}

/// Parses the text syntax into raw (possibly unreduced) letters.
inline std::vector<Letter> parse_letters(int rank, std::string_view text) {
  std::vector<Letter> out;
  if (text == "1") return out;
  out.reserve(text.size());
  for (char c : text) out.push_back(Letter::parse(rank, c));
  return out;
}

/// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(check_rank(rank)) {}

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(int rank, std::span<const Letter> letters) {
    Word w(rank);
    w.letters_.reserve(letters.size());
    for (Letter l : letters) {
      check_letter(rank, l);
      push_reduced(w.letters_, l);
    }
    return w;
  }

  /// Builds a word from letters already known to be reduced; throws otherwise.
  static Word from_reduced(int rank, std::vector<Letter> letters) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      check_letter(rank, letters[i]);
      if (i > 0 && letters[i] == letters[i - 1].inverse()) {
        throw InvariantError("word is not reduced");
      }
    }
    Word w(rank);
    w.letters_ = std::move(letters);
    return w;
  }

  static Word parse(int rank, std::string_view text) {
    auto raw = parse_letters(rank, text);
    return reduce(rank, raw);
  }

  static Word letter(int rank, Letter l) { return from_reduced(rank, {l}); }

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const { return letters_; }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Contiguous subword; subwords of reduced words are reduced.
  Word subword(std::size_t pos, std::size_t len) const {
    Word w(rank_);
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return w;
  }

  bool is_positive() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Letter l) { return l.positive(); });
  }

  bool is_cyclically_reduced() const {
    return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
  }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(l.to_char());
    return s;
  }

  /// Shortlex: length first, then letters.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }
  friend bool operator==(const Word& a, const Word& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }

 private:
  static int check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank) throw PreconditionError("rank must be in 1..26");
    return rank;
  }
  static void check_letter(int rank, Letter l) {
    if (l.generator() > rank) throw InvariantError("letter outside rank");
  }

  int rank_ = 1;
  std::vector<Letter> letters_;
};

inline void require_same_rank(int a, int b) {
  if (a != b) throw RankMismatch(a, b);
}

inline Word concat(const Word& a, const Word& b) {
  require_same_rank(a.rank(), b.rank());
  std::vector<Letter> buf(a.letters().begin(), a.letters().end());
  for (Letter l : b.letters()) push_reduced(buf, l);
  return Word::from_reduced(a.rank(), std::move(buf));
}

inline Word invert(const Word& w) { return w.inverse(); }

namespace detail {

/// Start index of the lexicographically least rotation (two-pointer minimum
/// expression algorithm, linear time).
inline std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

/// KMP failure function.
inline std::vector<std::size_t> prefix_function(std::span<const Letter> p) {
  std::vector<std::size_t> pi(p.size(), 0);
  for (std::size_t q = 1; q < p.size(); ++q) {
    std::size_t k = pi[q - 1];
    while (k > 0 && p[q] != p[k]) k = pi[k - 1];
    if (p[q] == p[k]) ++k;
    pi[q] = k;
  }
  return pi;
}

/// Counts matches of `pattern` in the text produced by `at(i)`, i in [0, len),
/// whose start index is below `start_limit`.
template <typename At>
std::size_t kmp_count(std::span<const Letter> pattern, const std::vector<std::size_t>& pi, std::size_t len,
                      std::size_t start_limit, At at) {
  std::size_t count = 0;
  std::size_t k = 0;
  const std::size_t m = pattern.size();
  for (std::size_t i = 0; i < len; ++i) {
    Letter c = at(i);
    while (k > 0 && c != pattern[k]) k = pi[k - 1];
    if (c == pattern[k]) ++k;
    if (k == m) {
      if (i + 1 - m < start_limit) ++count;
      k = pi[k - 1];
    }
  }
  return count;
}

}  // namespace detail

/// Conjugacy class representative: a nonempty cyclically reduced word stored
/// as its lexicographically least rotation.
class CyclicWord {
 public:
  static CyclicWord from_cyclically_reduced(const Word& w) {
    if (w.empty()) throw PreconditionError("cyclic word must be nonempty");
    if (!w.is_cyclically_reduced()) throw InvariantError("word is not cyclically reduced: " + w.str());
    return CyclicWord(rotate(w, detail::least_rotation(w.letters())));
  }

  const Word& word() const { return word_; }
  int rank() const { return word_.rank(); }
  std::size_t size() const { return word_.size(); }
  Letter operator[](std::size_t i) const { return word_[i % word_.size()]; }
  std::string str() const { return word_.str(); }

  CyclicWord inverse() const { return from_cyclically_reduced(word_.inverse()); }

  static Word rotate(const Word& w, std::size_t k) {
    std::vector<Letter> r(w.letters().begin() + static_cast<std::ptrdiff_t>(k), w.letters().end());
    r.insert(r.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
    return Word::from_reduced(w.rank(), std::move(r));
  }

  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;

 private:
  explicit CyclicWord(Word w) : word_(std::move(w)) {}
  Word word_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  ///< w = conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const Word& w) {
  if (w.empty()) throw PreconditionError("cyclic_reduce: empty word");
  auto s = w.letters();
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (hi - lo >= 2 && s[lo] == s[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  Word core = w.subword(lo, hi - lo);
  std::size_t k = detail::least_rotation(core.letters());
  // core = x y with canonical rotation y x; then core = x (y x) x^-1.
  Word conj = concat(w.subword(0, lo), core.subword(0, k));
  return {CyclicWord::from_cyclically_reduced(CyclicWord::rotate(core, k)), conj};
}

struct Root {
  CyclicWord root;
  int exponent;
};

inline Root max_root(const CyclicWord& cw) {
  const auto s = cw.word().letters();
  const std::size_t n = s.size();
  auto pi = detail::prefix_function(s);
  std::size_t period = n - pi[n - 1];
  if (n % period != 0) period = n;
  return {CyclicWord::from_cyclically_reduced(cw.word().subword(0, period)), static_cast<int>(n / period)};
}

/// Positions where `pattern` occurs contiguously in `host`.
inline std::size_t occurrences(const Word& host, const Word& pattern) {
  if (pattern.empty()) throw PreconditionError("occurrences: empty pattern");
  const auto h = host.letters();
  if (pattern.size() > h.size()) return 0;
  auto pi = detail::prefix_function(pattern.letters());
  return detail::kmp_count(pattern.letters(), pi, h.size(), h.size(), [&](std::size_t i) { return h[i]; });
}

/// Occurrences of `pattern` in one period of the biinfinite word ...ww.ww...
inline std::size_t cyclic_occurrences(const CyclicWord& cw, const Word& pattern) {
  if (pattern.empty()) throw PreconditionError("cyclic_occurrences: empty pattern");
  const auto s = cw.word().letters();
  const std::size_t n = s.size();
  auto pi = detail::prefix_function(pattern.letters());
  return detail::kmp_count(pattern.letters(), pi, n + pattern.size() - 1, n,
                           [&](std::size_t i) { return s[i % n]; });
}

}  // namespace gcurrents
