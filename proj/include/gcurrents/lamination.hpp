#pragma once

// Depth-L laminary languages: inversion-closed, subword-closed sets of
// reduced words in which every word shorter than L extends on both sides.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcurrents/current.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/leaf.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

class LaminaryLanguage {
 public:
  /// Every invariant violated by the given set, one message each (empty = valid).
  static std::vector<std::string> violations(int rank, int depth, const std::set<Word>& words) {
    std::vector<std::string> out;
    for (const auto& w : words) {
      if (w.rank() != rank) {
        out.push_back(w.str() + ": wrong rank");
        continue;
      }
      if (w.empty() || static_cast<int>(w.size()) > depth) {
        out.push_back(w.str() + ": length outside 1.." + std::to_string(depth));
        continue;
      }
      if (!words.contains(w.inverse())) out.push_back(w.str() + ": inverse missing");
      if (w.size() >= 2 && (!words.contains(w.subword(0, w.size() - 1)) || !words.contains(w.subword(1, w.size() - 1)))) {
        out.push_back(w.str() + ": not subword-closed");
      }
      if (static_cast<int>(w.size()) < depth) {
        bool right = false;
        bool left = false;
        for (std::uint8_t c = 0; c < 2 * rank; ++c) {
          Letter y = Letter::from_code(c);
          if (y != w.back().inverse() && words.contains(concat(w, Word::letter(rank, y)))) right = true;
          if (y != w.front().inverse() && words.contains(concat(Word::letter(rank, y), w))) left = true;
        }
        if (!right) out.push_back(w.str() + ": no right extension");
        if (!left) out.push_back(w.str() + ": no left extension");
      }
    }
    return out;
  }

  static LaminaryLanguage make(int rank, int depth, std::set<Word> words) {
    if (depth < 1) throw PreconditionError("language depth must be >= 1");
    if (words.empty()) throw InvariantError("laminary language is empty");
    auto v = violations(rank, depth, words);
    if (!v.empty()) {
      std::string msg = "not a laminary language: " + v.front();
      if (v.size() > 1) msg += " (+" + std::to_string(v.size() - 1) + " more)";
      throw InvariantError(msg);
    }
    LaminaryLanguage l;
    l.rank_ = rank;
    l.depth_ = depth;
    l.words_ = std::move(words);
    return l;
  }

  int rank() const { return rank_; }
  int depth() const { return depth_; }
  const std::set<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const Word& w) const { return words_.contains(w); }

  LaminaryLanguage restrict_to(int depth) const {
    if (depth < 1 || depth > depth_) throw PreconditionError("restriction depth out of range");
    std::set<Word> s;
    for (const auto& w : words_) {
      if (static_cast<int>(w.size()) <= depth) s.insert(w);
    }
    return make(rank_, depth, std::move(s));
  }

  friend bool operator==(const LaminaryLanguage&, const LaminaryLanguage&) = default;

 private:
  LaminaryLanguage() = default;
  int rank_ = 1;
  int depth_ = 1;
  std::set<Word> words_;
};

/// Words of positive value.
inline LaminaryLanguage support(const TruncatedCurrent& mu) {
  std::set<Word> s;
  for (const auto& [w, v] : mu.values()) {
    if (v > 0) s.insert(w);
  }
  return LaminaryLanguage::make(mu.rank(), mu.depth(), std::move(s));
}

namespace detail {

inline void add_factors(const Word& w, int depth, std::set<Word>& out) {
  auto n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t len = 1; len <= static_cast<std::size_t>(depth) && i + len <= n; ++len) {
      out.insert(w.subword(i, len));
    }
  }
}

inline std::set<Word> with_inverses(std::set<Word> s) {
  std::vector<Word> inv;
  for (const auto& w : s) inv.push_back(w.inverse());
  s.insert(inv.begin(), inv.end());
  return s;
}

}  // namespace detail

/// All subwords of length <= depth of the described biinfinite word and of
/// its inverse.
inline LaminaryLanguage language_of_leaf(const LeafDescription& leaf, int depth) {
  validate_leaf(leaf);
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  const int rank = leaf_rank(leaf);
  std::set<Word> factors;
  const long d = depth;
  if (const auto* p = std::get_if<PeriodicLeaf>(&leaf)) {
    const long n = static_cast<long>(p->period.size());
    detail::add_factors(leaf_window(leaf, 0, static_cast<std::size_t>(n + d)), depth, factors);
  } else if (const auto* e = std::get_if<EventuallyPeriodicLeaf>(&leaf)) {
    const long from = -static_cast<long>(e->center.size()) - static_cast<long>(e->left_period.size()) - d;
    const long to = static_cast<long>(e->right_period.size()) + d;
    detail::add_factors(leaf_window(leaf, from, static_cast<std::size_t>(to - from)), depth, factors);
  } else {
    // Factor sets of a^k(seed) grow monotonically; once two successive
    // iterates agree at this depth they agree forever.
    const auto& s = std::get<SubstitutionLeaf>(leaf);
    Word w = Word::letter(rank, s.seed);
    detail::add_factors(w, depth, factors);
    for (int iter = 0;; ++iter) {
      if (iter > 200 || w.size() > 50'000'000) {
        throw NonConvergence("substitution factor set did not stabilize");
      }
      w = apply(s.substitution, w);
      std::set<Word> next;
      detail::add_factors(w, depth, next);
      if (next == factors) break;
      factors = std::move(next);
    }
  }
  return LaminaryLanguage::make(rank, depth, detail::with_inverses(std::move(factors)));
}

/// Every word of `a` (up to the common depth) lies in `b`.
inline bool is_sublanguage(const LaminaryLanguage& a, const LaminaryLanguage& b) {
  require_same_rank(a.rank(), b.rank());
  const int d = std::min(a.depth(), b.depth());
  return std::all_of(a.words().begin(), a.words().end(),
                     [&](const Word& w) { return static_cast<int>(w.size()) > d || b.contains(w); });
}

struct LimitResult {
  std::optional<LaminaryLanguage> limit;  ///< empty when not stabilized
  std::size_t last_change = 0;            ///< index where the restriction last changed
};

/// The eventual value of the depth-D restrictions; stabilized means the
/// sequence ends with at least two equal restrictions (or has one element).
inline LimitResult limit_language(std::span<const LaminaryLanguage> seq, int depth) {
  if (seq.empty()) throw PreconditionError("limit_language: empty sequence");
  std::vector<LaminaryLanguage> r;
  for (const auto& l : seq) {
    require_same_rank(seq.front().rank(), l.rank());
    r.push_back(l.restrict_to(depth));
  }
  LimitResult out;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] != r[i - 1]) out.last_change = i;
  }
  if (r.size() == 1 || out.last_change + 1 < r.size()) out.limit = r.back();
  return out;
}

}  // namespace gcurrents
