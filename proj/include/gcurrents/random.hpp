#pragma once

// Seeded generators for property tests and experiments.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gcurrents/current.hpp"
#include "gcurrents/lamination.hpp"
#include "gcurrents/leaf.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Letter random_letter(Rng& rng, int rank) {
  return Letter::from_code(static_cast<std::uint8_t>(uniform(rng, 0, 2 * rank - 1)));
}

/// Uniform among reduced words of the given length.
inline Word reduced_word(Rng& rng, int rank, std::size_t len) {
  std::vector<Letter> out;
  while (out.size() < len) {
    Letter l = random_letter(rng, rank);
    if (!out.empty() && l == out.back().inverse()) continue;
    out.push_back(l);
  }
  return Word::from_reduced(rank, std::move(out));
}

inline Word cyclically_reduced_word(Rng& rng, int rank, std::size_t len) {
  if (len == 0) return Word::from_reduced(rank, {});
  for (;;) {
    Word w = reduced_word(rng, rank, len);
    if (w.is_cyclically_reduced()) return w;
  }
}

/// Languages of random periodic leaves united with the biextendable core of a
/// random set of depth-L words. Always valid.
inline LaminaryLanguage laminary_language(Rng& rng, int rank, int depth) {
  std::set<Word> words;
  const int leaves = uniform(rng, 0, 2);
  for (int i = 0; i < leaves; ++i) {
    Word p = cyclically_reduced_word(rng, rank, static_cast<std::size_t>(uniform(rng, 1, 2 * depth)));
    const auto l = language_of_leaf(PeriodicLeaf{p}, depth);
    words.insert(l.words().begin(), l.words().end());
  }
  // Long words as edges prefix -> suffix; prune edges whose ends dead-end.
  std::set<Word> edges;
  const int count = uniform(rng, 2, 6 * rank * depth);
  for (int i = 0; i < count; ++i) {
    Word w = reduced_word(rng, rank, static_cast<std::size_t>(depth));
    edges.insert(w);
    edges.insert(w.inverse());
  }
  if (depth >= 2) {
    for (bool changed = true; changed;) {
      changed = false;
      std::set<Word> heads;
      std::set<Word> tails;
      for (const auto& e : edges) {
        heads.insert(e.subword(0, e.size() - 1));
        tails.insert(e.subword(1, e.size() - 1));
      }
      for (auto it = edges.begin(); it != edges.end();) {
        if (!tails.contains(it->subword(0, it->size() - 1)) || !heads.contains(it->subword(1, it->size() - 1))) {
          it = edges.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
  }
  for (const auto& e : edges) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t len = 1; i + len <= e.size(); ++len) words.insert(e.subword(i, len));
    }
  }
  if (words.empty()) {
    const auto l = language_of_leaf(PeriodicLeaf{cyclically_reduced_word(rng, rank, 1)}, depth);
    words.insert(l.words().begin(), l.words().end());
  }
  return LaminaryLanguage::make(rank, depth, std::move(words));
}

/// Positive combination of 1..terms integer currents of random cyclic words,
/// with coefficients p/q, 1 <= p, q <= 9.
inline TruncatedCurrent rational_combination(Rng& rng, int rank, int depth, int terms = 4, int max_len = 8) {
  std::vector<std::pair<Rational, TruncatedCurrent>> parts;
  const int k = uniform(rng, 1, terms);
  for (int i = 0; i < k; ++i) {
    Word w = cyclically_reduced_word(rng, rank, static_cast<std::size_t>(uniform(rng, 1, max_len)));
    parts.emplace_back(Rational(uniform(rng, 1, 9), uniform(rng, 1, 9)), rational_current(w, depth));
  }
  return linear_combination(parts);
}

}  // namespace gcurrents::gen
