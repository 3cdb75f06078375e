#pragma once

// The action a_*(mu)(C) = mu(a^-1(C)) of automorphisms on currents.
//
// Exact decomposition. For a biinfinite reduced Z with image geodesic
// G = a(Z), let q_i be the projection onto G of the image vertex
// a(z_0 ... z_{i-1}). Every position of G is covered, with signed
// multiplicity one, by the intervals [q_i, q_{i+1}), so
//   a_*(mu)(w) = sum over cylinders v around the origin edge z_0 of
//                mu(v) * (signed occurrences of w starting in [q_0, q_1)).
// A cylinder is decided once q_0, q_1 and the letters of G it needs can no
// longer change when v is extended; with a cancellation constant C this holds
// when they stay C letters away from the ends of the reduced image of v.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "gcurrents/automorphism.hpp"
#include "gcurrents/current.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

/// True value lies in [lower, lower + undecided_mass].
struct CertifiedValue {
  Rational lower;
  Rational undecided_mass;

  Rational upper() const { return lower + undecided_mass; }
  bool contains(const Rational& x) const { return lower <= x && x <= upper(); }
};

struct PushOptions {
  std::size_t budget = 1'000'000;          ///< cap on refinement steps
  std::optional<Rational> undecided_cap;  ///< flag results whose undecided bound exceeds this
};

struct GeneralPushResult {
  int rank = 1;
  int depth = 1;
  std::map<Word, CertifiedValue> values;  ///< every word with a possibly nonzero value
  Rational undecided_cylinder_mass;       ///< mu-mass of the unresolved frontier
  Rational undecided_bound;               ///< max |contribution| of the unresolved frontier
  std::size_t steps = 0;
  std::size_t cancellation_bound = 0;
  bool budget_exhausted = false;
  bool depth_exhausted = false;  ///< some cylinder needed more depth than mu has
  bool cap_exceeded = false;

  bool exact() const { return undecided_cylinder_mass == 0; }

  CertifiedValue at(const Word& w) const {
    auto it = values.find(w);
    if (it != values.end()) return it->second;
    return {Rational(0), undecided_bound};
  }
};

namespace detail {

/// No junction x.y of the depth-2 support cancels between a(x) and a(y); then
/// the concatenated images of every leaf in the support are already reduced.
inline bool junction_free(const Automorphism& a, const TruncatedCurrent& mu) {
  auto clean = [&](Letter x, Letter y) { return a.image(x).back() != a.image(y).front().inverse(); };
  if (mu.depth() >= 2) {
    for (const auto& [w, v] : mu.values()) {
      if (w.size() == 2 && v > 0 && !clean(w[0], w[1])) return false;
    }
    return true;
  }
  // Depth 1: any support junction joins two letters of the support.
  for (const auto& [x, vx] : mu.values()) {
    for (const auto& [y, vy] : mu.values()) {
      if (y[0] != x[0].inverse() && !clean(x[0], y[0])) return false;
    }
  }
  return true;
}

inline std::size_t common_prefix(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return k;
}

struct Attribution {
  bool need_left = false;
  bool need_right = false;
  std::vector<Letter> image;  ///< reduced image of the cylinder word
  std::size_t lo = 0;
  std::size_t hi = 0;
  int sign = 1;

  bool decided() const { return !need_left && !need_right; }
};

/// Attribution for cylinder word v whose origin edge is v[origin].
inline Attribution attribute(const Automorphism& a, const Word& v, std::size_t origin, std::size_t cancel,
                             std::size_t pattern_len) {
  Attribution out;
  std::vector<Letter> before;
  std::vector<Letter> after;
  auto& stack = out.image;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == origin) before = stack;
    for (Letter x : a.image(v[i]).letters()) push_reduced(stack, x);
    if (i == origin) after = stack;
  }
  const std::size_t n = stack.size();
  const std::size_t r0 = common_prefix(before, stack);
  const std::size_t r1 = common_prefix(after, stack);
  const bool on0 = r0 == before.size();
  const bool on1 = r1 == after.size();
  // A vertex off the geodesic needs its foot strictly inside the stable part.
  auto left_ok = [&](std::size_t r, bool on) { return on ? r >= cancel : r > cancel; };
  auto right_ok = [&](std::size_t r, bool on) { return on ? r + cancel <= n : r + cancel < n; };
  out.lo = std::min(r0, r1);
  out.hi = std::max(r0, r1);
  out.sign = r0 <= r1 ? 1 : -1;
  out.need_left = !left_ok(r0, on0) || !left_ok(r1, on1);
  out.need_right = !right_ok(r0, on0) || !right_ok(r1, on1) ||
                   (out.hi > out.lo && out.hi - 1 + pattern_len + cancel > n);
  return out;
}

struct Candidate {
  Rational mass;
  Word word;
  std::size_t origin;
};

struct CandidateOrder {
  // Largest mass first; ties broken by word, then origin, for determinism.
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.mass != y.mass) return x.mass < y.mass;
    if (x.word != y.word) return x.word > y.word;
    return x.origin > y.origin;
  }
};

inline void enumerate_words(int rank, int depth, std::vector<Word>& out) {
  std::vector<Word> frontier{Word(rank)};
  for (int len = 1; len <= depth; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (std::uint8_t c = 0; c < 2 * rank; ++c) {
        Letter l = Letter::from_code(c);
        if (!w.empty() && l == w.back().inverse()) continue;
        next.push_back(concat(w, Word::letter(rank, l)));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
}

}  // namespace detail

/// Certified cancellation constant valid on the support of mu: 0 when no
/// support junction cancels, otherwise the global bound (needs inverse images).
inline std::optional<std::size_t> support_cancellation_bound(const Automorphism& a, const TruncatedCurrent& mu) {
  if (detail::junction_free(a, mu)) return 0;
  return cancellation_bound(a);
}

/// Certified intervals for a_*(mu)(w), |w| <= out_depth, by refining cylinders
/// largest-mass-first until decided or the budget/depth runs out.
inline GeneralPushResult push_general(const Automorphism& a, const TruncatedCurrent& mu, int out_depth,
                                      const PushOptions& opts = {}) {
  require_same_rank(a.rank(), mu.rank());
  if (out_depth < 1) throw PreconditionError("push_general: output depth must be >= 1");
  if (!mu.is_exact()) throw PreconditionError("push_general: needs an exact current");
  auto bound = support_cancellation_bound(a, mu);
  if (!bound) throw PreconditionError("push_general: no certified cancellation bound; supply inverse images");

  GeneralPushResult res;
  res.rank = a.rank();
  res.depth = out_depth;
  res.cancellation_bound = *bound;
  const int rank = a.rank();
  const auto d = static_cast<std::size_t>(out_depth);

  std::priority_queue<detail::Candidate, std::vector<detail::Candidate>, detail::CandidateOrder> queue;
  for (std::uint8_t c = 0; c < 2 * rank; ++c) {
    Word x = Word::letter(rank, Letter::from_code(c));
    Rational m = mu.value(x);
    if (m > 0) queue.push({m, x, 0});
  }

  ValueTable decided;
  std::vector<Letter> buf;
  while (!queue.empty()) {
    detail::Candidate cand = queue.top();
    queue.pop();
    auto att = detail::attribute(a, cand.word, cand.origin, *bound, d);
    if (att.decided()) {
      const Rational signed_mass = att.sign > 0 ? cand.mass : Rational(-cand.mass);
      for (std::size_t j = att.lo; j < att.hi; ++j) {
        buf.clear();
        for (std::size_t k = 0; k < d; ++k) {
          buf.push_back(att.image[j + k]);
          decided[Word::from_reduced(rank, buf)] += signed_mass;
        }
      }
      continue;
    }
    const std::size_t grown = cand.word.size() + (att.need_left ? 1 : 0) + (att.need_right ? 1 : 0);
    const bool no_budget = res.steps >= opts.budget;
    const bool no_depth = grown > static_cast<std::size_t>(mu.depth());
    if (no_budget || no_depth) {
      res.budget_exhausted |= no_budget;
      res.depth_exhausted |= no_depth && !no_budget;
      res.undecided_cylinder_mass += cand.mass;
      res.undecided_bound += cand.mass * a.image(cand.word[cand.origin]).size();
      continue;
    }
    ++res.steps;
    std::vector<std::optional<Letter>> lefts{std::nullopt};
    std::vector<std::optional<Letter>> rights{std::nullopt};
    if (att.need_left) {
      lefts.clear();
      for (std::uint8_t c = 0; c < 2 * rank; ++c) {
        Letter l = Letter::from_code(c);
        if (l != cand.word.front().inverse()) lefts.emplace_back(l);
      }
    }
    if (att.need_right) {
      rights.clear();
      for (std::uint8_t c = 0; c < 2 * rank; ++c) {
        Letter l = Letter::from_code(c);
        if (l != cand.word.back().inverse()) rights.emplace_back(l);
      }
    }
    for (const auto& l : lefts) {
      for (const auto& r : rights) {
        std::vector<Letter> letters;
        if (l) letters.push_back(*l);
        letters.insert(letters.end(), cand.word.letters().begin(), cand.word.letters().end());
        if (r) letters.push_back(*r);
        Word child = Word::from_reduced(rank, std::move(letters));
        Rational m = mu.value(child);
        if (m > 0) queue.push({m, std::move(child), cand.origin + (l ? 1 : 0)});
      }
    }
  }

  const Rational& u = res.undecided_bound;
  auto certify = [&](const Rational& dv) {
    Rational lower = std::max(Rational(0), Rational(dv - u));
    return CertifiedValue{lower, Rational(dv + u - lower)};
  };
  if (u > 0) {
    std::vector<Word> all;
    detail::enumerate_words(rank, out_depth, all);
    for (const auto& w : all) {
      auto it = decided.find(w);
      res.values.emplace(w, certify(it == decided.end() ? Rational(0) : it->second));
    }
  } else {
    for (const auto& [w, v] : decided) {
      if (v != 0) res.values.emplace(w, certify(v));
    }
  }
  if (opts.undecided_cap && u > *opts.undecided_cap) res.cap_exceeded = true;
  return res;
}

namespace detail {

/// Zero-cancellation formula: nu(w) = sum_v mu(v) * n(v, w), where n(v, w)
/// counts occurrences of w in the concatenated images of v starting in the
/// block of v's first letter and ending in the block of its last letter.
inline ValueTable push_blocks(const Automorphism& a, const TruncatedCurrent& mu, int out_depth) {
  ValueTable out;
  const int rank = a.rank();
  const auto d = static_cast<std::size_t>(out_depth);
  std::vector<Letter> concat_images;
  std::vector<Letter> buf;
  for (const auto& [v, m] : mu.values()) {
    if (v.size() > d) continue;
    concat_images.clear();
    for (Letter l : v.letters()) {
      auto img = a.image(l).letters();
      concat_images.insert(concat_images.end(), img.begin(), img.end());
    }
    const std::size_t first_block = a.image(v.front()).size();
    const std::size_t last_block_start = concat_images.size() - a.image(v.back()).size();
    for (std::size_t s = 0; s < first_block; ++s) {
      buf.clear();
      for (std::size_t len = 1; len <= d && s + len <= concat_images.size(); ++len) {
        buf.push_back(concat_images[s + len - 1]);
        if (s + len - 1 >= last_block_start) out[Word::from_reduced(rank, buf)] += m;
      }
    }
  }
  return out;
}

/// Exact a_*(mu) at out_depth, for any automorphism: the block formula when
/// the support is junction-free, else the cylinder decomposition run to
/// completion.
inline TruncatedCurrent push_exact(const Automorphism& a, const TruncatedCurrent& mu, int out_depth) {
  require_same_rank(a.rank(), mu.rank());
  if (out_depth < 1) throw PreconditionError("push: output depth must be >= 1");
  ValueTable table;
  if (junction_free(a, mu)) {
    if (mu.depth() < out_depth) {
      throw PreconditionError("push: input depth " + std::to_string(mu.depth()) + " below output depth " +
                              std::to_string(out_depth));
    }
    table = push_blocks(a, mu, out_depth);
  } else {
    auto res = push_general(a, mu, out_depth, {std::numeric_limits<std::size_t>::max(), std::nullopt});
    if (!res.exact()) {
      throw PreconditionError("push: input depth " + std::to_string(mu.depth()) +
                              " too shallow for the exact cylinder decomposition");
    }
    for (const auto& [w, cv] : res.values) table.emplace(w, cv.lower);
  }
  if (mu.is_exact()) return TruncatedCurrent::make(a.rank(), out_depth, std::move(table));
  std::erase_if(table, [](const auto& kv) { return kv.second == 0; });
  auto report = check_kolmogorov(a.rank(), out_depth, table);
  return TruncatedCurrent::make(a.rank(), out_depth, std::move(table), report.max_defect);
}

}  // namespace detail

/// a_*(mu_w) = mu_{a(w)}.
inline TruncatedCurrent push_rational(const Automorphism& a, const Word& w, int depth) {
  return rational_current(apply(a, w), depth);
}

/// Exact pushforward by a positive automorphism. Uses the block formula
/// (input depth >= out_depth) when no junction of mu's support cancels, and
/// the exact cylinder decomposition otherwise (needs inverse images and a
/// deeper input). For approximate inputs the output tolerance is its measured
/// Kolmogorov defect.
inline TruncatedCurrent push_positive(const Automorphism& a, const TruncatedCurrent& mu, int out_depth) {
  if (!a.is_positive()) throw PreconditionError("push_positive: automorphism is not positive");
  return detail::push_exact(a, mu, out_depth);
}

/// (ab)_* = a_* o b_* on the integer current of w.
inline bool left_action_check(const Automorphism& a, const Automorphism& b, const Word& w, int depth) {
  return push_rational(compose(a, b), w, depth) == push_rational(a, apply(b, w), depth);
}

/// (ab)_* = a_* o b_* on mu at `depth`, exactly. The intermediate current is
/// computed as deep as mu allows the second push to need.
inline bool left_action_check(const Automorphism& a, const Automorphism& b, const TruncatedCurrent& mu, int depth) {
  TruncatedCurrent lhs = detail::push_exact(compose(a, b), mu, depth);
  for (int inner = depth;; ++inner) {
    try {
      TruncatedCurrent mid = detail::push_exact(b, mu, inner);
      return detail::push_exact(a, mid, depth) == lhs;
    } catch (const PreconditionError&) {
      if (inner >= mu.depth()) throw;
    }
  }
}

}  // namespace gcurrents
