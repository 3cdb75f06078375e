#pragma once

// Finite descriptions of biinfinite reduced words (leaves of laminations).

#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gcurrents/automorphism.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

/// ...ppp.ppp...
struct PeriodicLeaf {
  Word period;
};

/// ...ppp c . qqq... with the origin between the center and the right ray.
/// Periods keep their phase, so they are plain cyclically reduced words.
struct EventuallyPeriodicLeaf {
  Word left_period;
  Word center;
  Word right_period;
};

/// Right-infinite fixed point a^inf(seed) of a positive substitution with
/// image(seed) starting with seed.
struct SubstitutionLeaf {
  Automorphism substitution;
  Letter seed;
};

using LeafDescription = std::variant<PeriodicLeaf, EventuallyPeriodicLeaf, SubstitutionLeaf>;

inline int leaf_rank(const LeafDescription& leaf) {
  return std::visit(
      [](const auto& l) -> int {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, PeriodicLeaf>) {
          return l.period.rank();
        } else if constexpr (std::is_same_v<T, EventuallyPeriodicLeaf>) {
          return l.left_period.rank();
        } else {
          return l.substitution.rank();
        }
      },
      leaf);
}

/// Throws InvariantError unless the description reads as a reduced biinfinite
/// word without cancellation across its junctions.
inline void validate_leaf(const LeafDescription& leaf) {
  auto cyclic = [](const Word& p, const char* what) {
    if (p.empty()) throw InvariantError(std::string(what) + " period is empty");
    if (!p.is_cyclically_reduced()) throw InvariantError(std::string(what) + " period is not cyclically reduced");
  };
  if (const auto* p = std::get_if<PeriodicLeaf>(&leaf)) {
    cyclic(p->period, "leaf");
  } else if (const auto* e = std::get_if<EventuallyPeriodicLeaf>(&leaf)) {
    require_same_rank(e->left_period.rank(), e->right_period.rank());
    require_same_rank(e->left_period.rank(), e->center.rank());
    cyclic(e->left_period, "left");
    cyclic(e->right_period, "right");
    Letter before = e->left_period.back();
    if (!e->center.empty()) {
      if (e->center.front() == before.inverse()) throw InvariantError("junction cancels at left of center");
      before = e->center.back();
    }
    if (e->right_period.front() == before.inverse()) throw InvariantError("junction cancels at right of center");
  } else {
    const auto& s = std::get<SubstitutionLeaf>(leaf);
    if (!s.substitution.is_positive()) throw InvariantError("substitution leaf needs a positive automorphism");
    if (!s.seed.positive() || s.seed.generator() > s.substitution.rank()) {
      throw InvariantError("substitution seed must be a generator");
    }
    const Word& img = s.substitution.image(s.seed);
    if (img.front() != s.seed) throw InvariantError("seed is not prolongable: its image does not start with it");
    if (img.size() < 2) throw InvariantError("seed image has length 1; the fixed point does not grow");
  }
}

/// Letters z_from .. z_{from+len-1} of the leaf. For substitution leaves the
/// word is one-sided and `from` must be nonnegative.
inline Word leaf_window(const LeafDescription& leaf, long from, std::size_t len) {
  const int rank = leaf_rank(leaf);
  std::vector<Letter> out;
  out.reserve(len);
  auto mod = [](long a, long n) { return static_cast<std::size_t>(((a % n) + n) % n); };
  if (const auto* p = std::get_if<PeriodicLeaf>(&leaf)) {
    const long n = static_cast<long>(p->period.size());
    for (std::size_t i = 0; i < len; ++i) out.push_back(p->period[mod(from + static_cast<long>(i), n)]);
  } else if (const auto* e = std::get_if<EventuallyPeriodicLeaf>(&leaf)) {
    const long c = static_cast<long>(e->center.size());
    const long lp = static_cast<long>(e->left_period.size());
    const long rp = static_cast<long>(e->right_period.size());
    for (std::size_t k = 0; k < len; ++k) {
      long i = from + static_cast<long>(k);
      if (i >= 0) {
        out.push_back(e->right_period[mod(i, rp)]);
      } else if (i >= -c) {
        out.push_back(e->center[static_cast<std::size_t>(i + c)]);
      } else {
        // z_{-c-1} is the last letter of the left period.
        out.push_back(e->left_period[mod(i + c, lp)]);
      }
    }
  } else {
    const auto& s = std::get<SubstitutionLeaf>(leaf);
    if (from < 0) throw PreconditionError("substitution leaves are one-sided");
    const std::size_t need = static_cast<std::size_t>(from) + len;
    Word w = Word::letter(rank, s.seed);
    while (w.size() < need) w = apply(s.substitution, w);
    return w.subword(static_cast<std::size_t>(from), len);
  }
  return Word::from_reduced(rank, std::move(out));
}

/// Central window z_{-n} .. z_n; for substitution leaves the prefix of the
/// same length.
inline Word central_window(const LeafDescription& leaf, std::size_t n) {
  if (std::holds_alternative<SubstitutionLeaf>(leaf)) return leaf_window(leaf, 0, 2 * n + 1);
  return leaf_window(leaf, -static_cast<long>(n), 2 * n + 1);
}

}  // namespace gcurrents
