#pragma once

// Truncated geodesic currents: depth-L tables of Kolmogorov values.
//
// value(w) is the measure of the cylinder of biinfinite reduced words having w
// at the origin. A valid table is symmetric (value(w^-1) = value(w)) and
// satisfies the left and right Kolmogorov equations
//   value(w) = sum_y value(w y) = sum_y value(y w)
// for every 1 <= |w| <= L-1, the sums running over reduced one-letter
// extensions. A tolerance > 0 relaxes the Kolmogorov equations only.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gcurrents/errors.hpp"
#include "gcurrents/leaf.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

using ValueTable = std::map<Word, Rational>;

enum class Side { Left, Right, Symmetry };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    case Side::Symmetry:
      return "symmetry";
  }
  return "?";
}

struct KolmogorovViolation {
  Word word;
  Side side;
  Rational defect;  ///< value(w) minus the extension sum (or minus value(w^-1))
};

struct ValidationReport {
  std::vector<KolmogorovViolation> violations;
  Rational max_defect;  ///< largest |Kolmogorov defect|, violating or not

  bool ok() const { return violations.empty(); }

  std::string describe(std::size_t limit = 5) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
      const auto& v = violations[i];
      os << (i ? "; " : "") << v.word.str() << " " << to_string(v.side) << " defect " << to_string(v.defect);
    }
    if (violations.size() > limit) os << "; ... (" << violations.size() << " total)";
    return os.str();
  }
};

/// Lists every violated symmetry or Kolmogorov constraint. Absent entries are 0.
/// Throws PreconditionError on negative values or keys of the wrong rank/length.
inline ValidationReport check_kolmogorov(int rank, int depth, const ValueTable& values,
                                         const Rational& tolerance = Rational(0)) {
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  ValueTable right_sum;
  ValueTable left_sum;
  for (const auto& [w, v] : values) {
    if (w.rank() != rank) throw PreconditionError("key " + w.str() + " has the wrong rank");
    if (w.empty() || static_cast<int>(w.size()) > depth) {
      throw PreconditionError("key " + w.str() + " outside lengths 1.." + std::to_string(depth));
    }
    if (v < 0) throw PreconditionError("negative value at " + w.str());
    if (w.size() >= 2) {
      right_sum[w.subword(0, w.size() - 1)] += v;
      left_sum[w.subword(1, w.size() - 1)] += v;
    }
  }
  auto value_of = [&](const Word& w) {
    auto it = values.find(w);
    return it == values.end() ? Rational(0) : it->second;
  };

  ValidationReport report;
  for (const auto& [w, v] : values) {
    Word inv = w.inverse();
    auto it = values.find(inv);
    Rational other = it == values.end() ? Rational(0) : it->second;
    if (other != v && (w < inv || it == values.end())) {
      report.violations.push_back({w, Side::Symmetry, v - other});
    }
  }

  auto check_side = [&](const ValueTable& sums, Side side) {
    // Words with |w| <= depth-1 that are keys or have a nonzero extension sum.
    std::map<Word, Rational> defects;
    for (const auto& [w, v] : values) {
      if (static_cast<int>(w.size()) <= depth - 1) defects[w] = v;
    }
    for (const auto& [w, s] : sums) {
      if (w.empty()) continue;
      defects.try_emplace(w, value_of(w));
      defects[w] -= s;
    }
    for (auto& [w, d] : defects) {
      Rational ad = abs(d);
      if (ad > report.max_defect) report.max_defect = ad;
      if (ad > tolerance) report.violations.push_back({w, side, d});
    }
  };
  check_side(right_sum, Side::Right);
  check_side(left_sum, Side::Left);
  return report;
}

class TruncatedCurrent {
 public:
  /// Validates (symmetry exact, Kolmogorov within `tolerance`, nontrivial) and
  /// prunes zero entries. Throws InvariantError with the violation list.
  static TruncatedCurrent make(int rank, int depth, ValueTable values, Rational tolerance = Rational(0)) {
    if (tolerance < 0) throw PreconditionError("tolerance must be nonnegative");
    std::erase_if(values, [](const auto& kv) { return kv.second == 0; });
    auto report = check_kolmogorov(rank, depth, values, tolerance);
    if (!report.ok()) throw InvariantError("not a current: " + report.describe());
    if (values.empty()) throw InvariantError("not a current: all values are zero");
    TruncatedCurrent c;
    c.rank_ = rank;
    c.depth_ = depth;
    c.values_ = std::move(values);
    c.tolerance_ = std::move(tolerance);
    return c;
  }

  int rank() const { return rank_; }
  int depth() const { return depth_; }
  const Rational& tolerance() const { return tolerance_; }
  bool is_exact() const { return tolerance_ == 0; }
  const ValueTable& values() const { return values_; }

  Rational value(const Word& w) const {
    if (static_cast<int>(w.size()) > depth_) {
      throw PreconditionError("word " + w.str() + " deeper than current depth " + std::to_string(depth_));
    }
    auto it = values_.find(w);
    return it == values_.end() ? Rational(0) : it->second;
  }

  /// Sum of values over words of length k.
  Rational level_mass(int k) const {
    Rational s;
    for (const auto& [w, v] : values_) {
      if (static_cast<int>(w.size()) == k) s += v;
    }
    return s;
  }

  TruncatedCurrent restrict_to(int depth) const {
    if (depth < 1 || depth > depth_) throw PreconditionError("restriction depth out of range");
    ValueTable t;
    for (const auto& [w, v] : values_) {
      if (static_cast<int>(w.size()) <= depth) t.emplace(w, v);
    }
    return make(rank_, depth, std::move(t), tolerance_);
  }

  TruncatedCurrent scaled(const Rational& c) const {
    if (c <= 0) throw PreconditionError("scale must be positive");
    ValueTable t;
    for (const auto& [w, v] : values_) t.emplace(w, v * c);
    return make(rank_, depth_, std::move(t), tolerance_ * c);
  }

  friend bool operator==(const TruncatedCurrent&, const TruncatedCurrent&) = default;

 private:
  TruncatedCurrent() = default;
  int rank_ = 1;
  int depth_ = 1;
  ValueTable values_;
  Rational tolerance_;
};

namespace detail {

/// Counts all windows of length 1..depth starting at positions [0, starts)
/// of the text at(0), at(1), ...
template <typename At>
void count_windows(int rank, int depth, std::size_t starts, At at, std::map<Word, Integer>& counts) {
  std::vector<Letter> buf;
  for (std::size_t i = 0; i < starts; ++i) {
    buf.clear();
    for (int len = 1; len <= depth; ++len) {
      buf.push_back(at(i + static_cast<std::size_t>(len) - 1));
      ++counts[Word::from_reduced(rank, buf)];
    }
  }
}

inline void count_linear_windows(const Word& w, int depth, std::map<Word, Integer>& counts) {
  auto s = w.letters();
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t maxlen = std::min(s.size() - i, static_cast<std::size_t>(depth));
    for (std::size_t len = 1; len <= maxlen; ++len) ++counts[w.subword(i, len)];
  }
}

}  // namespace detail

/// The integer current mu_w: with w conjugate to u^m (u not a proper power),
/// value(v) = m * (cyclic occurrences of v in u + in u^-1).
inline TruncatedCurrent rational_current(const Word& w, int depth) {
  if (w.empty()) throw PreconditionError("rational_current: empty word");
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  auto [root, m] = max_root(cyclic_reduce(w).core);
  std::map<Word, Integer> counts;
  for (const CyclicWord& u : {root, root.inverse()}) {
    detail::count_windows(w.rank(), depth, u.size(), [&](std::size_t i) { return u[i]; }, counts);
  }
  ValueTable t;
  for (auto& [v, c] : counts) t.emplace(v, Rational(c * m));
  return TruncatedCurrent::make(w.rank(), depth, std::move(t));
}

/// Positive combination, truncated to the smallest input depth.
inline TruncatedCurrent linear_combination(const std::vector<std::pair<Rational, TruncatedCurrent>>& terms) {
  if (terms.empty()) throw PreconditionError("linear_combination: no terms");
  const int rank = terms.front().second.rank();
  int depth = terms.front().second.depth();
  for (const auto& [c, mu] : terms) {
    require_same_rank(rank, mu.rank());
    if (c <= 0) throw PreconditionError("linear_combination: coefficients must be positive");
    depth = std::min(depth, mu.depth());
  }
  ValueTable t;
  Rational tol;
  for (const auto& [c, mu] : terms) {
    for (const auto& [w, v] : mu.values()) {
      if (static_cast<int>(w.size()) <= depth) t[w] += c * v;
    }
    tol += c * mu.tolerance();
  }
  return TruncatedCurrent::make(rank, depth, std::move(t), tol);
}

/// Counting function of a window Z of odd length 2n+1:
/// value(w) = (occurrences in Z + occurrences in Z^-1) / (4n+2).
/// Kolmogorov equations hold up to 1/(2n+1); level-1 mass is exactly 1.
inline TruncatedCurrent counting_current(const Word& z, int depth) {
  if (z.size() % 2 == 0) throw PreconditionError("counting_current: window length must be odd");
  if (depth < 1 || static_cast<std::size_t>(depth) > z.size()) {
    throw PreconditionError("counting_current: depth must be in 1..|Z|");
  }
  const std::size_t n = (z.size() - 1) / 2;
  std::map<Word, Integer> counts;
  detail::count_linear_windows(z, depth, counts);
  detail::count_linear_windows(z.inverse(), depth, counts);
  ValueTable t;
  const Integer denom = 4 * static_cast<long>(n) + 2;
  for (auto& [v, c] : counts) t.emplace(v, Rational(c, denom));
  return TruncatedCurrent::make(z.rank(), depth, std::move(t), Rational(1, 2 * static_cast<long>(n) + 1));
}

struct CountingLimit {
  std::vector<std::size_t> half_lengths;  ///< n for each window Z_n
  std::vector<TruncatedCurrent> sequence;
  /// Per-word [min, max] over the last half of the sequence.
  std::map<Word, std::pair<Rational, Rational>> tail_ranges;

  Rational max_tail_spread() const {
    Rational m;
    for (const auto& [w, r] : tail_ranges) m = std::max(m, Rational(r.second - r.first));
    return m;
  }
};

/// Counting functions m_n of central windows Z_n of a leaf, for
/// n = max(depth, 1) * 2^k, k = 0 .. steps-1.
inline CountingLimit counting_limit(const LeafDescription& leaf, int depth, int steps) {
  validate_leaf(leaf);
  if (steps < 1) throw PreconditionError("counting_limit: need at least one step");
  CountingLimit out;
  std::size_t n = static_cast<std::size_t>(std::max(depth, 1));
  for (int k = 0; k < steps; ++k, n *= 2) {
    out.half_lengths.push_back(n);
    out.sequence.push_back(counting_current(central_window(leaf, n), depth));
  }
  const std::size_t first = out.sequence.size() / 2;
  for (std::size_t i = first; i < out.sequence.size(); ++i) {
    for (const auto& [w, v] : out.sequence[i].values()) out.tail_ranges.try_emplace(w, v, v);
  }
  for (auto& [w, r] : out.tail_ranges) {
    for (std::size_t i = first; i < out.sequence.size(); ++i) {
      Rational v = out.sequence[i].value(w);
      r.first = std::min(r.first, v);
      r.second = std::max(r.second, v);
    }
  }
  return out;
}

/// max over |w| <= depth of |mu(w) - nu(w)|.
inline Rational sup_distance(const TruncatedCurrent& mu, const TruncatedCurrent& nu, int depth) {
  require_same_rank(mu.rank(), nu.rank());
  if (depth < 1 || depth > mu.depth() || depth > nu.depth()) {
    throw PreconditionError("sup_distance: depth exceeds an operand's depth");
  }
  Rational best;
  auto scan = [&](const TruncatedCurrent& a, const TruncatedCurrent& b) {
    for (const auto& [w, v] : a.values()) {
      if (static_cast<int>(w.size()) > depth) continue;
      best = std::max(best, abs(v - b.value(w)));
    }
  };
  scan(mu, nu);
  scan(nu, mu);
  return best;
}

/// max over |w| <= depth of |mu(w) - scale * nu(w)|, in floating point.
inline double sup_distance_scaled(const TruncatedCurrent& mu, const TruncatedCurrent& nu, double scale, int depth) {
  require_same_rank(mu.rank(), nu.rank());
  if (depth < 1 || depth > mu.depth() || depth > nu.depth()) {
    throw PreconditionError("sup_distance: depth exceeds an operand's depth");
  }
  double best = 0;
  auto scan = [&](const TruncatedCurrent& a) {
    for (const auto& [w, v] : a.values()) {
      if (static_cast<int>(w.size()) > depth) continue;
      best = std::max(best, std::abs(to_double(mu.value(w)) - scale * to_double(nu.value(w))));
    }
  };
  scan(mu);
  scan(nu);
  return best;
}

/// Rescales to level-1 mass 1.
inline TruncatedCurrent normalize(const TruncatedCurrent& mu) {
  Rational m = mu.level_mass(1);
  if (m == 0) throw PreconditionError("normalize: zero current");
  return mu.scaled(Rational(1) / m);
}

}  // namespace gcurrents
