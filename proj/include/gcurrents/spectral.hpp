#pragma once

// Transition matrices and Perron-Frobenius data of positive automorphisms,
// growth estimates, attracting currents and North-South probes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcurrents/automorphism.hpp"
#include "gcurrents/current.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

class TransitionMatrix {
 public:
  /// entry(y, x) = occurrences of y or y^-1 in image(x).
  static TransitionMatrix of(const Automorphism& a) {
    if (!a.is_positive()) throw PreconditionError("transition matrix needs a positive automorphism");
    TransitionMatrix m;
    m.rank_ = a.rank();
    m.entries_.assign(static_cast<std::size_t>(m.rank_ * m.rank_), 0);
    for (int x = 1; x <= m.rank_; ++x) {
      for (Letter l : a.images()[static_cast<std::size_t>(x - 1)].letters()) ++m.at(l.generator(), x);
    }
    m.primitive_ = m.compute_primitive();
    return m;
  }

  int rank() const { return rank_; }
  std::uint64_t entry(int y, int x) const { return entries_[index(y, x)]; }
  bool is_primitive() const { return primitive_; }

  /// M v with v indexed by generator - 1.
  std::vector<double> multiply(const std::vector<double>& v) const {
    std::vector<double> out(static_cast<std::size_t>(rank_), 0.0);
    for (int y = 1; y <= rank_; ++y) {
      for (int x = 1; x <= rank_; ++x) {
        out[static_cast<std::size_t>(y - 1)] += static_cast<double>(entry(y, x)) * v[static_cast<std::size_t>(x - 1)];
      }
    }
    return out;
  }

  TransitionMatrix transposed() const {
    TransitionMatrix t = *this;
    for (int y = 1; y <= rank_; ++y) {
      for (int x = 1; x <= rank_; ++x) t.at(y, x) = entry(x, y);
    }
    return t;
  }

 private:
  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>((y - 1) * rank_ + (x - 1));
  }
  std::uint64_t& at(int y, int x) { return entries_[index(y, x)]; }

  // Wielandt: a primitive N x N matrix has M^k > 0 for k = N^2 - 2N + 2.
  bool compute_primitive() const {
    const auto n = static_cast<std::size_t>(rank_);
    std::vector<char> base(n * n);
    for (std::size_t i = 0; i < n * n; ++i) base[i] = entries_[i] != 0;
    std::vector<char> p = base;
    const int bound = std::max(1, rank_ * rank_ - 2 * rank_ + 2);
    for (int k = 1; k < bound; ++k) {
      std::vector<char> q(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!p[i * n + j]) continue;
          for (std::size_t l = 0; l < n; ++l) q[i * n + l] |= base[j * n + l];
        }
      }
      p = std::move(q);
    }
    return std::all_of(p.begin(), p.end(), [](char c) { return c != 0; });
  }

  int rank_ = 1;
  std::vector<std::uint64_t> entries_;
  bool primitive_ = false;
};

inline TransitionMatrix transition_matrix(const Automorphism& a) { return TransitionMatrix::of(a); }

struct PFData {
  double lambda = 0;
  std::vector<double> right_vector;  ///< sums to 1
  std::vector<double> left_vector;   ///< sums to 1
  double residual = 0;               ///< max |M v - lambda v| for the right vector
  std::size_t iterations = 0;
};

namespace detail {

struct PowerResult {
  double lambda;
  std::vector<double> v;
  double residual;
  std::size_t iterations;
};

inline PowerResult power_iteration(const TransitionMatrix& m, double tol, std::size_t cap) {
  const auto n = static_cast<std::size_t>(m.rank());
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  for (std::size_t it = 1; it <= cap; ++it) {
    auto w = m.multiply(v);
    double s = 0;
    for (double x : w) s += x;
    for (auto& x : w) x /= s;
    // With v summing to 1, sum(Mv) is the Rayleigh-type estimate of lambda.
    auto mw = m.multiply(w);
    double lambda = 0;
    for (double x : mw) lambda += x;
    double res = 0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mw[i] - lambda * w[i]));
    v = std::move(w);
    if (res <= tol) return {lambda, std::move(v), res, it};
  }
  throw NonConvergence("power iteration did not reach the residual bound");
}

}  // namespace detail

inline PFData pf_eigen(const TransitionMatrix& m, double tol = 1e-12, std::size_t cap = 100000) {
  if (!m.is_primitive()) throw PreconditionError("transition matrix is not primitive");
  auto r = detail::power_iteration(m, tol, cap);
  auto l = detail::power_iteration(m.transposed(), tol, cap);
  return PFData{r.lambda, std::move(r.v), std::move(l.v), r.residual, r.iterations + l.iterations};
}

struct GrowthEstimate {
  std::vector<std::size_t> lengths;  ///< |a^k(seed)| for k = 0 .. n_max
  std::vector<double> ratios;        ///< lengths[k] / lengths[k-1]
  double estimate = 0;               ///< last ratio
  bool collapsed = false;            ///< final length <= 1
};

inline GrowthEstimate growth_rate(const Automorphism& a, Letter seed, int n_max) {
  if (n_max < 5) throw PreconditionError("growth_rate: n_max must be >= 5");
  GrowthEstimate g;
  Word w = Word::letter(a.rank(), seed);
  g.lengths.push_back(w.size());
  for (int k = 1; k <= n_max; ++k) {
    w = apply(a, w);
    g.lengths.push_back(w.size());
    g.ratios.push_back(static_cast<double>(w.size()) / static_cast<double>(g.lengths[g.lengths.size() - 2]));
  }
  g.estimate = g.ratios.back();
  g.collapsed = g.lengths.back() <= 1;
  return g;
}

/// Smallest generator whose image starts with it and has length >= 2.
inline std::optional<Letter> prolongable_seed(const Automorphism& a) {
  for (int x = 1; x <= a.rank(); ++x) {
    Letter l = Letter::from_code(static_cast<std::uint8_t>(2 * (x - 1)));
    const Word& img = a.image(l);
    if (img.size() >= 2 && img.front() == l) return l;
  }
  return std::nullopt;
}

/// Normalized factor frequencies of a^n(seed) up to depth D, symmetrized. The
/// tolerance is the measured Kolmogorov defect (boundary effects).
inline TruncatedCurrent attracting_current(const Automorphism& a, int depth, int n) {
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  auto m = transition_matrix(a);
  if (!m.is_primitive()) throw PreconditionError("attracting_current: transition matrix is not primitive");
  auto seed = prolongable_seed(a);
  if (!seed) throw PreconditionError("attracting_current: no prolongable seed");
  Word w = Word::letter(a.rank(), *seed);
  for (int k = 0; k < n; ++k) w = apply(a, w);
  const double need = 10.0 * std::pow(2.0 * a.rank(), depth);
  if (static_cast<double>(w.size()) < need) {
    throw PreconditionError("attracting_current: |a^n(seed)| = " + std::to_string(w.size()) + " < 10(2N)^D; raise n");
  }
  std::map<Word, Integer> counts;
  detail::count_linear_windows(w, depth, counts);
  detail::count_linear_windows(w.inverse(), depth, counts);
  ValueTable t;
  const Integer denom = 2 * static_cast<long>(w.size());
  for (auto& [v, c] : counts) t.emplace(v, Rational(c, denom));
  auto report = check_kolmogorov(a.rank(), depth, t);
  return normalize(TruncatedCurrent::make(a.rank(), depth, std::move(t), report.max_defect));
}

struct NorthSouthTable {
  std::vector<Word> seeds;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (i, j), i < j
  std::vector<std::vector<Rational>> distances;           ///< [k][pair], k = 0 .. n
  std::vector<TruncatedCurrent> final_currents;           ///< one per seed at k = n

  Rational max_distance(std::size_t k) const {
    Rational m;
    for (const auto& d : distances[k]) m = std::max(m, d);
    return m;
  }
};

/// Pairwise depth-D sup distances of normalized mu_{a^k(w)} for k = 0 .. n.
inline NorthSouthTable north_south_probe(const Automorphism& a, const std::vector<Word>& seeds, int depth, int n) {
  if (seeds.empty()) throw PreconditionError("north_south_probe: no seeds");
  if (n < 0) throw PreconditionError("north_south_probe: n must be >= 0");
  for (const auto& s : seeds) require_same_rank(a.rank(), s.rank());
  NorthSouthTable out;
  out.seeds = seeds;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) out.pairs.emplace_back(i, j);
  }
  std::vector<Word> cur = seeds;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      for (auto& w : cur) w = apply(a, w);
    }
    std::vector<TruncatedCurrent> mus;
    for (const auto& w : cur) mus.push_back(normalize(rational_current(w, depth)));
    std::vector<Rational> row;
    for (auto [i, j] : out.pairs) row.push_back(sup_distance(mus[i], mus[j], depth));
    out.distances.push_back(std::move(row));
    if (k == n) out.final_currents = std::move(mus);
  }
  return out;
}

}  // namespace gcurrents
