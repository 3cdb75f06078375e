#pragma once

// Two-phase primal simplex over exact rationals with Bland's rule.
//
//   maximize c.x  subject to  A x = b,  x >= 0
//
// Artificial columns are never stored: an artificial that leaves the basis is
// never allowed back, which is sound for phase 1.

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "gcurrents/errors.hpp"
#include "gcurrents/rational.hpp"

namespace gcurrents {

struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
  };

  std::size_t num_vars = 0;
  std::vector<Row> equalities;
  std::vector<Rational> objective;  ///< maximized; missing entries are 0
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

namespace detail {

class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : n_(lp.num_vars) {
    for (const auto& row : lp.equalities) {
      std::vector<Rational> r(n_);
      for (const auto& [j, v] : row.terms) {
        if (j >= n_) throw PreconditionError("LP term references a missing variable");
        r[j] += v;
      }
      Rational b = row.rhs;
      if (b < 0) {
        for (auto& v : r) v = -v;
        b = -b;
      }
      rows_.push_back(std::move(r));
      rhs_.push_back(std::move(b));
      basis_.push_back(n_ + basis_.size());  // artificial
    }
  }

  std::size_t rows() const { return rows_.size(); }
  bool is_artificial(std::size_t var) const { return var >= n_; }

  /// Runs Bland's rule on `cost` (maximize). Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, std::size_t& pivots) {
    std::vector<Rational> reduced = reduced_costs(cost);
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (reduced[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        const Rational& a = rows_[i][enter];
        if (a <= 0) continue;
        Rational ratio = rhs_[i] / a;
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter, reduced);
      ++pivots;
    }
  }

  /// Moves zero-level artificials out of the basis; drops redundant rows.
  void expel_artificials() {
    std::vector<Rational> none(n_);
    for (std::size_t i = 0; i < rows();) {
      if (!is_artificial(basis_[i])) {
        ++i;
        continue;
      }
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == n_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col, none);
      ++i;
    }
  }

  Rational artificial_mass() const {
    Rational s;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (is_artificial(basis_[i])) s += rhs_[i];
    }
    return s;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (!is_artificial(basis_[i])) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

 private:
  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    // cost has n_ entries for real variables plus one per row for artificials.
    std::vector<Rational> red(cost.begin(), cost.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rows_[i][j] != 0) red[j] -= cb * rows_[i][j];
      }
    }
    return red;
  }

  void pivot(std::size_t r, std::size_t s, std::vector<Rational>& reduced) {
    auto& prow = rows_[r];
    const Rational piv = prow[s];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < n_; ++j) {
      if (prow[j] != 0) {
        prow[j] /= piv;
        nz.push_back(j);
      }
    }
    rhs_[r] /= piv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || rows_[i][s] == 0) continue;
      const Rational f = rows_[i][s];
      for (std::size_t j : nz) rows_[i][j] -= f * prow[j];
      rhs_[i] -= f * rhs_[r];
    }
    if (reduced[s] != 0) {
      const Rational f = reduced[s];
      for (std::size_t j : nz) reduced[j] -= f * prow[j];
    }
    basis_[r] = s;
  }

  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpSolution solve(const LinearProgram& lp) {
  detail::Tableau t(lp);
  LpSolution out;
  // Phase 1: maximize -(sum of artificials).
  std::vector<Rational> phase1(lp.num_vars + t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i) phase1[lp.num_vars + i] = -1;
  t.optimize(phase1, out.pivots);
  if (t.artificial_mass() != 0) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  t.expel_artificials();
  std::vector<Rational> cost(lp.num_vars + lp.equalities.size());
  for (std::size_t j = 0; j < lp.objective.size() && j < lp.num_vars; ++j) cost[j] = lp.objective[j];
  if (!t.optimize(cost, out.pivots)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x = t.solution();
  for (std::size_t j = 0; j < lp.objective.size() && j < lp.num_vars; ++j) out.objective += lp.objective[j] * out.x[j];
  return out;
}

}  // namespace gcurrents
