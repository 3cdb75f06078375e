#pragma once

// Depth-L currents carried by a laminary language, as an exact LP.
//
// One variable per class {w, w^-1}. For each class representative w with
// |w| < L there is one right and one left Kolmogorov row; the rows for w^-1
// are the same equations read backwards. Extensions outside the language are
// absent, i.e. fixed to 0.

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "gcurrents/current.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/lamination.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/simplex.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

class KolmogorovPolytope {
 public:
  static KolmogorovPolytope build(const LaminaryLanguage& lang) {
    if (lang.size() == 0) throw PreconditionError("empty language");
    KolmogorovPolytope p(lang);
    for (const auto& w : lang.words()) {
      const Word rep = std::min(w, w.inverse());
      if (!p.index_.contains(rep)) {
        p.index_.emplace(rep, p.classes_.size());
        p.classes_.push_back(rep);
      }
    }
    p.lp_.num_vars = p.classes_.size();
    const int rank = lang.rank();
    for (std::size_t i = 0; i < p.classes_.size(); ++i) {
      const Word& w = p.classes_[i];
      if (static_cast<int>(w.size()) >= lang.depth()) continue;
      LinearProgram::Row right{{{i, Rational(1)}}, Rational(0)};
      LinearProgram::Row left{{{i, Rational(1)}}, Rational(0)};
      for (std::uint8_t c = 0; c < 2 * rank; ++c) {
        const Letter y = Letter::from_code(c);
        if (y != w.back().inverse()) {
          Word wy = concat(w, Word::letter(rank, y));
          if (lang.contains(wy)) right.terms.emplace_back(p.class_of(wy), Rational(-1));
        }
        if (y != w.front().inverse()) {
          Word yw = concat(Word::letter(rank, y), w);
          if (lang.contains(yw)) left.terms.emplace_back(p.class_of(yw), Rational(-1));
        }
      }
      p.lp_.equalities.push_back(std::move(right));
      p.lp_.equalities.push_back(std::move(left));
    }
    // Each length-1 class holds two words of equal value.
    LinearProgram::Row norm{{}, Rational(1, 2)};
    for (std::size_t i = 0; i < p.classes_.size(); ++i) {
      if (p.classes_[i].size() == 1) norm.terms.emplace_back(i, Rational(1));
    }
    p.lp_.equalities.push_back(std::move(norm));
    return p;
  }

  const LaminaryLanguage& language() const { return language_; }
  std::size_t num_variables() const { return classes_.size(); }
  std::size_t num_constraints() const { return lp_.equalities.size(); }
  const std::vector<Word>& classes() const { return classes_; }
  const LinearProgram& program() const { return lp_; }

  std::size_t class_of(const Word& w) const {
    auto it = index_.find(std::min(w, w.inverse()));
    if (it == index_.end()) throw PreconditionError(w.str() + " is not in the language");
    return it->second;
  }

  /// Expands class values to a current on the language.
  TruncatedCurrent to_current(const std::vector<Rational>& x) const {
    ValueTable t;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      if (x[i] == 0) continue;
      t[classes_[i]] = x[i];
      t[classes_[i].inverse()] = x[i];
    }
    return TruncatedCurrent::make(language_.rank(), language_.depth(), std::move(t));
  }

  /// Exact check of every equality and nonnegativity at x.
  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != classes_.size()) return false;
    for (const auto& v : x) {
      if (v < 0) return false;
    }
    for (const auto& row : lp_.equalities) {
      Rational s;
      for (const auto& [j, a] : row.terms) s += a * x[j];
      if (s != row.rhs) return false;
    }
    return true;
  }

 private:
  explicit KolmogorovPolytope(const LaminaryLanguage& lang) : language_(lang) {}

  LaminaryLanguage language_;
  std::vector<Word> classes_;
  std::map<Word, std::size_t> index_;
  LinearProgram lp_;
};

inline KolmogorovPolytope build_polytope(const LaminaryLanguage& lang) { return KolmogorovPolytope::build(lang); }

struct LpResult {
  Rational value;
  std::vector<Rational> point;  ///< class values
  TruncatedCurrent witness;
  std::size_t pivots = 0;
};

namespace detail {

inline LpResult finish(const KolmogorovPolytope& p, const LpSolution& s, std::vector<Rational> point) {
  if (s.status == LpStatus::Infeasible) throw InvariantError("Kolmogorov polytope is infeasible");
  if (s.status == LpStatus::Unbounded) throw InvariantError("Kolmogorov LP is unbounded");
  if (!p.satisfied_by(point)) throw InvariantError("LP solution fails exact re-substitution");
  auto witness = p.to_current(point);
  return LpResult{s.objective, std::move(point), std::move(witness), s.pivots};
}

}  // namespace detail

/// Exact maximum of value(target) over the polytope.
inline LpResult max_mass(const KolmogorovPolytope& p, const Word& target) {
  if (!p.language().contains(target)) throw PreconditionError("target " + target.str() + " is not in the language");
  LinearProgram lp = p.program();
  lp.objective.assign(lp.num_vars, Rational(0));
  lp.objective[p.class_of(target)] = 1;
  auto s = solve(lp);
  auto x = s.x;
  return detail::finish(p, s, std::move(x));
}

/// max t with value(w) >= t for every variable, via value = t + slack.
inline LpResult full_support_margin(const KolmogorovPolytope& p) {
  const auto& base = p.program();
  const std::size_t n = base.num_vars;
  LinearProgram lp;
  lp.num_vars = n + 1;
  for (const auto& row : base.equalities) {
    LinearProgram::Row r{row.terms, row.rhs};
    Rational tcoef;
    for (const auto& [j, a] : row.terms) tcoef += a;
    if (tcoef != 0) r.terms.emplace_back(n, tcoef);
    lp.equalities.push_back(std::move(r));
  }
  lp.objective.assign(n + 1, Rational(0));
  lp.objective[n] = 1;
  auto s = solve(lp);
  if (s.status != LpStatus::Optimal) return detail::finish(p, s, {});
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = s.x[j] + s.x[n];
  return detail::finish(p, s, std::move(x));
}

/// A vertex of the polytope, as a current carried by the language.
inline TruncatedCurrent carried_witness(const LaminaryLanguage& lang) {
  auto p = build_polytope(lang);
  auto s = solve(p.program());
  auto x = s.x;
  return detail::finish(p, s, std::move(x)).witness;
}

}  // namespace gcurrents
