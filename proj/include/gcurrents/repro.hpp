#pragma once

// Reproduction experiments. Each report carries result rows and verdicts keyed
// by acceptance criterion id (1..11).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gcurrents/carrier_lp.hpp"
#include "gcurrents/pushforward.hpp"
#include "gcurrents/random.hpp"
#include "gcurrents/spectral.hpp"
#include "gcurrents/text_io.hpp"

namespace gcurrents::repro {

struct Verdict {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct ExperimentReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Verdict> verdicts;

  bool passed() const {
    for (const auto& v : verdicts) {
      if (!v.pass) return false;
    }
    return true;
  }
};

struct Context {
  std::filesystem::path data_dir;
  std::uint64_t seed = 20240601;
};

namespace detail {

inline std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

inline std::string fmt(const Rational& r) { return to_string(r); }

inline std::string yes(bool b) { return b ? "yes" : "no"; }

/// Runs the check and turns its outcome into a verdict; exceptions fail it.
inline Verdict timed(int criterion, std::string name, double limit, const std::function<bool(std::string&)>& check) {
  Verdict v{criterion, std::move(name), false, {}, 0, limit};
  const auto start = std::chrono::steady_clock::now();
  try {
    v.pass = check(v.detail);
  } catch (const std::exception& e) {
    v.detail = std::string("error: ") + e.what();
  }
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.seconds > limit) {
    v.pass = false;
    v.detail += " (runtime " + fmt(v.seconds, 3) + " s exceeds " + fmt(limit, 3) + " s)";
  }
  return v;
}

inline Automorphism bundled(const Context& ctx, const char* file) {
  return io::load_automorphism(ctx.data_dir / file).automorphism;
}

}  // namespace detail

inline ExperimentReport tribonacci(const Context& ctx) {
  ExperimentReport r;
  r.id = "tribonacci";
  r.columns = {"quantity", "k", "value"};
  const auto fwd = detail::bundled(ctx, "tribonacci.af");
  const auto inv = detail::bundled(ctx, "tribonacci_inverse.af");
  r.parameters = {{"forward", fwd.name()}, {"inverse", inv.name()}, {"n_max", "40"}};

  r.verdicts.push_back(detail::timed(1, "forward stretching factor", 1.0, [&](std::string& d) {
    auto pf = pf_eigen(transition_matrix(fwd));
    const double l = pf.lambda;
    const double poly = std::abs(l * l * l - l * l - l - 1);
    r.rows.push_back({"lambda", "", detail::fmt(l, 12)});
    r.rows.push_back({"poly_residual", "", detail::fmt(poly, 3)});
    r.rows.push_back({"power_residual", "", detail::fmt(pf.residual, 3)});
    d = "lambda=" + detail::fmt(l, 10) + " |l^3-l^2-l-1|=" + detail::fmt(poly, 3);
    return poly <= 1e-9 && std::round(l * 100) == 184;
  }));

  r.verdicts.push_back(detail::timed(2, "inverse stretching factor", 10.0, [&](std::string& d) {
    auto g = growth_rate(inv, Letter(1, 1), 40);
    for (std::size_t k = 1; k < g.lengths.size(); ++k) {
      r.rows.push_back({"inverse_length", std::to_string(k), std::to_string(g.lengths[k])});
      r.rows.push_back({"inverse_ratio", std::to_string(k), detail::fmt(g.ratios[k - 1], 8)});
    }
    d = "estimate=" + detail::fmt(g.estimate, 8) + " expected [1.38, 1.41]";
    return !g.collapsed && g.estimate >= 1.38 && g.estimate <= 1.41;
  }));
  return r;
}

inline ExperimentReport pushforward(const Context& ctx) {
  ExperimentReport r;
  r.id = "pushforward";
  r.columns = {"word", "positive_exact", "general_contains", "undecided_fraction"};
  const auto fwd = detail::bundled(ctx, "tribonacci.af");
  const auto inv = detail::bundled(ctx, "tribonacci_inverse.af");
  constexpr int kWords = 200;
  constexpr int kDepth = 3;
  constexpr int kInputDepth = 24;
  r.parameters = {{"words", std::to_string(kWords)}, {"max_length", "8"}, {"depth", std::to_string(kDepth)},
                  {"input_depth", std::to_string(kInputDepth)}, {"seed", std::to_string(ctx.seed)}};
  r.verdicts.push_back(detail::timed(3, "pushforward oracle", 60.0, [&](std::string& d) {
    gen::Rng rng(ctx.seed);
    int exact = 0;
    int contained = 0;
    double worst = 0;
    std::vector<Word> all;
    gcurrents::detail::enumerate_words(3, kDepth, all);
    for (int i = 0; i < kWords; ++i) {
      Word w = gen::cyclically_reduced_word(rng, 3, static_cast<std::size_t>(gen::uniform(rng, 1, 8)));
      auto mu = rational_current(w, kInputDepth);
      const bool ok_pos = push_positive(fwd, mu, kDepth) == push_rational(fwd, w, kDepth);
      auto g = push_general(inv, mu, kDepth);
      auto oracle = push_rational(inv, w, kDepth);
      bool ok_gen = true;
      for (const auto& v : all) ok_gen = ok_gen && g.at(v).contains(oracle.value(v));
      Rational frac = g.undecided_cylinder_mass / mu.level_mass(1);
      const bool small = frac <= Rational(1, 1000);
      exact += ok_pos;
      contained += ok_gen && small;
      worst = std::max(worst, frac.convert_to<double>());
      r.rows.push_back({w.str(), detail::yes(ok_pos), detail::yes(ok_gen), detail::fmt(frac.convert_to<double>(), 4)});
    }
    d = "push_positive exact " + std::to_string(exact) + "/" + std::to_string(kWords) + ", push_general certified " +
        std::to_string(contained) + "/" + std::to_string(kWords) + ", worst undecided fraction " + detail::fmt(worst, 3);
    return exact == kWords && contained == kWords;
  }));
  return r;
}

inline ExperimentReport eigen(const Context& ctx) {
  ExperimentReport r;
  r.id = "eigen";
  r.columns = {"n", "seed_length", "tolerance", "sup_distance"};
  const auto fwd = detail::bundled(ctx, "tribonacci.af");
  r.parameters = {{"automorphism", fwd.name()}, {"depth", "2"}};
  r.verdicts.push_back(detail::timed(4, "eigen-equation at truncation", 30.0, [&](std::string& d) {
    const double lambda = pf_eigen(transition_matrix(fwd)).lambda;
    std::vector<double> dist;
    for (int n : {10, 15, 20}) {
      auto mu = attracting_current(fwd, 2, n);
      dist.push_back(sup_distance_scaled(push_positive(fwd, mu, 2), mu, lambda, 2));
      Word w = Word::letter(3, *prolongable_seed(fwd));
      for (int k = 0; k < n; ++k) w = apply(fwd, w);
      r.rows.push_back({std::to_string(n), std::to_string(w.size()), detail::fmt(mu.tolerance().convert_to<double>(), 3),
                        detail::fmt(dist.back(), 4)});
    }
    bool mono = dist[1] <= dist[0] + 1e-6 && dist[2] <= dist[1] + 1e-6;
    d = "distances " + detail::fmt(dist[0], 3) + ", " + detail::fmt(dist[1], 3) + ", " + detail::fmt(dist[2], 3);
    return mono && dist[2] <= 1e-3;
  }));
  return r;
}

inline ExperimentReport lp_decay(const Context&) {
  ExperimentReport r;
  r.id = "lp-decay";
  r.columns = {"D", "variables", "constraints", "max_mass_b", "expected", "full_support_margin"};
  r.parameters = {{"leaf", "...aaab.aaa..."}, {"target", "b"}};
  r.verdicts.push_back(detail::timed(5, "LP non-surjectivity decay", 60.0, [&](std::string& d) {
    bool all = true;
    for (int depth = 2; depth <= 6; ++depth) {
      auto lang = language_of_leaf(EventuallyPeriodicLeaf{Word::parse(2, "a"), Word::parse(2, "b"), Word::parse(2, "a")},
                                   depth);
      auto p = build_polytope(lang);
      auto m = max_mass(p, Word::parse(2, "b"));
      auto t = full_support_margin(p);
      const Rational expected(1, 2 * depth);
      all = all && m.value == expected;
      r.rows.push_back({std::to_string(depth), std::to_string(p.num_variables()), std::to_string(p.num_constraints()),
                        detail::fmt(m.value), detail::fmt(expected), detail::fmt(t.value)});
    }
    d = all ? "max mass of b equals 1/(2D) exactly for D = 2..6" : "mismatch, see rows";
    return all;
  }));
  return r;
}

inline ExperimentReport witness(const Context& ctx) {
  ExperimentReport r;
  r.id = "witness";
  r.columns = {"trial", "rank", "depth", "words", "variables", "witness_support", "carried"};
  r.parameters = {{"languages", "100"}, {"seed", std::to_string(ctx.seed)}};
  r.verdicts.push_back(detail::timed(6, "carried witness", 60.0, [&](std::string& d) {
    gen::Rng rng(ctx.seed + 6);
    int good = 0;
    for (int i = 0; i < 100; ++i) {
      const int rank = gen::uniform(rng, 2, 3);
      const int depth = gen::uniform(rng, 1, 4);
      auto lang = gen::laminary_language(rng, rank, depth);
      auto p = build_polytope(lang);
      auto w = carried_witness(lang);
      auto s = support(w);
      const bool ok = is_sublanguage(s, lang);
      good += ok;
      r.rows.push_back({std::to_string(i), std::to_string(rank), std::to_string(depth), std::to_string(lang.size()),
                        std::to_string(p.num_variables()), std::to_string(s.size()), detail::yes(ok)});
    }
    d = std::to_string(good) + "/100 feasible with support(witness) inside the language";
    return good == 100;
  }));
  return r;
}

inline ExperimentReport noncontinuity(const Context&) {
  ExperimentReport r;
  r.id = "noncontinuity";
  r.columns = {"n", "sup_distance", "expected", "support_size", "support_of_mu_b_size"};
  r.parameters = {{"depth", "2"}, {"sequence", "(1/n) mu_{ab^n}"}};
  r.verdicts.push_back(detail::timed(7, "non-continuity of Supp", 5.0, [&](std::string& d) {
    auto mub = rational_current(Word::parse(2, "b"), 2);
    const auto lb = support(mub);
    bool dist_ok = true;
    bool constant = true;
    bool strict = true;
    std::optional<LaminaryLanguage> first;
    for (int n = 2; n <= 10; ++n) {
      Word w = Word::parse(2, "a" + std::string(static_cast<std::size_t>(n), 'b'));
      auto c = rational_current(w, 2).scaled(Rational(1, n));
      auto dist = sup_distance(c, mub, 2);
      auto s = support(c);
      if (!first) first = s;
      dist_ok = dist_ok && dist == Rational(1, n);
      constant = constant && s == *first;
      strict = strict && is_sublanguage(lb, s) && s != lb;
      r.rows.push_back({std::to_string(n), detail::fmt(dist), detail::fmt(Rational(1, n)), std::to_string(s.size()),
                        std::to_string(lb.size())});
    }
    d = std::string("distance = 1/n: ") + detail::yes(dist_ok) + ", support constant: " + detail::yes(constant) +
        ", strictly contains L(b): " + detail::yes(strict);
    return dist_ok && constant && strict;
  }));
  return r;
}

inline ExperimentReport noninjective(const Context&) {
  ExperimentReport r;
  r.id = "noninjective";
  r.columns = {"depth", "sup_distance", "same_support"};
  r.parameters = {{"lambdas", "1/4, 1/2"}};
  r.verdicts.push_back(detail::timed(8, "non-injectivity of PSupp", 5.0, [&](std::string& d) {
    bool distinct = true;
    bool same = true;
    for (int depth = 1; depth <= 5; ++depth) {
      auto ma = rational_current(Word::parse(2, "a"), depth);
      auto mb = rational_current(Word::parse(2, "b"), depth);
      auto mix = [&](const Rational& l) { return normalize(linear_combination({{l, ma}, {Rational(1) - l, mb}})); };
      auto x = mix(Rational(1, 4));
      auto y = mix(Rational(1, 2));
      auto dist = sup_distance(x, y, depth);
      const bool eq = support(x) == support(y);
      distinct = distinct && dist > 0;
      same = same && eq;
      r.rows.push_back({std::to_string(depth), detail::fmt(dist), detail::yes(eq)});
    }
    d = std::string("currents differ: ") + detail::yes(distinct) + ", supports equal at depths 1..5: " + detail::yes(same);
    return distinct && same;
  }));
  return r;
}

inline ExperimentReport counting(const Context& ctx) {
  ExperimentReport r;
  r.id = "counting";
  r.columns = {"trial", "rank", "length", "depth", "max_defect", "bound", "level1_mass"};
  r.parameters = {{"windows", "100"}, {"lengths", "odd 3..41"}, {"seed", std::to_string(ctx.seed)}};
  r.verdicts.push_back(detail::timed(9, "counting-function bounds", 10.0, [&](std::string& d) {
    gen::Rng rng(ctx.seed + 9);
    int good = 0;
    for (int i = 0; i < 100; ++i) {
      const int rank = gen::uniform(rng, 2, 3);
      const int n = gen::uniform(rng, 1, 20);
      Word z = gen::reduced_word(rng, rank, static_cast<std::size_t>(2 * n + 1));
      const int depth = std::min(4, 2 * n + 1);
      auto m = counting_current(z, depth);
      const Rational eps(1, 2 * n + 1);
      auto rep = check_kolmogorov(rank, depth, m.values(), eps);
      const bool ok = rep.ok() && m.level_mass(1) == 1;
      good += ok;
      r.rows.push_back({std::to_string(i), std::to_string(rank), std::to_string(z.size()), std::to_string(depth),
                        detail::fmt(rep.max_defect), detail::fmt(eps), detail::fmt(m.level_mass(1))});
    }
    d = std::to_string(good) + "/100 within 1/(2n+1) with level-1 mass exactly 1";
    return good == 100;
  }));
  return r;
}

inline ExperimentReport kolmogorov(const Context& ctx) {
  ExperimentReport r;
  r.id = "kolmogorov";
  r.columns = {"kind", "count", "passed"};
  r.parameters = {{"currents", "500"}, {"max_rank", "3"}, {"max_depth", "5"}, {"seed", std::to_string(ctx.seed)}};
  r.verdicts.push_back(detail::timed(10, "Kolmogorov property suite", 30.0, [&](std::string& d) {
    gen::Rng rng(ctx.seed + 10);
    int counts[2] = {0, 0};
    int passed[2] = {0, 0};
    for (int i = 0; i < 500; ++i) {
      const int rank = gen::uniform(rng, 1, 3);
      const int depth = gen::uniform(rng, 1, 5);
      const int kind = i % 2;
      auto make = [&]() {
        if (kind == 0) {
          Word w = gen::cyclically_reduced_word(rng, rank, static_cast<std::size_t>(gen::uniform(rng, 1, 10)));
          return rational_current(w, depth);
        }
        const int k = gen::uniform(rng, 2, 4);
        std::vector<int> weights;
        int total = 0;
        for (int j = 0; j < k; ++j) total += weights.emplace_back(gen::uniform(rng, 1, 9));
        std::vector<std::pair<Rational, TruncatedCurrent>> parts;
        for (int j = 0; j < k; ++j) {
          Word w = gen::cyclically_reduced_word(rng, rank, static_cast<std::size_t>(gen::uniform(rng, 1, 10)));
          parts.emplace_back(Rational(weights[static_cast<std::size_t>(j)], total), rational_current(w, depth));
        }
        return linear_combination(parts);
      };
      const auto mu = make();
      bool ok = check_kolmogorov(rank, depth, mu.values()).ok();
      for (const auto& [w, v] : mu.values()) ok = ok && mu.value(w.inverse()) == v;
      for (int l = 2; l <= depth; ++l) ok = ok && mu.level_mass(l) == mu.level_mass(1);
      ++counts[kind];
      passed[kind] += ok;
    }
    r.rows.push_back({"rational", std::to_string(counts[0]), std::to_string(passed[0])});
    r.rows.push_back({"convex_combination", std::to_string(counts[1]), std::to_string(passed[1])});
    d = std::to_string(passed[0] + passed[1]) + "/500 exact, symmetric, level sums constant";
    return passed[0] + passed[1] == 500;
  }));
  return r;
}

inline ExperimentReport northsouth(const Context& ctx) {
  ExperimentReport r;
  r.id = "northsouth";
  r.columns = {"k", "pair", "sup_distance"};
  const auto fwd = detail::bundled(ctx, "tribonacci.af");
  r.parameters = {{"automorphism", fwd.name()}, {"seeds", "a,b,ab"}, {"depth", "2"}, {"n", "15"}};
  r.verdicts.push_back(detail::timed(11, "North-South finite-depth probe", 30.0, [&](std::string& d) {
    std::vector<Word> seeds{Word::parse(3, "a"), Word::parse(3, "b"), Word::parse(3, "ab")};
    auto t = north_south_probe(fwd, seeds, 2, 15);
    for (std::size_t k = 0; k < t.distances.size(); ++k) {
      for (std::size_t p = 0; p < t.pairs.size(); ++p) {
        auto [i, j] = t.pairs[p];
        r.rows.push_back({std::to_string(k), seeds[i].str() + "~" + seeds[j].str(),
                          detail::fmt(t.distances[k][p].convert_to<double>(), 4)});
      }
    }
    const double worst = t.max_distance(15).convert_to<double>();
    d = "max pairwise distance at n=15: " + detail::fmt(worst, 3);
    return worst <= 1e-3;
  }));
  return r;
}

struct Experiment {
  const char* name;
  ExperimentReport (*run)(const Context&);
};

inline const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> list = {
      {"tribonacci", tribonacci}, {"pushforward", pushforward}, {"eigen", eigen},
      {"lp-decay", lp_decay},     {"witness", witness},         {"noncontinuity", noncontinuity},
      {"noninjective", noninjective}, {"counting", counting},   {"kolmogorov", kolmogorov},
      {"northsouth", northsouth},
  };
  return list;
}

/// One experiment by name, or every experiment for "all".
inline std::vector<ExperimentReport> run(const std::string& name, const Context& ctx) {
  std::vector<ExperimentReport> out;
  for (const auto& e : experiments()) {
    if (name == "all" || name == e.name) out.push_back(e.run(ctx));
  }
  if (out.empty()) throw PreconditionError("unknown experiment '" + name + "'");
  return out;
}

/// Wall-clock seconds are opt-in so that default output is reproducible.
inline std::string verdict_line(const std::string& id, const Verdict& v, bool timing = false) {
  std::string s = "VERDICT\t" + id + "\t" + std::to_string(v.criterion) + "\t" + (v.pass ? "PASS" : "FAIL") + "\t" +
                  v.name + "\t" + v.detail;
  if (timing) s += "\t" + detail::fmt(v.seconds, 3) + "s";
  return s;
}

inline std::string render_tsv(const ExperimentReport& r, bool timing = false) {
  std::ostringstream os;
  os << "# experiment\t" << r.id << "\n";
  for (const auto& [k, v] : r.parameters) os << "# " << k << "\t" << v << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "\t" : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  for (const auto& v : r.verdicts) os << verdict_line(r.id, v, timing) << "\n";
  return os.str();
}

inline io::Json report_json(const ExperimentReport& r, bool timing = false) {
  io::Json j;
  j["experiment"] = r.id;
  io::Json params = io::Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  io::Json vs = io::Json::array();
  for (const auto& v : r.verdicts) {
    io::Json jv = {{"criterion", v.criterion}, {"name", v.name}, {"pass", v.pass}, {"detail", v.detail},
                   {"limit_seconds", v.limit_seconds}};
    if (timing) jv["seconds"] = v.seconds;
    vs.push_back(std::move(jv));
  }
  j["verdicts"] = vs;
  return j;
}

}  // namespace gcurrents::repro
