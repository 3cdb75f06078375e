// gcurrents: command-line access to the library.
//
// Exit codes: 0 success, 1 input or validation error (and failed verdicts),
// 2 numeric non-convergence.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gcurrents/carrier_lp.hpp"
#include "gcurrents/pushforward.hpp"
#include "gcurrents/repro.hpp"
#include "gcurrents/spectral.hpp"
#include "gcurrents/text_io.hpp"

namespace {

using namespace gcurrents;
using io::Json;
namespace fs = std::filesystem;

struct Common {
  std::string format = "tsv";
  int rank = 0;
  int depth = 3;
  std::size_t budget = PushOptions{}.budget;
  std::uint64_t seed = repro::Context{}.seed;
  std::string data = GCURRENTS_DATA_DIR;
  CLI::Option* depth_opt = nullptr;
};

Common common;

bool json() { return common.format == "json"; }

void emit(const std::string& tsv, const Json& j) {
  if (json()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << tsv;
  }
}

std::string decimal(double x, int precision = 15) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

int infer_rank(std::initializer_list<std::string_view> texts) {
  if (common.rank > 0) return common.rank;
  int r = 1;
  for (auto t : texts) {
    for (char c : t) {
      if (std::isalpha(static_cast<unsigned char>(c))) r = std::max(r, std::tolower(c) - 'a' + 1);
    }
  }
  return r;
}

Word word_arg(int rank, const std::string& s) { return Word::parse(rank, s == "1" ? "" : s); }

Automorphism load_auto(const std::string& path) {
  auto p = io::load_automorphism(path);
  for (const auto& w : p.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return p.automorphism;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- word

void add_word(CLI::App& app) {
  auto* word = app.add_subcommand("word", "Reduced words in F_N");
  word->require_subcommand(1);

  static std::string w, pattern, auto_file;
  static bool cyclic = false;

  auto* reduce = word->add_subcommand("reduce", "Freely reduce a word");
  reduce->add_option("--word,word", w, "Word (lowercase generators, uppercase inverses)")->required();
  reduce->callback([] {
    Word r = word_arg(infer_rank({w}), w);
    emit(r.str() + "\n", Json{{"input", w}, {"reduced", r.str()}, {"length", r.size()}});
  });

  auto* invert = word->add_subcommand("invert", "Inverse of a word");
  invert->add_option("--word,word", w, "Word")->required();
  invert->callback([] {
    Word r = word_arg(infer_rank({w}), w).inverse();
    emit(r.str() + "\n", Json{{"input", w}, {"inverse", r.str()}});
  });

  auto* apply_cmd = word->add_subcommand("apply", "Apply an automorphism to a word");
  apply_cmd->add_option("--auto", auto_file, "Automorphism file")->required()->check(CLI::ExistingFile);
  apply_cmd->add_option("--input,--word", w, "Word")->required();
  apply_cmd->callback([] {
    auto a = load_auto(auto_file);
    Word r = apply(a, word_arg(a.rank(), w));
    emit(r.str() + "\n", Json{{"automorphism", a.name()}, {"input", w}, {"image", r.str()}});
  });

  auto* occ = word->add_subcommand("occurrences", "Count occurrences of a pattern");
  occ->add_option("--word", w, "Host word")->required();
  occ->add_option("--pattern", pattern, "Pattern word")->required();
  occ->add_flag("--cyclic", cyclic, "Count in the cyclic word (host must be cyclically reduced after reduction)");
  occ->callback([] {
    const int rank = infer_rank({w, pattern});
    Word host = word_arg(rank, w);
    Word pat = word_arg(rank, pattern);
    std::size_t n = 0;
    if (cyclic) {
      n = cyclic_occurrences(cyclic_reduce(host).core, pat);
    } else {
      n = occurrences(host, pat);
    }
    emit(std::to_string(n) + "\n", Json{{"word", host.str()}, {"pattern", pat.str()}, {"cyclic", cyclic}, {"count", n}});
  });
}

// ---------------------------------------------------------------- auto

void add_auto(CLI::App& app) {
  auto* au = app.add_subcommand("auto", "Automorphisms");
  au->require_subcommand(1);
  static std::string file, other;

  auto* verify = au->add_subcommand("verify", "Parse an automorphism file and verify its inverse images");
  verify->add_option("--auto,file", file, "Automorphism file")->required()->check(CLI::ExistingFile);
  verify->callback([] {
    auto a = load_auto(file);
    std::ostringstream os;
    os << "name\t" << a.name() << "\nrank\t" << a.rank() << "\npositive\t" << yes(a.is_positive())
       << "\ninverse\t" << (a.has_inverse() ? "verified" : "absent") << "\n";
    for (int g = 1; g <= a.rank(); ++g) {
      os << std::string(1, static_cast<char>('a' + g - 1)) << "\t" << a.image(Letter(g, 1)).str() << "\n";
    }
    emit(os.str(), Json{{"automorphism", io::automorphism_json(a)},
                        {"positive", a.is_positive()},
                        {"inverse_verified", a.has_inverse()}});
  });

  auto* comp = au->add_subcommand("compose", "Composition a o b (apply b first)");
  comp->add_option("--auto", file, "Outer automorphism a")->required()->check(CLI::ExistingFile);
  comp->add_option("--with", other, "Inner automorphism b")->required()->check(CLI::ExistingFile);
  comp->callback([] {
    auto c = compose(load_auto(file), load_auto(other));
    emit(io::dump_automorphism(c), io::automorphism_json(c));
  });

  auto* bcc = au->add_subcommand("bcc", "Bounded cancellation constants");
  bcc->add_option("--auto,file", file, "Automorphism file")->required()->check(CLI::ExistingFile);
  bcc->callback([] {
    auto a = load_auto(file);
    auto cert = cancellation_bound(a);
    const std::string cert_s = cert ? std::to_string(*cert) : "unavailable";
    std::ostringstream os;
    os << "bounded_cancellation\t" << bounded_cancellation(a) << "\ncancellation_bound\t" << cert_s << "\n";
    Json j{{"automorphism", a.name()}, {"bounded_cancellation", bounded_cancellation(a)}};
    j["cancellation_bound"] = cert ? Json(*cert) : Json(nullptr);
    emit(os.str(), j);
  });
}

// ---------------------------------------------------------------- current

void emit_current(const TruncatedCurrent& mu, const std::string& prefix = "") {
  emit(prefix + io::dump_current(mu), io::current_json(mu));
}

void add_current(CLI::App& app) {
  auto* cur = app.add_subcommand("current", "Truncated currents");
  cur->require_subcommand(1);
  static std::string w, file, auto_file, mode = "auto", tolerance, leaf_file;
  static std::vector<std::string> files, coefs;
  static int steps = 6;

  auto* rational = cur->add_subcommand("rational", "Rational current of a cyclic word");
  rational->add_option("--word,word", w, "Word (cyclically reduced after reduction)")->required();
  rational->callback([] { emit_current(rational_current(word_arg(infer_rank({w}), w), common.depth)); });

  auto* check = cur->add_subcommand("check", "Validate a current file: symmetry and Kolmogorov equations");
  check->add_option("--current,file", file, "Current file")->required()->check(CLI::ExistingFile);
  check->add_option("--tolerance", tolerance, "Override the file's tolerance (p/q)");
  check->callback([] {
    auto raw = io::parse_current_table(io::detail::read_file(file));
    Rational tol = tolerance.empty() ? raw.tolerance : parse_rational(tolerance);
    auto rep = check_kolmogorov(raw.rank, raw.depth, raw.values, tol);
    std::ostringstream os;
    os << "status\t" << (rep.ok() ? "ok" : "invalid") << "\nmax_defect\t" << to_string(rep.max_defect) << "\n";
    Json vs = Json::array();
    for (const auto& v : rep.violations) {
      os << "violation\t" << v.word.str() << "\t" << to_string(v.side) << "\t" << to_string(v.defect) << "\n";
      vs.push_back(Json{{"word", v.word.str()}, {"side", to_string(v.side)}, {"defect", to_string(v.defect)}});
    }
    emit(os.str(), Json{{"ok", rep.ok()}, {"max_defect", to_string(rep.max_defect)}, {"violations", vs}});
    if (!rep.ok()) throw InvariantError("current fails validation");
  });

  auto* combine = cur->add_subcommand("combine", "Nonnegative combination sum c_i mu_i");
  combine->add_option("--current", files, "Current files (repeat)")->required()->check(CLI::ExistingFile);
  combine->add_option("--coef", coefs, "Coefficients p/q, one per current (default 1)");
  combine->callback([] {
    if (!coefs.empty() && coefs.size() != files.size()) throw PreconditionError("need one --coef per --current");
    std::vector<std::pair<Rational, TruncatedCurrent>> terms;
    for (std::size_t i = 0; i < files.size(); ++i) {
      terms.emplace_back(coefs.empty() ? Rational(1) : parse_rational(coefs[i]), io::load_current(files[i]));
    }
    emit_current(linear_combination(terms));
  });

  auto* push = cur->add_subcommand("push", "Pushforward of a current by an automorphism");
  push->add_option("--auto", auto_file, "Automorphism file")->required()->check(CLI::ExistingFile);
  push->add_option("--current", file, "Current file")->required()->check(CLI::ExistingFile);
  push->add_option("--mode", mode, "positive | general | auto (positive when the automorphism is)")
      ->check(CLI::IsMember({"auto", "positive", "general"}));
  push->callback([] {
    auto a = load_auto(auto_file);
    auto mu = io::load_current(file);
    const int depth = common.depth_opt->count() ? common.depth : mu.depth();
    const bool positive = mode == "positive" || (mode == "auto" && a.is_positive());
    if (positive) {
      emit_current(push_positive(a, mu, depth));
      return;
    }
    auto r = push_general(a, mu, depth, PushOptions{common.budget, std::nullopt});
    if (r.budget_exhausted) std::cerr << "warning: refinement budget exhausted\n";
    if (r.depth_exhausted) std::cerr << "warning: input current too shallow for some cylinders\n";
    emit(io::dump_general_push(r), io::general_push_json(r));
  });

  auto* supp = cur->add_subcommand("support", "Support language of a current");
  supp->add_option("--current,file", file, "Current file")->required()->check(CLI::ExistingFile);
  supp->callback([] {
    auto l = support(io::load_current(file));
    emit(io::dump_language(l), io::language_json(l));
  });

  auto* dist = cur->add_subcommand("distance", "Sup distance over words of length <= depth");
  dist->add_option("--current", files, "Two current files")->required()->expected(2)->check(CLI::ExistingFile);
  dist->callback([] {
    auto x = io::load_current(files[0]);
    auto y = io::load_current(files[1]);
    const int depth = common.depth_opt->count() ? common.depth : std::min(x.depth(), y.depth());
    auto d = sup_distance(x, y, depth);
    emit(to_string(d) + "\t" + decimal(d.convert_to<double>(), 10) + "\n",
         Json{{"depth", depth}, {"distance", to_string(d)}, {"approx", d.convert_to<double>()}});
  });

  auto* counting = cur->add_subcommand("counting", "Counting current of a window, or counting limit of a leaf");
  counting->add_option("--window", w, "Odd-length window Z");
  counting->add_option("--leaf", leaf_file, "Leaf file (prints the counting sequence)")->check(CLI::ExistingFile);
  counting->add_option("--steps", steps, "Number of windows for --leaf");
  counting->callback([] {
    if (w.empty() == leaf_file.empty()) throw PreconditionError("give exactly one of --window, --leaf");
    if (!w.empty()) {
      emit_current(counting_current(word_arg(infer_rank({w}), w), common.depth));
      return;
    }
    auto lim = counting_limit(io::load_leaf(leaf_file), common.depth, steps);
    std::ostringstream os;
    os << "# max_tail_spread\t" << to_string(lim.max_tail_spread()) << "\n" << "n\tword\tvalue\n";
    Json seq = Json::array();
    for (std::size_t i = 0; i < lim.sequence.size(); ++i) {
      for (const auto& [v, x] : lim.sequence[i].values()) {
        os << lim.half_lengths[i] << "\t" << v.str() << "\t" << to_string(x) << "\n";
      }
      seq.push_back(Json{{"n", lim.half_lengths[i]}, {"current", io::current_json(lim.sequence[i])}});
    }
    emit(os.str(), Json{{"max_tail_spread", to_string(lim.max_tail_spread())}, {"sequence", seq}});
  });
}

// ---------------------------------------------------------------- lang

LaminaryLanguage language_input(const std::string& language_file, const std::string& leaf_file) {
  if (language_file.empty() == leaf_file.empty()) throw PreconditionError("give exactly one of --language-file, --leaf");
  if (!leaf_file.empty()) return language_of_leaf(io::load_leaf(leaf_file), common.depth);
  auto l = io::load_language(language_file);
  if (common.depth_opt->count() && common.depth < l.depth()) return l.restrict_to(common.depth);
  return l;
}

void emit_language(const LaminaryLanguage& l) { emit(io::dump_language(l), io::language_json(l)); }

void add_lang(CLI::App& app) {
  auto* lang = app.add_subcommand("lang", "Laminary languages");
  lang->require_subcommand(1);
  static std::string file, auto_file, seed_letter;
  static std::vector<std::string> files;

  auto* leaf = lang->add_subcommand("leaf", "Language of a leaf file at --depth");
  leaf->add_option("--leaf,file", file, "Leaf file")->required()->check(CLI::ExistingFile);
  leaf->callback([] { emit_language(language_of_leaf(io::load_leaf(file), common.depth)); });

  auto* sub = lang->add_subcommand("substitution", "Language of a substitution fixed point");
  sub->add_option("--auto", auto_file, "Positive automorphism file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", seed_letter, "Prolongable seed letter")->required();
  sub->callback([] {
    auto a = load_auto(auto_file);
    if (seed_letter.size() != 1) throw ParseError("seed must be a single letter");
    emit_language(language_of_leaf(SubstitutionLeaf{a, Letter::parse(a.rank(), seed_letter[0])}, common.depth));
  });

  auto* sl = lang->add_subcommand("sublanguage", "Is the first language contained in the second?");
  sl->add_option("--language", files, "Two language files")->required()->expected(2)->check(CLI::ExistingFile);
  sl->callback([] {
    bool r = is_sublanguage(io::load_language(files[0]), io::load_language(files[1]));
    emit(yes(r) + "\n", Json{{"sublanguage", r}});
  });

  auto* lim = lang->add_subcommand("limit", "Eventual value of a sequence of languages at --depth");
  lim->add_option("--language", files, "Language files in order")->required()->check(CLI::ExistingFile);
  lim->callback([] {
    std::vector<LaminaryLanguage> seq;
    for (const auto& f : files) seq.push_back(io::load_language(f));
    auto r = limit_language(seq, common.depth);
    if (r.limit) {
      emit("# stable_from\t" + std::to_string(r.last_change) + "\n" + io::dump_language(*r.limit),
           Json{{"stable_from", r.last_change}, {"limit", io::language_json(*r.limit)}});
    } else {
      emit("# no limit; last change at index " + std::to_string(r.last_change) + "\n",
           Json{{"last_change", r.last_change}, {"limit", nullptr}});
    }
  });
}

// ---------------------------------------------------------------- lp

void emit_lp(const LpResult& r) {
  emit("objective=" + to_string(r.value) + "\n" + io::dump_current(r.witness),
       Json{{"objective", to_string(r.value)}, {"pivots", r.pivots}, {"witness", io::current_json(r.witness)}});
}

void add_lp(CLI::App& app) {
  auto* lp = app.add_subcommand("lp", "Exact LP over the Kolmogorov polytope of a language");
  lp->require_subcommand(1);
  static std::string language_file, leaf_file, target;

  auto inputs = [](CLI::App* c) {
    c->add_option("--language-file", language_file, "Language file")->check(CLI::ExistingFile);
    c->add_option("--leaf", leaf_file, "Leaf file (language taken at --depth)")->check(CLI::ExistingFile);
  };

  auto* mm = lp->add_subcommand("max-mass", "Maximum value of a target word");
  inputs(mm);
  mm->add_option("--target", target, "Target word")->required();
  mm->callback([] {
    auto l = language_input(language_file, leaf_file);
    emit_lp(max_mass(build_polytope(l), word_arg(l.rank(), target)));
  });

  auto* fs_cmd = lp->add_subcommand("full-support", "Largest t with value(w) >= t on the whole language");
  inputs(fs_cmd);
  fs_cmd->callback([] { emit_lp(full_support_margin(build_polytope(language_input(language_file, leaf_file)))); });

  auto* wit = lp->add_subcommand("witness", "A current carried by the language");
  inputs(wit);
  wit->callback([] { emit_current(carried_witness(language_input(language_file, leaf_file))); });
}

// ---------------------------------------------------------------- spectral

void add_spectral(CLI::App& app) {
  auto* sp = app.add_subcommand("spectral", "Transition matrices and stretching factors");
  sp->require_subcommand(1);
  static std::string file, seed_letter = "a", seeds = "a,b";
  static int n = 20;

  auto* pf = sp->add_subcommand("pf", "Perron-Frobenius data of a positive automorphism");
  pf->add_option("--auto,file", file, "Automorphism file")->required()->check(CLI::ExistingFile);
  pf->callback([] {
    auto a = load_auto(file);
    auto m = transition_matrix(a);
    auto d = pf_eigen(m);
    std::ostringstream os;
    os << "# automorphism\t" << a.name() << "\n# residual\t" << decimal(d.residual, 3) << "\n";
    os << "lambda\t" << decimal(d.lambda) << "\niterations\t" << d.iterations << "\n";
    Json mat = Json::array();
    for (int y = 1; y <= m.rank(); ++y) {
      os << "row\t" << std::string(1, static_cast<char>('a' + y - 1));
      Json row = Json::array();
      for (int x = 1; x <= m.rank(); ++x) {
        os << "\t" << m.entry(y, x);
        row.push_back(m.entry(y, x));
      }
      os << "\n";
      mat.push_back(row);
    }
    for (int g = 1; g <= m.rank(); ++g) {
      const auto i = static_cast<std::size_t>(g - 1);
      os << "right\t" << std::string(1, static_cast<char>('a' + g - 1)) << "\t" << decimal(d.right_vector[i]) << "\n";
    }
    for (int g = 1; g <= m.rank(); ++g) {
      const auto i = static_cast<std::size_t>(g - 1);
      os << "left\t" << std::string(1, static_cast<char>('a' + g - 1)) << "\t" << decimal(d.left_vector[i]) << "\n";
    }
    emit(os.str(), Json{{"automorphism", a.name()},
                        {"matrix", mat},
                        {"lambda", d.lambda},
                        {"right_vector", d.right_vector},
                        {"left_vector", d.left_vector},
                        {"residual", d.residual},
                        {"iterations", d.iterations}});
  });

  auto* growth = sp->add_subcommand("growth", "Length growth under iteration, with free reduction");
  growth->add_option("--auto,file", file, "Automorphism file")->required()->check(CLI::ExistingFile);
  growth->add_option("--seed", seed_letter, "Seed letter");
  growth->add_option("--n", n, "Iterations (>= 5)");
  growth->callback([] {
    auto a = load_auto(file);
    if (seed_letter.size() != 1) throw ParseError("seed must be a single letter");
    auto g = growth_rate(a, Letter::parse(a.rank(), seed_letter[0]), n);
    std::ostringstream os;
    os << "# automorphism\t" << a.name() << "\n# seed\t" << seed_letter << "\n# n\t" << n << "\n";
    os << "k\tlength\tratio\n0\t" << g.lengths[0] << "\t\n";
    for (std::size_t k = 1; k < g.lengths.size(); ++k) {
      os << k << "\t" << g.lengths[k] << "\t" << decimal(g.ratios[k - 1], 12) << "\n";
    }
    os << "estimate\t" << decimal(g.estimate, 12) << "\ncollapsed\t" << yes(g.collapsed) << "\n";
    if (g.collapsed) std::cerr << "warning: lengths collapsed to <= 1\n";
    emit(os.str(), Json{{"automorphism", a.name()},
                        {"seed", seed_letter},
                        {"lengths", g.lengths},
                        {"ratios", g.ratios},
                        {"estimate", g.estimate},
                        {"collapsed", g.collapsed}});
  });

  auto* att = sp->add_subcommand("attract", "Attracting current from factor frequencies of a^n(seed)");
  att->add_option("--auto,file", file, "Positive primitive automorphism file")->required()->check(CLI::ExistingFile);
  att->add_option("--n", n, "Iterations");
  att->callback([] {
    auto a = load_auto(file);
    auto mu = attracting_current(a, common.depth, n);
    emit_current(mu, "# automorphism\t" + a.name() + "\n# n\t" + std::to_string(n) + "\n");
  });

  auto* ns = sp->add_subcommand("northsouth", "Pairwise distances of normalized currents of a^k(seeds)");
  ns->add_option("--auto,file", file, "Automorphism file")->required()->check(CLI::ExistingFile);
  ns->add_option("--seeds", seeds, "Comma-separated seed words");
  ns->add_option("--n", n, "Iterations");
  ns->callback([] {
    auto a = load_auto(file);
    std::vector<Word> ws;
    std::stringstream in(seeds);
    for (std::string s; std::getline(in, s, ',');) ws.push_back(word_arg(a.rank(), io::detail::trim(s)));
    auto t = north_south_probe(a, ws, common.depth, n);
    std::ostringstream os;
    os << "# automorphism\t" << a.name() << "\n# depth\t" << common.depth << "\n# n\t" << n << "\n";
    os << "k\tpair\tdistance\tapprox\n";
    Json rows = Json::array();
    for (std::size_t k = 0; k < t.distances.size(); ++k) {
      for (std::size_t p = 0; p < t.pairs.size(); ++p) {
        auto [i, j] = t.pairs[p];
        const std::string pair = ws[i].str() + "~" + ws[j].str();
        const auto& d = t.distances[k][p];
        os << k << "\t" << pair << "\t" << to_string(d) << "\t" << decimal(d.convert_to<double>(), 6) << "\n";
        rows.push_back(Json{{"k", k}, {"pair", pair}, {"distance", to_string(d)}});
      }
    }
    os << "max_final\t" << decimal(t.max_distance(static_cast<std::size_t>(n)).convert_to<double>(), 6) << "\n";
    emit(os.str(), Json{{"automorphism", a.name()}, {"depth", common.depth}, {"n", n}, {"distances", rows}});
  });
}

// ---------------------------------------------------------------- repro

int repro_status = 0;

void add_repro(CLI::App& app) {
  static std::string name;
  static bool timing = false;
  std::vector<std::string> names{"all"};
  for (const auto& e : repro::experiments()) names.emplace_back(e.name);
  auto* rp = app.add_subcommand("repro", "Reproduction experiments with VERDICT lines");
  rp->add_option("experiment", name, "Experiment name or 'all'")->required()->check(CLI::IsMember(names));
  rp->add_flag("--timing", timing, "Include wall-clock seconds in verdicts");
  rp->callback([] {
    repro::Context ctx{common.data, common.seed};
    for (const char* f : {"tribonacci.af", "tribonacci_inverse.af"}) {
      if (!fs::exists(ctx.data_dir / f)) throw ParseError("missing bundled file " + (ctx.data_dir / f).string());
    }
    auto reports = repro::run(name, ctx);
    Json all = Json::array();
    std::string tsv;
    for (const auto& r : reports) {
      tsv += repro::render_tsv(r, timing) + "\n";
      all.push_back(repro::report_json(r, timing));
      if (!r.passed()) repro_status = 1;
    }
    emit(tsv, all);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesic currents on free groups, with exact rationals"};
  app.name("gcurrents");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--rank", common.rank, "Rank of the free group (default: inferred from the words)");
  common.depth_opt = app.add_option("--depth", common.depth, "Truncation depth");
  app.add_option("--budget", common.budget, "Refinement budget for certified pushforwards");
  app.add_option("--seed", common.seed, "Random seed for experiments");
  app.add_option("--data", common.data, "Directory of bundled data files");

  add_word(app);
  add_auto(app);
  add_current(app);
  add_lang(app);
  add_lp(app);
  add_spectral(app);
  add_repro(app);
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    std::cerr << app.help();
    return 1;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return repro_status;
}
