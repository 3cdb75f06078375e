#pragma once

// Text and JSON formats: automorphism files, leaf files, current dumps,
// language dumps and certified pushforward tables.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gcurrents/automorphism.hpp"
#include "gcurrents/current.hpp"
#include "gcurrents/errors.hpp"
#include "gcurrents/lamination.hpp"
#include "gcurrents/leaf.hpp"
#include "gcurrents/pushforward.hpp"
#include "gcurrents/rational.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Non-empty lines with '#' comments stripped, paired with 1-based numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(n, std::move(t));
  }
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": '" + s + "'");
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Word parse_word_line(int rank, int line, const std::string& text, std::vector<std::string>* warnings) {
  auto letters = parse_letters(rank, text == "1" ? std::string_view() : std::string_view(text));
  Word w = Word::reduce(rank, letters);
  if (w.size() != letters.size()) {
    if (!warnings) throw ParseError("line " + std::to_string(line) + ": word '" + text + "' is not reduced");
    warnings->push_back("line " + std::to_string(line) + ": image '" + text + "' reduced to '" + w.str() + "'");
  }
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------- automorphisms

struct ParsedAutomorphism {
  Automorphism automorphism;
  std::vector<std::string> warnings;
};

/// Format:
///   name: tribonacci
///   rank: 3
///   a -> ab
///   inverse a -> c
inline ParsedAutomorphism parse_automorphism(std::string_view text) {
  std::optional<int> rank;
  std::string name;
  std::map<char, std::pair<int, std::string>> fwd;
  std::map<char, std::pair<int, std::string>> inv;
  for (const auto& [n, line] : detail::content_lines(text)) {
    auto err = [&](const std::string& m) { return ParseError("line " + std::to_string(n) + ": " + m); };
    if (auto arrow = line.find("->"); arrow != std::string::npos) {
      std::string lhs = detail::trim(std::string_view(line).substr(0, arrow));
      std::string rhs = detail::trim(std::string_view(line).substr(arrow + 2));
      auto* target = &fwd;
      if (lhs.rfind("inverse", 0) == 0) {
        target = &inv;
        lhs = detail::trim(std::string_view(lhs).substr(7));
      }
      if (lhs.size() != 1 || !std::islower(static_cast<unsigned char>(lhs[0]))) {
        throw err("left side must be a generator letter, got '" + lhs + "'");
      }
      if (!target->emplace(lhs[0], std::make_pair(n, rhs)).second) throw err("duplicate image for " + lhs);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw err("expected 'key: value' or 'x -> word'");
    std::string key = detail::trim(std::string_view(line).substr(0, colon));
    std::string val = detail::trim(std::string_view(line).substr(colon + 1));
    if (key == "rank") {
      rank = detail::parse_int(val, "rank");
    } else if (key == "name") {
      name = val;
    } else {
      throw err("unknown key '" + key + "'");
    }
  }
  if (!rank) throw ParseError("automorphism file has no rank");
  if (*rank < 1 || *rank > kMaxRank) throw ParseError("rank must be in 1..26");
  std::vector<std::string> warnings;
  auto collect = [&](const std::map<char, std::pair<int, std::string>>& m, const char* what) {
    std::vector<Word> out;
    for (int g = 1; g <= *rank; ++g) {
      char c = static_cast<char>('a' + g - 1);
      auto it = m.find(c);
      if (it == m.end()) throw ParseError(std::string("missing ") + what + " image of " + c);
      out.push_back(detail::parse_word_line(*rank, it->second.first, it->second.second, &warnings));
    }
    if (m.size() != static_cast<std::size_t>(*rank)) throw ParseError(std::string(what) + " image for a letter beyond the rank");
    return out;
  };
  auto images = collect(fwd, "forward");
  std::optional<std::vector<Word>> inverse;
  if (!inv.empty()) inverse = collect(inv, "inverse");
  return ParsedAutomorphism{Automorphism(*rank, std::move(images), std::move(inverse), std::move(name)),
                            std::move(warnings)};
}

inline ParsedAutomorphism load_automorphism(const std::filesystem::path& p) {
  auto parsed = parse_automorphism(detail::read_file(p));
  if (parsed.automorphism.name().empty()) {
    parsed.automorphism = Automorphism(parsed.automorphism.rank(), parsed.automorphism.images(),
                                       parsed.automorphism.inverse_images(), p.stem().string());
  }
  return parsed;
}

inline std::string dump_automorphism(const Automorphism& a) {
  std::ostringstream os;
  if (!a.name().empty()) os << "name: " << a.name() << "\n";
  os << "rank: " << a.rank() << "\n";
  for (int g = 1; g <= a.rank(); ++g) {
    os << static_cast<char>('a' + g - 1) << " -> " << a.images()[static_cast<std::size_t>(g - 1)].str() << "\n";
  }
  if (a.has_inverse()) {
    for (int g = 1; g <= a.rank(); ++g) {
      os << "inverse " << static_cast<char>('a' + g - 1) << " -> "
         << (*a.inverse_images())[static_cast<std::size_t>(g - 1)].str() << "\n";
    }
  }
  return os.str();
}

inline Json automorphism_json(const Automorphism& a) {
  Json j;
  j["name"] = a.name();
  j["rank"] = a.rank();
  Json im = Json::array();
  for (const auto& w : a.images()) im.push_back(w.str());
  j["images"] = im;
  if (a.has_inverse()) {
    Json iv = Json::array();
    for (const auto& w : *a.inverse_images()) iv.push_back(w.str());
    j["inverse_images"] = iv;
  }
  return j;
}

inline Automorphism automorphism_from_json(const Json& j) {
  try {
    int rank = j.at("rank").get<int>();
    auto words = [&](const Json& arr) {
      std::vector<Word> out;
      for (const auto& s : arr) out.push_back(Word::parse(rank, s.get<std::string>()));
      return out;
    };
    std::optional<std::vector<Word>> inv;
    if (j.contains("inverse_images")) inv = words(j.at("inverse_images"));
    return Automorphism(rank, words(j.at("images")), std::move(inv), j.value("name", std::string()));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad automorphism json: ") + e.what());
  }
}

// ---------------------------------------------------------------- leaves

/// Format: `rank: N` plus either `period: w`, or `left:`/`center:`/`right:`,
/// or `substitution: file.af` with `seed: x` (paths relative to `base`).
inline LeafDescription parse_leaf(std::string_view text, const std::filesystem::path& base = {}) {
  std::map<std::string, std::string> kv;
  for (const auto& [n, line] : detail::content_lines(text)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("line " + std::to_string(n) + ": expected 'key: value'");
    std::string key = detail::trim(std::string_view(line).substr(0, colon));
    kv[key] = detail::trim(std::string_view(line).substr(colon + 1));
  }
  if (kv.contains("substitution")) {
    auto parsed = load_automorphism(base / kv["substitution"]);
    if (!kv.contains("seed") || kv["seed"].size() != 1) throw ParseError("substitution leaf needs 'seed: x'");
    LeafDescription leaf = SubstitutionLeaf{parsed.automorphism, Letter::parse(parsed.automorphism.rank(), kv["seed"][0])};
    validate_leaf(leaf);
    return leaf;
  }
  if (!kv.contains("rank")) throw ParseError("leaf file has no rank");
  const int rank = detail::parse_int(kv["rank"], "rank");
  auto word = [&](const char* key, bool required) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) throw ParseError(std::string("leaf file needs '") + key + "'");
      return Word::parse(rank, "");
    }
    return detail::parse_word_line(rank, 0, it->second, nullptr);
  };
  LeafDescription leaf;
  if (kv.contains("period")) {
    leaf = PeriodicLeaf{word("period", true)};
  } else {
    leaf = EventuallyPeriodicLeaf{word("left", true), word("center", false), word("right", true)};
  }
  validate_leaf(leaf);
  return leaf;
}

inline LeafDescription load_leaf(const std::filesystem::path& p) {
  return parse_leaf(detail::read_file(p), p.parent_path());
}

// ---------------------------------------------------------------- currents

/// rank=N / depth=L / [tolerance=p/q] header, then `word<TAB>p/q` in shortlex order.
inline std::string dump_current(const TruncatedCurrent& mu) {
  std::ostringstream os;
  os << "rank=" << mu.rank() << "\n" << "depth=" << mu.depth() << "\n";
  if (!mu.is_exact()) os << "tolerance=" << to_string(mu.tolerance()) << "\n";
  for (const auto& [w, v] : mu.values()) os << w.str() << "\t" << to_string(v) << "\n";
  return os.str();
}

namespace detail {

struct Header {
  std::optional<int> rank;
  std::optional<int> depth;
  std::map<std::string, std::string> extra;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  ///< tab/space separated fields
};

inline Header parse_header(std::string_view text) {
  Header h;
  for (const auto& [n, line] : content_lines(text)) {
    if (auto eq = line.find('='); eq != std::string::npos) {
      std::string key = trim(std::string_view(line).substr(0, eq));
      std::string val = trim(std::string_view(line).substr(eq + 1));
      if (key == "rank") {
        h.rank = parse_int(val, "rank");
      } else if (key == "depth") {
        h.depth = parse_int(val, "depth");
      } else {
        h.extra[key] = val;
      }
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string s; fields >> s;) f.push_back(s);
    h.rows.emplace_back(n, std::move(f));
  }
  if (!h.rank) throw ParseError("missing rank= header");
  if (!h.depth) throw ParseError("missing depth= header");
  return h;
}

}  // namespace detail

/// Current file contents before validation.
struct RawCurrent {
  int rank = 1;
  int depth = 1;
  ValueTable values;
  Rational tolerance;
};

inline RawCurrent parse_current_table(std::string_view text) {
  auto h = detail::parse_header(text);
  RawCurrent raw{*h.rank, *h.depth, {}, {}};
  for (const auto& [n, f] : h.rows) {
    if (f.size() != 2) throw ParseError("line " + std::to_string(n) + ": expected 'word value'");
    Word w = detail::parse_word_line(raw.rank, n, f[0], nullptr);
    if (!raw.values.emplace(w, parse_rational(f[1])).second) {
      throw ParseError("line " + std::to_string(n) + ": duplicate word " + w.str());
    }
  }
  if (auto it = h.extra.find("tolerance"); it != h.extra.end()) raw.tolerance = parse_rational(it->second);
  return raw;
}

inline TruncatedCurrent parse_current(std::string_view text) {
  auto raw = parse_current_table(text);
  return TruncatedCurrent::make(raw.rank, raw.depth, std::move(raw.values), raw.tolerance);
}

inline TruncatedCurrent load_current(const std::filesystem::path& p) { return parse_current(detail::read_file(p)); }

inline Json current_json(const TruncatedCurrent& mu) {
  Json j;
  j["rank"] = mu.rank();
  j["depth"] = mu.depth();
  j["tolerance"] = to_string(mu.tolerance());
  Json vals = Json::array();
  for (const auto& [w, v] : mu.values()) vals.push_back(Json::array({w.str(), to_string(v)}));
  j["values"] = vals;
  return j;
}

inline TruncatedCurrent current_from_json(const Json& j) {
  try {
    int rank = j.at("rank").get<int>();
    ValueTable t;
    for (const auto& e : j.at("values")) t.emplace(Word::parse(rank, e.at(0).get<std::string>()),
                                                   parse_rational(e.at(1).get<std::string>()));
    Rational tol;
    if (j.contains("tolerance")) tol = parse_rational(j.at("tolerance").get<std::string>());
    return TruncatedCurrent::make(rank, j.at("depth").get<int>(), std::move(t), tol);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad current json: ") + e.what());
  }
}

// ---------------------------------------------------------------- languages

inline std::string dump_language(const LaminaryLanguage& l) {
  std::ostringstream os;
  os << "rank=" << l.rank() << "\n" << "depth=" << l.depth() << "\n";
  for (const auto& w : l.words()) os << w.str() << "\n";
  return os.str();
}

inline LaminaryLanguage parse_language(std::string_view text) {
  auto h = detail::parse_header(text);
  std::set<Word> words;
  for (const auto& [n, f] : h.rows) {
    for (const auto& s : f) words.insert(detail::parse_word_line(*h.rank, n, s, nullptr));
  }
  return LaminaryLanguage::make(*h.rank, *h.depth, std::move(words));
}

inline LaminaryLanguage load_language(const std::filesystem::path& p) { return parse_language(detail::read_file(p)); }

inline Json language_json(const LaminaryLanguage& l) {
  Json j;
  j["rank"] = l.rank();
  j["depth"] = l.depth();
  Json ws = Json::array();
  for (const auto& w : l.words()) ws.push_back(w.str());
  j["words"] = ws;
  return j;
}

inline LaminaryLanguage language_from_json(const Json& j) {
  try {
    int rank = j.at("rank").get<int>();
    std::set<Word> words;
    for (const auto& s : j.at("words")) words.insert(Word::parse(rank, s.get<std::string>()));
    return LaminaryLanguage::make(rank, j.at("depth").get<int>(), std::move(words));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad language json: ") + e.what());
  }
}

// ---------------------------------------------------------------- certified pushforward

/// Header plus `word<TAB>lower<TAB>undecided` lines.
inline std::string dump_general_push(const GeneralPushResult& r) {
  std::ostringstream os;
  os << "rank=" << r.rank << "\n" << "depth=" << r.depth << "\n";
  os << "undecided_cylinder_mass=" << to_string(r.undecided_cylinder_mass) << "\n";
  os << "undecided_bound=" << to_string(r.undecided_bound) << "\n";
  for (const auto& [w, cv] : r.values) {
    os << w.str() << "\t" << to_string(cv.lower) << "\t" << to_string(cv.undecided_mass) << "\n";
  }
  return os.str();
}

inline GeneralPushResult parse_general_push(std::string_view text) {
  auto h = detail::parse_header(text);
  GeneralPushResult r;
  r.rank = *h.rank;
  r.depth = *h.depth;
  if (auto it = h.extra.find("undecided_cylinder_mass"); it != h.extra.end()) {
    r.undecided_cylinder_mass = parse_rational(it->second);
  }
  if (auto it = h.extra.find("undecided_bound"); it != h.extra.end()) r.undecided_bound = parse_rational(it->second);
  for (const auto& [n, f] : h.rows) {
    if (f.size() != 3) throw ParseError("line " + std::to_string(n) + ": expected 'word lower undecided'");
    r.values.emplace(detail::parse_word_line(r.rank, n, f[0], nullptr),
                     CertifiedValue{parse_rational(f[1]), parse_rational(f[2])});
  }
  return r;
}

inline Json general_push_json(const GeneralPushResult& r) {
  Json j;
  j["rank"] = r.rank;
  j["depth"] = r.depth;
  j["undecided_cylinder_mass"] = to_string(r.undecided_cylinder_mass);
  j["undecided_bound"] = to_string(r.undecided_bound);
  j["steps"] = r.steps;
  j["cancellation_bound"] = r.cancellation_bound;
  j["budget_exhausted"] = r.budget_exhausted;
  j["depth_exhausted"] = r.depth_exhausted;
  Json vals = Json::array();
  for (const auto& [w, cv] : r.values) {
    vals.push_back(Json::array({w.str(), to_string(cv.lower), to_string(cv.undecided_mass)}));
  }
  j["values"] = vals;
  return j;
}

inline GeneralPushResult general_push_from_json(const Json& j) {
  try {
    GeneralPushResult r;
    r.rank = j.at("rank").get<int>();
    r.depth = j.at("depth").get<int>();
    r.undecided_cylinder_mass = parse_rational(j.at("undecided_cylinder_mass").get<std::string>());
    r.undecided_bound = parse_rational(j.at("undecided_bound").get<std::string>());
    r.steps = j.value("steps", std::size_t{0});
    r.cancellation_bound = j.value("cancellation_bound", std::size_t{0});
    r.budget_exhausted = j.value("budget_exhausted", false);
    r.depth_exhausted = j.value("depth_exhausted", false);
    for (const auto& e : j.at("values")) {
      r.values.emplace(Word::parse(r.rank, e.at(0).get<std::string>()),
                       CertifiedValue{parse_rational(e.at(1).get<std::string>()),
                                      parse_rational(e.at(2).get<std::string>())});
    }
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad pushforward json: ") + e.what());
  }
}

}  // namespace gcurrents::io
