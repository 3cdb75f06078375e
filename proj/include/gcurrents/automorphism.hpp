#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcurrents/errors.hpp"
#include "gcurrents/word.hpp"

namespace gcurrents {

/// An element of Aut(F_N) given by basis images. Inverse images are optional
/// and, when present, verified at construction; they are never computed.
class Automorphism {
 public:
  Automorphism(int rank, std::vector<Word> images, std::optional<std::vector<Word>> inverse_images = std::nullopt,
               std::string name = {})
      : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)), name_(std::move(name)) {
    check_images(images_);
    if (inverse_images_) {
      check_images(*inverse_images_);
      verify_inverse();
    }
    build_letter_images();
  }

  static Automorphism identity(int rank) {
    std::vector<Word> id;
    for (int g = 1; g <= rank; ++g) id.push_back(Word::letter(rank, Letter(g, 1)));
    return Automorphism(rank, id, id, "id");
  }

  int rank() const { return rank_; }
  const std::string& name() const { return name_; }
  const std::vector<Word>& images() const { return images_; }
  const std::optional<std::vector<Word>>& inverse_images() const { return inverse_images_; }
  bool has_inverse() const { return inverse_images_.has_value(); }

  /// Image of a single letter; for x^-1 this is image(x)^-1.
  const Word& image(Letter l) const { return letter_images_[l.code()]; }

  std::optional<Automorphism> inverse() const {
    if (!inverse_images_) return std::nullopt;
    std::string n = name_.empty() ? std::string() : name_ + "^-1";
    return Automorphism(rank_, *inverse_images_, images_, std::move(n));
  }

  /// Every basis image is a positive word.
  bool is_positive() const {
    return std::all_of(images_.begin(), images_.end(), [](const Word& w) { return w.is_positive(); });
  }

  std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& w : images_) m = std::max(m, w.size());
    return m;
  }

 private:
  void check_images(const std::vector<Word>& imgs) const {
    if (rank_ < 1 || rank_ > kMaxRank) throw PreconditionError("rank must be in 1..26");
    if (static_cast<int>(imgs.size()) != rank_) {
      throw InvariantError("automorphism needs exactly one image per basis letter");
    }
    for (const auto& w : imgs) {
      require_same_rank(rank_, w.rank());
      if (w.empty()) throw InvariantError("basis image is the identity");
    }
  }

  static Word apply_images(int rank, const std::vector<Word>& imgs, const Word& w) {
    std::vector<Letter> buf;
    for (Letter l : w.letters()) {
      const Word& img = imgs[static_cast<std::size_t>(l.generator() - 1)];
      if (l.positive()) {
        for (Letter x : img.letters()) push_reduced(buf, x);
      } else {
        auto s = img.letters();
        for (auto it = s.rbegin(); it != s.rend(); ++it) push_reduced(buf, it->inverse());
      }
    }
    return Word::from_reduced(rank, std::move(buf));
  }

  void verify_inverse() const {
    for (int g = 1; g <= rank_; ++g) {
      Word x = Word::letter(rank_, Letter(g, 1));
      if (apply_images(rank_, images_, apply_images(rank_, *inverse_images_, x)) != x ||
          apply_images(rank_, *inverse_images_, apply_images(rank_, images_, x)) != x) {
        throw InvariantError("inverse images do not invert the automorphism at letter " + x.str());
      }
    }
  }

  void build_letter_images() {
    letter_images_.resize(static_cast<std::size_t>(2 * rank_));
    for (int g = 1; g <= rank_; ++g) {
      const Word& img = images_[static_cast<std::size_t>(g - 1)];
      letter_images_[Letter(g, 1).code()] = img;
      letter_images_[Letter(g, -1).code()] = img.inverse();
    }
  }

  int rank_;
  std::vector<Word> images_;
  std::optional<std::vector<Word>> inverse_images_;
  std::string name_;
  std::vector<Word> letter_images_;
};

/// Replaces each letter by its image and freely reduces.
inline Word apply(const Automorphism& a, const Word& w) {
  require_same_rank(a.rank(), w.rank());
  std::vector<Letter> buf;
  buf.reserve(w.size() * a.max_image_length());
  for (Letter l : w.letters()) {
    for (Letter x : a.image(l).letters()) push_reduced(buf, x);
  }
  return Word::from_reduced(a.rank(), std::move(buf));
}

/// compose(a, b) = a o b, i.e. x -> a(b(x)).
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  require_same_rank(a.rank(), b.rank());
  std::vector<Word> imgs;
  for (const auto& w : b.images()) imgs.push_back(apply(a, w));
  std::optional<std::vector<Word>> inv;
  if (a.has_inverse() && b.has_inverse()) {
    auto ai = *a.inverse();
    auto bi = *b.inverse();
    inv.emplace();
    for (const auto& w : ai.images()) inv->push_back(apply(bi, w));
  }
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "*" + b.name();
  return Automorphism(a.rank(), std::move(imgs), std::move(inv), std::move(name));
}

/// Letters cancelled from each side when the images of two basis generators
/// x, y are concatenated and reduced, maximised over all pairs.
inline std::size_t bounded_cancellation(const Automorphism& a) {
  std::size_t best = 0;
  for (const auto& x : a.images()) {
    for (const auto& y : a.images()) {
      std::size_t k = 0;
      while (k < x.size() && k < y.size() && x[x.size() - 1 - k] == y[k].inverse()) ++k;
      best = std::max(best, k);
    }
  }
  return best;
}

/// A certified cancellation constant: for every reduced product uv, reduced
/// a(u) and a(v) cancel at most this many letters against each other.
/// Uses max|a(x)| * floor(max|a^-1(x)|/2); needs verified inverse images.
inline std::optional<std::size_t> cancellation_bound(const Automorphism& a) {
  if (!a.has_inverse()) return std::nullopt;
  std::size_t inv_len = 0;
  for (const auto& w : *a.inverse_images()) inv_len = std::max(inv_len, w.size());
  return a.max_image_length() * (inv_len / 2);
}

}  // namespace gcurrents
