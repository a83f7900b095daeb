#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/// Free group arithmetic on reduced words.
///
/// Elements of the free group over a finite alphabet are represented by
/// reduced words: sequences of signed letters with no adjacent pair of the
/// form a a- or a- a. Every operation returns reduced words.
namespace ltg {

/// A generator or its formal inverse.
struct Letter {
  char gen = 'a';
  bool inverse = false;

  constexpr Letter flipped() const noexcept { return {gen, !inverse}; }
  constexpr bool cancels(const Letter& other) const noexcept {
    return gen == other.gen && inverse != other.inverse;
  }

  friend constexpr bool operator==(const Letter&, const Letter&) = default;
  // Sign first (positive before negative), then symbol.
  friend constexpr std::strong_ordering operator<=>(const Letter& x, const Letter& y) noexcept {
    if (x.inverse != y.inverse) return x.inverse ? std::strong_ordering::greater : std::strong_ordering::less;
    return x.gen <=> y.gen;
  }
};

/// The declared output alphabet. Generators are single ASCII letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view generators);

  void add(char gen);
  bool contains(char gen) const noexcept { return gens_.count(gen) != 0; }
  const std::set<char>& generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::set<char> gens_;
};

class Word {
 public:
  Word() = default;

  /// Stack-based reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  static Word letter(char gen, bool inverse = false) { return reduce(std::vector<Letter>{{gen, inverse}}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;

  /// Group product in place: append with cancellation at the seam.
  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  /// Token syntax: `ab-c`, `_` for the empty word.
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Lexicographic on the letter sequence (sign then symbol).
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(), y.letters_.begin(),
                                                  y.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

/// Shortest first, then lexicographic. The order used for canonical representatives.
bool shortlex_less(const Word& x, const Word& y);

/// Parses a word token. Throws InvalidInput on letters outside `alphabet`.
Word parse_word(std::string_view token, const Alphabet& alphabet);
/// Parses without alphabet validation (any ASCII letter).
Word parse_word(std::string_view token);

/// Reduces `raw` after validating every letter against `alphabet`.
Word reduce(std::span<const Letter> raw, const Alphabet& alphabet);
inline Word concat(const Word& x, const Word& y) { return x * y; }
inline Word invert(const Word& w) { return w.inverse(); }

/// w^k for any integer k.
Word power(const Word& w, std::int64_t k);

struct CyclicDecomposition {
  Word conjugator;  // r
  Word core;        // s, cyclically reduced
};

/// Splits w = r- s r with r maximal, so s is cyclically reduced.
CyclicDecomposition cyclic_reduce(const Word& w);

/// The primitive p with w = p^k for some k >= 1. Throws DomainError on epsilon.
Word primitive_root(const Word& w);

bool is_primitive(const Word& w);

/// k with w = p^k, if any. Throws DomainError when p is epsilon.
std::optional<std::int64_t> solve_power(const Word& w, const Word& p);

inline bool in_cyclic_subgroup(const Word& w, const Word& p) { return solve_power(w, p).has_value(); }

/// A left coset rep.<period> with a primitive period. Both fields canonical.
struct Coset {
  Word rep;
  Word period;

  bool contains(const Word& g) const;
  std::string str() const;

  friend bool operator==(const Coset&, const Coset&) = default;
};

/// Canonical form of g.<p>: period is the primitive root of p, chosen between
/// the root and its inverse by lexicographic order; rep is the shortlex-least
/// element of the coset. Throws DomainError when p is epsilon.
Coset canonical_coset(const Word& g, const Word& p);

}  // namespace ltg

template <>
struct std::hash<ltg::Word> {
  std::size_t operator()(const ltg::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& l : w.letters()) {
      h ^= static_cast<std::size_t>(static_cast<unsigned char>(l.gen)) * 2 + (l.inverse ? 1 : 0);
      h *= 1099511628211ULL;
    }
    return h;
  }
};
