#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ltg/group.hpp"
#include "ltg/transducer.hpp"

namespace ltg {

/// Element of the four-level lattice of abstract output languages:
/// empty, a single word, a subset of one coset g.<p> with p primitive, or
/// everything. Cosets are kept canonical, so equality is structural.
class AbstractLang {
 public:
  enum class Kind { Empty, Singleton, Periodic, Top };

  AbstractLang() = default;  // Empty
  static AbstractLang empty() { return {}; }
  static AbstractLang singleton(Word g);
  static AbstractLang periodic(const Word& g, const Word& p);  // canonicalizes
  static AbstractLang periodic(Coset c) { return AbstractLang(Kind::Periodic, std::move(c)); }
  static AbstractLang top() { return AbstractLang(Kind::Top, {}); }

  Kind kind() const noexcept { return kind_; }
  bool is_empty() const noexcept { return kind_ == Kind::Empty; }
  bool is_singleton() const noexcept { return kind_ == Kind::Singleton; }
  bool is_periodic() const noexcept { return kind_ == Kind::Periodic; }
  bool is_top() const noexcept { return kind_ == Kind::Top; }

  /// The word of a Singleton.
  const Word& value() const;
  /// The coset of a Periodic.
  const Coset& coset() const;

  bool contains(const Word& g) const;

  /// `EMPTY`, `SINGLETON word=ab`, `PERIODIC rep=a period=ba`, `TOP`.
  std::string str() const;

  friend bool operator==(const AbstractLang&, const AbstractLang&) = default;

 private:
  AbstractLang(Kind k, Coset c) : kind_(k), data_(std::move(c)) {}

  Kind kind_ = Kind::Empty;
  Coset data_;  // rep holds the Singleton value; unused for Empty/Top
};

bool leq(const AbstractLang& x, const AbstractLang& y);

/// The abstraction of a finite set of words.
AbstractLang alpha_of(std::span<const Word> language);

AbstractLang alpha_join(const AbstractLang& x, const AbstractLang& y);
AbstractLang alpha_star(const AbstractLang& x, const AbstractLang& y);

struct Analysis {
  std::vector<AbstractLang> values;  // indexed by StateId
  std::size_t rounds = 0;            // i with X^(i) = X^(i+1)

  const AbstractLang& operator[](StateId q) const { return values.at(q); }
};

/// The abstract value of one rule body given values for the called states.
AbstractLang abstract_rule(const Rule& r, std::span<const AbstractLang> values);

/// X^(0..rounds) of the synchronous iteration; X^(0) is all Empty.
std::vector<std::vector<AbstractLang>> analyze_iterates(const Transducer& m, const Dta& b, const CompatibleMap& iota,
                                                         std::size_t rounds);

/// Least solution of the abstract constraint system, i.e. alpha(L(q)) for
/// every state. Throws UsageError if iota is not compatible.
Analysis analyze(const Transducer& m, const Dta& b, const CompatibleMap& iota);

}  // namespace ltg
