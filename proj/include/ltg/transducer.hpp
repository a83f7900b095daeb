#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltg/group.hpp"
#include "ltg/tree.hpp"

namespace ltg {

using StateId = std::size_t;

/// One state call q(x_child) followed by the constant word `after`.
struct Call {
  StateId state = 0;
  std::size_t child = 0;  // 0-based input child index
  Word after;

  friend bool operator==(const Call&, const Call&) = default;
};

/// Right-hand side `head q1(x_s1) u1 ... qn(x_sn) un`, or BOTTOM.
struct Rule {
  bool bottom = false;
  Word head;
  std::vector<Call> calls;

  static Rule make_bottom() { return Rule{true, {}, {}}; }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Either the constant `head`, or `head q(x0) tail`.
struct Axiom {
  Word head;
  std::optional<StateId> state;
  Word tail;

  bool is_constant() const noexcept { return !state.has_value(); }

  friend bool operator==(const Axiom&, const Axiom&) = default;
};

/// Total deterministic linear tree transducer with output in the free group.
/// `rules[q][f]` is the unique rule for state q and input symbol f.
class Transducer {
 public:
  Transducer() = default;
  Transducer(RankedAlphabet input, Alphabet output) : input_(std::move(input)), output_(std::move(output)) {}

  StateId add_state(std::string name);
  std::optional<StateId> find_state(std::string_view name) const;
  void set_rule(StateId q, SymbolId f, Rule rule);
  void set_axiom(Axiom axiom) { axiom_ = std::move(axiom); }

  const RankedAlphabet& input() const noexcept { return input_; }
  const Alphabet& output() const noexcept { return output_; }
  std::size_t state_count() const noexcept { return names_.size(); }
  const std::string& state_name(StateId q) const { return names_.at(q); }
  const Axiom& axiom() const noexcept { return axiom_; }
  const Rule& rule(StateId q, SymbolId f) const;
  Rule& rule(StateId q, SymbolId f);
  bool has_rule(StateId q, SymbolId f) const { return rules_.at(q).at(f).has_value(); }

  /// Totality, call sanity (child in range, injective selection, known states).
  /// Throws InvalidInput describing the first problem found.
  void validate() const;

  friend bool operator==(const Transducer&, const Transducer&) = default;

 private:
  RankedAlphabet input_;
  Alphabet output_;
  std::vector<std::string> names_;
  Axiom axiom_;
  std::vector<std::vector<std::optional<Rule>>> rules_;
};

/// Assignment of transducer states to DTA states.
struct CompatibleMap {
  std::vector<DtaState> dta_state;

  DtaState operator()(StateId q) const { return dta_state.at(q); }
  friend bool operator==(const CompatibleMap&, const CompatibleMap&) = default;
};

/// Violations of the compatibility conditions (empty means compatible):
/// the axiom state maps to the start, calls map to the matching DTA
/// children, and BOTTOM appears exactly where delta is undefined.
std::vector<std::string> compatibility_violations(const Transducer& m, const Dta& b, const CompatibleMap& iota);
inline bool check_compatible(const Transducer& m, const Dta& b, const CompatibleMap& iota) {
  return compatibility_violations(m, b, iota).empty();
}

inline constexpr std::size_t kMaxEvalDepth = 10000;

/// The translation of m on t. Throws OffDomainError on a BOTTOM rule and
/// ResourceError if t is deeper than kMaxEvalDepth.
Word eval(const Transducer& m, const Tree& t);
/// The semantics of a single state.
Word eval_state(const Transducer& m, StateId q, const Tree& t);

}  // namespace ltg
