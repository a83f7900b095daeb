#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltg/normalizer.hpp"

namespace ltg {

struct StatePair {
  StateId left = 0;
  StateId right = 0;

  friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

/// How a pair was first reached: through `symbol` at input child `child` of `parent`.
struct PairOrigin {
  std::size_t parent = 0;
  SymbolId symbol = 0;
  std::size_t child = 0;
};

struct CoreachResult {
  std::vector<StatePair> pairs;               // BFS order, pairs[0] is the axiom pair
  std::vector<std::optional<PairOrigin>> origin;  // empty for pairs[0]
  bool same_ordered = true;
  // First pair (index) and symbol whose rules differ in n or in sigma.
  std::optional<std::pair<std::size_t, SymbolId>> mismatch;
};

/// Closure from the axiom pair, following calls of both rules on the same
/// input child. Two constant axioms, or one constant and one wrapped, give
/// no pairs.
CoreachResult coreachable_pairs(const Transducer& m, const Transducer& m2, const Dta& b);

/// Right-hand side u0 ~u'0 N1 u1 ~u'1 ... Nn un ~u'n, where ~ marks the
/// barred copy of the second transducer's words.
struct Production {
  std::size_t lhs = 0;
  std::optional<SymbolId> symbol;  // input symbol; none for the start production
  std::vector<Word> plain;         // n + 1 words
  std::vector<Word> barred;        // n + 1 words
  std::vector<std::size_t> nonterminals;
  std::vector<std::size_t> children;  // input child read by each nonterminal
};

struct PairGrammar {
  // Nonterminal 0 is the start symbol S; nonterminal i > 0 is pairs[i - 1].
  std::vector<StatePair> pairs;
  std::vector<DtaState> dta_state;  // per nonterminal, S included (start state)
  std::vector<Production> productions;
  std::vector<std::vector<std::size_t>> by_lhs;

  std::size_t nonterminal_count() const { return pairs.size() + 1; }
  std::string nonterminal_name(std::size_t nt, const Transducer& m, const Transducer& m2) const;
  std::string production_str(std::size_t index, const Transducer& m, const Transducer& m2) const;
};

/// Throws UsageError unless the two transducers are same-ordered.
PairGrammar build_pair_grammar(const Transducer& m, const Transducer& m2, const Dta& b, const CompatibleMap& iota);

struct Derivation {
  std::size_t production = 0;
  std::vector<std::shared_ptr<const Derivation>> children;
  std::size_t height = 0;
};

/// The terminal word of a derivation, unreduced; barred letters print as `~a`.
std::string terminal_string(const PairGrammar& g, const Derivation& d);

struct AgreeResult {
  bool agree = true;
  std::size_t test_set_size = 0;
  std::shared_ptr<const Derivation> witness;
  Word f_value;  // projection to the plain letters
  Word g_value;  // projection to the barred letters, unbarred
};

inline constexpr std::size_t kDefaultTestSetCap = 200000;

/// Checks f(w) = g(w) on every word derivable with each nonterminal used at
/// most `bound` times per root-to-leaf path. Words with equal (f, g) images
/// are merged. Throws ResourceError once more than `cap` images are held.
AgreeResult morphisms_agree(const PairGrammar& g, std::size_t bound = 2, std::size_t cap = kDefaultTestSetCap);

/// Exact check through a faithful representation of the free group in
/// SL2(Z): a word w maps to the pair of integer matrices of f(w) and g(w),
/// and the rational span of these pairs is computed for every nonterminal
/// by a fixpoint. The derivations whose pairs form a basis of the start
/// symbol's span are a test set of at most 8 words, so the answer needs no
/// bound.
AgreeResult morphisms_agree_span(const PairGrammar& g);

/// The input tree read along a derivation; unread children get min_tree.
Tree derivation_tree(const PairGrammar& g, const Dta& b, const Derivation& d);

enum class Outcome { Equivalent, Inequivalent, EmptyDomain };

std::string outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Equivalent;
  std::optional<Tree> witness;
  Word left;
  Word right;
  bool depth_bounded = false;  // Equivalent only up to the searched depth
  std::string note;
};

enum class TestSetStrategy { Span, Bounded };

struct DecideConfig {
  std::size_t witness_depth = 5;  // trees of depth < witness_depth are searched
  TestSetStrategy test_set = TestSetStrategy::Span;
  std::size_t bound = 2;  // Bounded only
  std::size_t cap = kDefaultTestSetCap;
};

/// First tree of L(b) with depth < max_depth (in enum_trees order) on which
/// the two transducers differ.
std::optional<Tree> search_witness(const Transducer& m, const Transducer& m2, const Dta& b, std::size_t max_depth);

Verdict decide_equiv(const Transducer& m, const Transducer& m2, const Dta& b, const DecideConfig& config = {});

}  // namespace ltg
