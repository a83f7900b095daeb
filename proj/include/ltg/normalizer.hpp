#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ltg/periodicity.hpp"
#include "ltg/transducer.hpp"

namespace ltg {

struct CompatibleTransducer {
  Transducer transducer;
  CompatibleMap iota;
};

/// Product of m with the (reduced, non-empty) DTA b: states are the pairs
/// <q,h> reachable from <q0,h0>, BOTTOM exactly where delta(h,f) is
/// undefined. A pair keeps the name of q when q meets a single DTA state,
/// and is called `q@h` otherwise. A constant axiom yields a stateless copy.
CompatibleTransducer make_compatible(const Transducer& m, const Dta& b);

/// Inlines every state whose abstract value is a singleton.
CompatibleTransducer remove_trivial(const Transducer& m, const Dta& b, const CompatibleMap& iota,
                                    const Analysis& analysis);

/// A contiguous run of state calls from one rule, with the words between them.
struct Segment {
  std::vector<StateId> states;
  std::vector<Word> between;  // states.size() - 1 words
};

/// Produces some output word of a state (any element of L(q)).
using WitnessProvider = std::function<Word(StateId)>;

/// Witnesses obtained by evaluating each state on the minimal tree of its DTA state.
WitnessProvider min_tree_witnesses(const Transducer& m, const Dta& b, const CompatibleMap& iota);

/// Factor-wise description of a periodic segment L1 u1 ... Ln within rep.<period>:
/// L_i lies in reps[i].<periods[i]>, periods[n-1] = period and
/// periods[i] = (u_i reps[i+1]) periods[i+1] (u_i reps[i+1])-.
struct PeriodicDecomposition {
  std::vector<Word> reps;
  std::vector<Word> periods;
  Word rep;
  Word period;
  std::vector<Word> prefix_witnesses;  // s_i, an element of L1 u1 ... L(i-1) u(i-1)
  std::vector<Word> suffix_witnesses;  // t_i, an element of u_i L(i+1) ... Ln
};

/// Present iff the abstract product of the segment is periodic. Throws
/// InvariantViolation if the derived identities fail to hold.
std::optional<PeriodicDecomposition> periodic_decompose(const Segment& segment, const Analysis& analysis,
                                                        const WitnessProvider& witness);

/// Inclusive range of call positions within a rule.
struct Interval {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Maximal runs of at least two calls whose product is periodic, left to right.
std::vector<Interval> periodic_intervals(const Rule& rule, const Analysis& analysis);

Segment segment_of(const Rule& rule, Interval interval);

/// Rewrites the calls of `interval` into the order given by `order` (a
/// permutation of 0..len-1, relative to interval.first), conjugating every
/// factor into <period> and adjusting the surrounding constants.
Rule permute_interval(const Rule& rule, Interval interval, const PeriodicDecomposition& decomposition,
                      std::span<const std::size_t> order);

/// Sorts every periodic interval by input child index.
Rule reorder_rule(const Rule& rule, const Analysis& analysis, const WitnessProvider& witness);

bool is_ordered(const Transducer& m, const Analysis& analysis);

struct OrderedTransducer {
  bool empty_domain = false;
  Dta dta;  // the reduced domain automaton
  Transducer transducer;
  CompatibleMap iota;
  Analysis analysis;
};

/// make_compatible, remove trivial states, then reorder every rule. The
/// result is trivial-free, ordered and equivalent to m relative to b.
OrderedTransducer order_transducer(const Transducer& m, const Dta& b);

}  // namespace ltg
