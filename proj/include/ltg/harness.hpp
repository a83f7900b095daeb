#pragma once

#include <cstddef>
#include <cstdint>

#include "ltg/pair_checker.hpp"

namespace ltg {

struct GenParams {
  std::uint64_t seed = 1;
  std::size_t max_states = 5;
  std::size_t max_rank = 2;
  std::size_t input_symbols = 3;
  std::size_t output_generators = 2;
  std::size_t max_word_length = 4;
  std::size_t max_dta_states = 3;
  double periodic_share = 0.3;

  void validate() const;  // UsageError on zero counts or a bad share
};

struct Instance {
  Transducer transducer;
  Dta dta;  // reduced, non-empty language
  CompatibleMap iota;
};

/// Pure function of the parameters.
Instance gen_instance(const GenParams& p);

/// Compares both transducers on every tree of L(b) with depth < max_depth.
/// An Equivalent result is marked depth_bounded.
Verdict brute_force_equiv(const Transducer& m, const Transducer& m2, const Dta& b, std::size_t max_depth);

/// An equivalent transducer relative to b: permutes a periodic span,
/// shifts a constant across a trivial call, or inserts a cancelling pair.
/// May return the compatible product of m rather than m itself.
Transducer mutate_preserving(const Transducer& m, const Dta& b, std::uint64_t seed);

/// Appends one generator to one rule word (or to the axiom if no rule is live).
Transducer mutate_breaking(const Transducer& m, std::uint64_t seed);

}  // namespace ltg
