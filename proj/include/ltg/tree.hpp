#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltg {

using SymbolId = std::size_t;
using DtaState = std::size_t;

/// Input symbols with their ranks, in declaration order. Declaration order is
/// the tie-break order for enumeration and minimal witnesses.
class RankedAlphabet {
 public:
  SymbolId add(std::string name, std::size_t rank);

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t rank(SymbolId f) const { return ranks_.at(f); }
  const std::string& name(SymbolId f) const { return names_.at(f); }
  std::optional<SymbolId> find(std::string_view name) const;

  friend bool operator==(const RankedAlphabet& x, const RankedAlphabet& y) {
    return x.names_ == y.names_ && x.ranks_ == y.ranks_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> ranks_;
  std::unordered_map<std::string, SymbolId> index_;
};

struct Tree {
  SymbolId symbol = 0;
  std::vector<Tree> children;

  /// 0 for a leaf, otherwise 1 + max child depth.
  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Tree&, const Tree&) = default;
};

std::string to_string(const Tree& t, const RankedAlphabet& sigma);
/// Parses `f(g(k),k)`; rank-0 symbols are written without parentheses.
Tree parse_tree(std::string_view text, const RankedAlphabet& sigma);

/// Top-down deterministic tree automaton with a partial transition function.
class Dta {
 public:
  Dta() = default;
  explicit Dta(RankedAlphabet sigma) : sigma_(std::move(sigma)) {}

  DtaState add_state(std::string name);
  void set_start(DtaState h) { start_ = h; }
  /// Defines delta(h, f) = targets. Throws InvalidInput on arity mismatch.
  void set_transition(DtaState h, SymbolId f, std::vector<DtaState> targets);

  const RankedAlphabet& alphabet() const noexcept { return sigma_; }
  std::size_t state_count() const noexcept { return names_.size(); }
  const std::string& state_name(DtaState h) const { return names_.at(h); }
  std::optional<DtaState> find_state(std::string_view name) const;
  DtaState start() const noexcept { return start_; }
  const std::optional<std::vector<DtaState>>& delta(DtaState h, SymbolId f) const { return delta_.at(h).at(f); }

 private:
  RankedAlphabet sigma_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::optional<std::vector<DtaState>>>> delta_;
  DtaState start_ = 0;
};

struct DtaReduction {
  bool empty_language = false;
  Dta dta;  // meaningful only when the language is non-empty
  // Old state -> new state, for the states that survived.
  std::vector<std::optional<DtaState>> state_map;
};

/// Drops states with empty domain and states unreachable from the start.
DtaReduction dta_reduce(const Dta& b);

bool dom_member(const Dta& b, DtaState h, const Tree& t);
inline bool accepts(const Dta& b, const Tree& t) { return dom_member(b, b.start(), t); }

/// A minimal-depth tree of dom(h), ties broken by symbol declaration order.
/// Throws DomainError if dom(h) is empty.
Tree min_tree(const Dta& b, DtaState h);

/// All trees of dom(h) with depth < max_depth, by increasing depth, then by
/// symbol order, then lexicographically over children.
std::vector<Tree> enum_trees(const Dta& b, DtaState h, std::size_t max_depth);

/// Streaming variant of enum_trees; stops early when `visit` returns false.
void for_each_tree(const Dta& b, DtaState h, std::size_t max_depth, const std::function<bool(const Tree&)>& visit);

}  // namespace ltg
