#include "ltg/periodicity.hpp"

#include <algorithm>
#include <unordered_set>

#include "ltg/error.hpp"

namespace ltg {

AbstractLang AbstractLang::singleton(Word g) { return AbstractLang(Kind::Singleton, Coset{std::move(g), {}}); }

AbstractLang AbstractLang::periodic(const Word& g, const Word& p) {
  return AbstractLang(Kind::Periodic, canonical_coset(g, p));
}

const Word& AbstractLang::value() const {
  if (kind_ != Kind::Singleton) throw UsageError("value() of a non-singleton abstract language");
  return data_.rep;
}

const Coset& AbstractLang::coset() const {
  if (kind_ != Kind::Periodic) throw UsageError("coset() of a non-periodic abstract language");
  return data_;
}

bool AbstractLang::contains(const Word& g) const {
  switch (kind_) {
    case Kind::Empty:
      return false;
    case Kind::Singleton:
      return data_.rep == g;
    case Kind::Periodic:
      return data_.contains(g);
    case Kind::Top:
      return true;
  }
  return false;
}

std::string AbstractLang::str() const {
  switch (kind_) {
    case Kind::Empty:
      return "EMPTY";
    case Kind::Singleton:
      return "SINGLETON word=" + data_.rep.str();
    case Kind::Periodic:
      return "PERIODIC " + data_.str();
    case Kind::Top:
      return "TOP";
  }
  return "?";
}

bool leq(const AbstractLang& x, const AbstractLang& y) {
  if (x.is_empty() || y.is_top()) return true;
  if (y.is_empty() || x.is_top()) return false;
  if (x.is_singleton()) return y.contains(x.value());
  // Cosets of maximal cyclic subgroups are either equal or not nested.
  return y.is_periodic() && x == y;
}

AbstractLang alpha_of(std::span<const Word> language) {
  std::vector<Word> distinct;
  std::unordered_set<Word> seen;
  for (const auto& w : language)
    if (seen.insert(w).second) distinct.push_back(w);
  if (distinct.empty()) return AbstractLang::empty();
  if (distinct.size() == 1) return AbstractLang::singleton(distinct.front());
  const Word base_inv = distinct.front().inverse();
  const Word p = primitive_root(base_inv * distinct[1]);
  for (const auto& w : distinct)
    if (!in_cyclic_subgroup(base_inv * w, p)) return AbstractLang::top();
  return AbstractLang::periodic(distinct.front(), p);
}

AbstractLang alpha_join(const AbstractLang& x, const AbstractLang& y) {
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  if (x.is_top() || y.is_top()) return AbstractLang::top();
  if (x.is_singleton() && y.is_singleton()) {
    if (x.value() == y.value()) return x;
    return AbstractLang::periodic(x.value(), primitive_root(x.value().inverse() * y.value()));
  }
  if (x.is_singleton()) return y.coset().contains(x.value()) ? y : AbstractLang::top();
  if (y.is_singleton()) return x.coset().contains(y.value()) ? x : AbstractLang::top();
  const Coset& c1 = x.coset();
  const Coset& c2 = y.coset();
  if (in_cyclic_subgroup(c2.period, c1.period) && in_cyclic_subgroup(c2.rep.inverse() * c1.rep, c1.period)) return x;
  return AbstractLang::top();
}

AbstractLang alpha_star(const AbstractLang& x, const AbstractLang& y) {
  if (x.is_empty() || y.is_empty()) return AbstractLang::empty();
  if (x.is_top() || y.is_top()) return AbstractLang::top();
  if (x.is_singleton() && y.is_singleton()) return AbstractLang::singleton(x.value() * y.value());
  if (x.is_singleton()) return AbstractLang::periodic(x.value() * y.coset().rep, y.coset().period);
  if (y.is_singleton()) {
    const Word& g2 = y.value();
    return AbstractLang::periodic(x.coset().rep * g2, g2.inverse() * x.coset().period * g2);
  }
  const Coset& c1 = x.coset();
  const Coset& c2 = y.coset();
  if (in_cyclic_subgroup(c2.rep.inverse() * c1.period * c2.rep, c2.period))
    return AbstractLang::periodic(c1.rep * c2.rep, c2.period);
  return AbstractLang::top();
}

AbstractLang abstract_rule(const Rule& r, std::span<const AbstractLang> values) {
  if (r.bottom) return AbstractLang::empty();
  AbstractLang acc = AbstractLang::singleton(r.head);
  for (const auto& c : r.calls) {
    acc = alpha_star(acc, values[c.state]);
    acc = alpha_star(acc, AbstractLang::singleton(c.after));
  }
  return acc;
}

namespace {

void require_compatible(const Transducer& m, const Dta& b, const CompatibleMap& iota) {
  auto problems = compatibility_violations(m, b, iota);
  if (!problems.empty()) throw UsageError("analysis needs a compatible map: " + problems.front());
}

// One synchronous round. A rule only contributes once every child's DTA
// state has a tree of the current depth bound, so X^(i) describes exactly
// the trees of depth < i, whether or not the rule reads all its children.
struct Iterate {
  std::vector<AbstractLang> values;
  std::vector<bool> inhabited;  // by DTA state: some tree of depth < i
  friend bool operator==(const Iterate&, const Iterate&) = default;
};

Iterate initial(const Transducer& m, const Dta& b) {
  return {std::vector<AbstractLang>(m.state_count()), std::vector<bool>(b.state_count(), false)};
}

bool children_inhabited(const std::vector<DtaState>& children, const std::vector<bool>& inhabited) {
  for (DtaState h : children)
    if (!inhabited[h]) return false;
  return true;
}

Iterate step(const Transducer& m, const Dta& b, const CompatibleMap& iota, const Iterate& prev) {
  Iterate next = initial(m, b);
  for (StateId q = 0; q < m.state_count(); ++q)
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const auto& d = b.delta(iota(q), f);
      if (d && children_inhabited(*d, prev.inhabited))
        next.values[q] = alpha_join(next.values[q], abstract_rule(m.rule(q, f), prev.values));
    }
  for (DtaState h = 0; h < b.state_count(); ++h)
    for (SymbolId f = 0; f < b.alphabet().size() && !next.inhabited[h]; ++f)
      if (const auto& d = b.delta(h, f)) next.inhabited[h] = children_inhabited(*d, prev.inhabited);
  return next;
}

}  // namespace

std::vector<std::vector<AbstractLang>> analyze_iterates(const Transducer& m, const Dta& b, const CompatibleMap& iota,
                                                         std::size_t rounds) {
  require_compatible(m, b, iota);
  std::vector<std::vector<AbstractLang>> out{std::vector<AbstractLang>(m.state_count())};
  Iterate x = initial(m, b);
  for (std::size_t i = 0; i < rounds; ++i) {
    x = step(m, b, iota, x);
    out.push_back(x.values);
  }
  return out;
}

Analysis analyze(const Transducer& m, const Dta& b, const CompatibleMap& iota) {
  require_compatible(m, b, iota);
  // Chains in the lattice have at most four elements, so at most 3N strict
  // increases of the values happen; inhabitation of DTA states adds at most
  // |H| rounds in which nothing else changes.
  const std::size_t cap = 3 * m.state_count() + b.state_count() + 1;
  Iterate x = initial(m, b);
  for (std::size_t i = 0; i < cap; ++i) {
    Iterate next = step(m, b, iota, x);
    if (next == x) {
      Analysis a;
      a.values = std::move(x.values);
      a.rounds = i;
      return a;
    }
    x = std::move(next);
  }
  throw InvariantViolation("abstract fixpoint did not stabilize within 3N + |H| rounds");
}

}  // namespace ltg
