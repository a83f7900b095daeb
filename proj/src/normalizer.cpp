#include "ltg/normalizer.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

#include "ltg/error.hpp"

namespace ltg {

CompatibleTransducer make_compatible(const Transducer& m, const Dta& b) {
  if (!(m.input() == b.alphabet())) throw InvalidInput("transducer and DTA use different input alphabets");
  CompatibleTransducer out{Transducer(m.input(), m.output()), {}};
  if (m.axiom().is_constant()) {
    out.transducer.set_axiom(Axiom{m.axiom().head, std::nullopt, {}});
    return out;
  }

  using Pair = std::pair<StateId, DtaState>;
  std::map<Pair, StateId> index;
  std::vector<Pair> order;
  auto discover = [&](Pair p) {
    auto [it, fresh] = index.emplace(p, order.size());
    if (fresh) order.push_back(p);
    return it->second;
  };
  discover({*m.axiom().state, b.start()});
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [q, h] = order[i];
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const auto& d = b.delta(h, f);
      if (!d) continue;
      const Rule& r = m.rule(q, f);
      if (r.bottom)
        throw InvalidInput("transducer is undefined on domain inputs: rule " + m.state_name(q) + " " +
                           m.input().name(f) + " is BOTTOM but the DTA accepts " + m.input().name(f) +
                           " at state " + b.state_name(h));
      for (const auto& c : r.calls) discover({c.state, (*d)[c.child]});
    }
  }

  // Numbering by (q, h) rather than discovery order makes the construction
  // idempotent on its own output.
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;

  std::vector<std::size_t> partners(m.state_count(), 0);
  for (const auto& [q, h] : order) ++partners[q];
  Transducer& t = out.transducer;
  for (const auto& [q, h] : order) {
    std::string name = partners[q] == 1 ? m.state_name(q) : m.state_name(q) + "@" + b.state_name(h);
    while (t.find_state(name)) name += "'";
    t.add_state(std::move(name));
    out.iota.dta_state.push_back(h);
  }
  for (StateId id = 0; id < order.size(); ++id) {
    auto [q, h] = order[id];
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const auto& d = b.delta(h, f);
      if (!d) {
        t.set_rule(id, f, Rule::make_bottom());
        continue;
      }
      Rule r = m.rule(q, f);
      for (auto& c : r.calls) c.state = index.at({c.state, (*d)[c.child]});
      t.set_rule(id, f, std::move(r));
    }
  }
  t.set_axiom(Axiom{m.axiom().head, index.at({*m.axiom().state, b.start()}), m.axiom().tail});
  return out;
}

CompatibleTransducer remove_trivial(const Transducer& m, const Dta& b, const CompatibleMap& iota,
                                    const Analysis& analysis) {
  (void)b;
  const Axiom& ax = m.axiom();
  if (ax.is_constant()) return {m, iota};
  if (analysis[*ax.state].is_singleton()) {
    Transducer t(m.input(), m.output());
    t.set_axiom(Axiom{ax.head * analysis[*ax.state].value() * ax.tail, std::nullopt, {}});
    return {std::move(t), {}};
  }

  std::vector<std::optional<StateId>> renumber(m.state_count());
  CompatibleTransducer out{Transducer(m.input(), m.output()), {}};
  for (StateId q = 0; q < m.state_count(); ++q)
    if (!analysis[q].is_singleton()) {
      renumber[q] = out.transducer.add_state(m.state_name(q));
      out.iota.dta_state.push_back(iota(q));
    }
  for (StateId q = 0; q < m.state_count(); ++q) {
    if (!renumber[q]) continue;
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const Rule& r = m.rule(q, f);
      if (r.bottom) {
        out.transducer.set_rule(*renumber[q], f, r);
        continue;
      }
      Rule nr{false, r.head, {}};
      for (const auto& c : r.calls) {
        Word& tail = nr.calls.empty() ? nr.head : nr.calls.back().after;
        if (renumber[c.state]) {
          nr.calls.push_back(Call{*renumber[c.state], c.child, c.after});
        } else {
          tail *= analysis[c.state].value();
          tail *= c.after;
        }
      }
      out.transducer.set_rule(*renumber[q], f, std::move(nr));
    }
  }
  out.transducer.set_axiom(Axiom{ax.head, renumber[*ax.state], ax.tail});
  return out;
}

WitnessProvider min_tree_witnesses(const Transducer& m, const Dta& b, const CompatibleMap& iota) {
  auto cache = std::make_shared<std::vector<std::optional<Word>>>(m.state_count());
  return [&m, &b, iota, cache](StateId q) -> Word {
    auto& slot = cache->at(q);
    if (!slot) slot = eval_state(m, q, min_tree(b, iota(q)));
    return *slot;
  };
}

std::optional<PeriodicDecomposition> periodic_decompose(const Segment& segment, const Analysis& analysis,
                                                        const WitnessProvider& witness) {
  const std::size_t n = segment.states.size();
  if (n == 0 || segment.between.size() + 1 != n) throw UsageError("malformed segment");

  AbstractLang acc = analysis[segment.states[0]];
  for (std::size_t i = 1; i < n; ++i) {
    acc = alpha_star(acc, AbstractLang::singleton(segment.between[i - 1]));
    acc = alpha_star(acc, analysis[segment.states[i]]);
  }
  if (!acc.is_periodic()) return std::nullopt;

  PeriodicDecomposition d;
  d.rep = acc.coset().rep;
  d.period = acc.coset().period;

  std::vector<Word> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = witness(segment.states[i]);
  d.prefix_witnesses.assign(n, Word{});
  for (std::size_t i = 1; i < n; ++i) d.prefix_witnesses[i] = d.prefix_witnesses[i - 1] * w[i - 1] * segment.between[i - 1];
  d.suffix_witnesses.assign(n, Word{});
  for (std::size_t i = n - 1; i-- > 0;) d.suffix_witnesses[i] = segment.between[i] * w[i + 1] * d.suffix_witnesses[i + 1];

  std::vector<Word> raw(n);
  for (std::size_t i = 0; i < n; ++i)
    raw[i] = d.prefix_witnesses[i].inverse() * d.rep * d.suffix_witnesses[i].inverse();
  d.periods.assign(n, Word{});
  d.periods[n - 1] = d.period;
  for (std::size_t i = n - 1; i-- > 0;) {
    const Word conj = segment.between[i] * raw[i + 1];
    d.periods[i] = conj * d.periods[i + 1] * conj.inverse();
  }
  d.reps.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Coset c = canonical_coset(raw[i], d.periods[i]);
    if (!leq(analysis[segment.states[i]], AbstractLang::periodic(c)))
      throw InvariantViolation("periodic decomposition: factor " + std::to_string(i) + " is not inside " + c.str());
    d.reps[i] = c.rep;
  }
  Word residue = d.rep.inverse() * d.reps[0];
  for (std::size_t i = 1; i < n; ++i) residue = residue * segment.between[i - 1] * d.reps[i];
  if (!in_cyclic_subgroup(residue, d.period))
    throw InvariantViolation("periodic decomposition: residue " + residue.str() + " is outside <" + d.period.str() +
                             ">");
  return d;
}

namespace {

AbstractLang span_value(const Rule& r, const Analysis& a, std::size_t first, std::size_t last) {
  AbstractLang acc = a[r.calls[first].state];
  for (std::size_t k = first + 1; k <= last; ++k) {
    acc = alpha_star(acc, AbstractLang::singleton(r.calls[k - 1].after));
    acc = alpha_star(acc, a[r.calls[k].state]);
  }
  return acc;
}

}  // namespace

std::vector<Interval> periodic_intervals(const Rule& rule, const Analysis& analysis) {
  std::vector<Interval> out;
  if (rule.bottom) return out;
  const std::size_t n = rule.calls.size();
  std::size_t i = 0;
  while (i < n) {
    if (!analysis[rule.calls[i].state].is_periodic()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && span_value(rule, analysis, i, j + 1).is_periodic()) ++j;
    if (j > i) {
      // A periodic span overlapping [i, j] and reaching past j would make
      // [i, j+1] periodic as well.
      if (j + 1 < n)
        for (std::size_t k = i + 1; k <= j; ++k)
          if (span_value(rule, analysis, k, j + 1).is_periodic())
            throw InvariantViolation("overlapping maximal periodic intervals");
      out.push_back({i, j});
    }
    i = j + 1;
  }
  return out;
}

Segment segment_of(const Rule& rule, Interval interval) {
  Segment s;
  for (std::size_t k = interval.first; k <= interval.last; ++k) {
    s.states.push_back(rule.calls.at(k).state);
    if (k < interval.last) s.between.push_back(rule.calls[k].after);
  }
  return s;
}

Rule permute_interval(const Rule& rule, Interval interval, const PeriodicDecomposition& d,
                      std::span<const std::size_t> order) {
  const std::size_t len = interval.last - interval.first + 1;
  if (order.size() != len || d.reps.size() != len) throw UsageError("permutation does not match the interval");
  std::vector<bool> seen(len, false);
  for (auto k : order) {
    if (k >= len || seen[k]) throw UsageError("not a permutation");
    seen[k] = true;
  }

  const auto call = [&](std::size_t k) -> const Call& { return rule.calls[interval.first + k]; };
  // c_k = u_k v_(k+1) ... u_(len-2) v_(len-1); each c_k- v_k- L_k c_k lies in <period>.
  std::vector<Word> c(len);
  for (std::size_t k = len - 1; k-- > 0;) c[k] = call(k).after * d.reps[k + 1] * c[k + 1];
  const Word prefix = d.reps[0] * c[0];
  const auto entry = [&](std::size_t k) { return c[k].inverse() * d.reps[k].inverse(); };

  Rule out = rule;
  Word& before = interval.first == 0 ? out.head : out.calls[interval.first - 1].after;
  before = before * prefix * entry(order[0]);
  const Word trailing = call(len - 1).after;
  for (std::size_t a = 0; a < len; ++a) {
    const std::size_t k = order[a];
    Call& slot = out.calls[interval.first + a];
    slot.state = call(k).state;
    slot.child = call(k).child;
    slot.after = c[k] * (a + 1 < len ? entry(order[a + 1]) : trailing);
  }
  return out;
}

Rule reorder_rule(const Rule& rule, const Analysis& analysis, const WitnessProvider& witness) {
  Rule out = rule;
  for (const Interval& iv : periodic_intervals(rule, analysis)) {
    const std::size_t len = iv.last - iv.first + 1;
    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return rule.calls[iv.first + x].child < rule.calls[iv.first + y].child;
    });
    if (std::is_sorted(order.begin(), order.end())) continue;
    auto d = periodic_decompose(segment_of(rule, iv), analysis, witness);
    if (!d) throw InvariantViolation("periodic interval without a decomposition");
    out = permute_interval(out, iv, *d, order);
  }
  return out;
}

bool is_ordered(const Transducer& m, const Analysis& analysis) {
  for (StateId q = 0; q < m.state_count(); ++q)
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const Rule& r = m.rule(q, f);
      for (const Interval& iv : periodic_intervals(r, analysis))
        for (std::size_t k = iv.first; k < iv.last; ++k)
          if (r.calls[k].child > r.calls[k + 1].child) return false;
    }
  return true;
}

OrderedTransducer order_transducer(const Transducer& m, const Dta& b) {
  OrderedTransducer out;
  auto red = dta_reduce(b);
  if (red.empty_language) {
    out.empty_domain = true;
    out.dta = b;
    out.transducer = m;
    return out;
  }
  out.dta = std::move(red.dta);
  auto compat = make_compatible(m, out.dta);
  const Analysis first = analyze(compat.transducer, out.dta, compat.iota);
  auto trimmed = remove_trivial(compat.transducer, out.dta, compat.iota, first);
  const Analysis second = analyze(trimmed.transducer, out.dta, trimmed.iota);

  const Transducer& src = trimmed.transducer;
  auto witness = min_tree_witnesses(src, out.dta, trimmed.iota);
  Transducer ordered = src;
  for (StateId q = 0; q < src.state_count(); ++q)
    for (SymbolId f = 0; f < src.input().size(); ++f)
      ordered.set_rule(q, f, reorder_rule(src.rule(q, f), second, witness));

  out.analysis = analyze(ordered, out.dta, trimmed.iota);
  out.transducer = std::move(ordered);
  out.iota = std::move(trimmed.iota);
  return out;
}

}  // namespace ltg
