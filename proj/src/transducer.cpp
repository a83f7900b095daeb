#include "ltg/transducer.hpp"

#include <algorithm>

#include "ltg/error.hpp"

namespace ltg {

StateId Transducer::add_state(std::string name) {
  if (name.empty()) throw InvalidInput("empty state name");
  if (find_state(name)) throw InvalidInput("state '" + name + "' declared twice");
  names_.push_back(std::move(name));
  rules_.emplace_back(input_.size());
  return names_.size() - 1;
}

std::optional<StateId> Transducer::find_state(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<StateId>(it - names_.begin());
}

void Transducer::set_rule(StateId q, SymbolId f, Rule rule) {
  if (q >= names_.size() || f >= input_.size()) throw InvalidInput("rule out of range");
  rules_[q][f] = std::move(rule);
}

const Rule& Transducer::rule(StateId q, SymbolId f) const {
  const auto& r = rules_.at(q).at(f);
  if (!r) throw InvalidInput("no rule for state " + names_[q] + " and symbol " + input_.name(f));
  return *r;
}

Rule& Transducer::rule(StateId q, SymbolId f) {
  auto& r = rules_.at(q).at(f);
  if (!r) throw InvalidInput("no rule for state " + names_[q] + " and symbol " + input_.name(f));
  return *r;
}

void Transducer::validate() const {
  if (axiom_.state && *axiom_.state >= names_.size()) throw InvalidInput("axiom refers to an unknown state");
  for (StateId q = 0; q < names_.size(); ++q)
    for (SymbolId f = 0; f < input_.size(); ++f) {
      const auto& r = rules_[q][f];
      const std::string where = "rule " + names_[q] + " " + input_.name(f);
      if (!r) throw InvalidInput("missing " + where + " (transducers must be total)");
      if (r->bottom) continue;
      std::vector<bool> used(input_.rank(f), false);
      for (const auto& c : r->calls) {
        if (c.state >= names_.size()) throw InvalidInput(where + ": unknown state");
        if (c.child >= input_.rank(f))
          throw InvalidInput(where + ": child " + std::to_string(c.child + 1) + " exceeds rank " +
                             std::to_string(input_.rank(f)));
        if (used[c.child]) throw InvalidInput(where + ": child " + std::to_string(c.child + 1) + " used twice");
        used[c.child] = true;
      }
    }
}

std::vector<std::string> compatibility_violations(const Transducer& m, const Dta& b, const CompatibleMap& iota) {
  std::vector<std::string> out;
  if (m.state_count() == 0) {
    if (!m.axiom().is_constant()) out.push_back("axiom refers to a state but the transducer has none");
    return out;
  }
  if (!(m.input() == b.alphabet())) out.push_back("transducer and DTA use different input alphabets");
  if (iota.dta_state.size() != m.state_count()) {
    out.push_back("compatible map does not cover every state");
    return out;
  }
  for (auto h : iota.dta_state)
    if (h >= b.state_count()) {
      out.push_back("compatible map refers to an unknown DTA state");
      return out;
    }
  if (m.axiom().state && iota(*m.axiom().state) != b.start())
    out.push_back("axiom state " + m.state_name(*m.axiom().state) + " is not mapped to the DTA start state");
  for (StateId q = 0; q < m.state_count(); ++q)
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const std::string where = "rule " + m.state_name(q) + " " + m.input().name(f);
      if (!m.has_rule(q, f)) {
        out.push_back("missing " + where);
        continue;
      }
      const Rule& r = m.rule(q, f);
      const auto& d = b.delta(iota(q), f);
      if (!d) {
        if (!r.bottom) out.push_back(where + " must be BOTTOM (delta undefined)");
        continue;
      }
      if (r.bottom) {
        out.push_back(where + " is BOTTOM but delta is defined");
        continue;
      }
      for (const auto& c : r.calls)
        if (c.child >= d->size() || iota(c.state) != (*d)[c.child])
          out.push_back(where + ": call " + m.state_name(c.state) + " on child " + std::to_string(c.child + 1) +
                        " is mapped to the wrong DTA state");
    }
  return out;
}

namespace {

void eval_into(const Transducer& m, StateId q, const Tree& t, Word& acc, std::size_t depth) {
  if (depth > kMaxEvalDepth) throw ResourceError("evaluation exceeded the recursion limit");
  const Rule& r = m.rule(q, t.symbol);
  if (r.bottom) throw OffDomainError(to_string(t, m.input()));
  acc *= r.head;
  for (const auto& c : r.calls) {
    eval_into(m, c.state, t.children.at(c.child), acc, depth + 1);
    acc *= c.after;
  }
}

}  // namespace

Word eval_state(const Transducer& m, StateId q, const Tree& t) {
  Word acc;
  eval_into(m, q, t, acc, 0);
  return acc;
}

Word eval(const Transducer& m, const Tree& t) {
  const Axiom& ax = m.axiom();
  if (ax.is_constant()) return ax.head;
  Word acc = ax.head;
  eval_into(m, *ax.state, t, acc, 0);
  acc *= ax.tail;
  return acc;
}

}  // namespace ltg
