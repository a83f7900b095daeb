#include "ltg/pair_checker.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ltg/error.hpp"

namespace ltg {

CoreachResult coreachable_pairs(const Transducer& m, const Transducer& m2, const Dta& b) {
  (void)b;
  CoreachResult out;
  if (m.axiom().is_constant() || m2.axiom().is_constant()) return out;

  std::map<StatePair, std::size_t> index;
  auto discover = [&](StatePair p, std::optional<PairOrigin> from) {
    if (index.emplace(p, out.pairs.size()).second) {
      out.pairs.push_back(p);
      out.origin.push_back(from);
    }
  };
  discover({*m.axiom().state, *m2.axiom().state}, std::nullopt);
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    const StatePair p = out.pairs[i];
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const Rule& r = m.rule(p.left, f);
      const Rule& r2 = m2.rule(p.right, f);
      if (r.bottom && r2.bottom) continue;
      bool same = r.bottom == r2.bottom && r.calls.size() == r2.calls.size();
      for (std::size_t k = 0; same && k < r.calls.size(); ++k) same = r.calls[k].child == r2.calls[k].child;
      if (!same && out.same_ordered) {
        out.same_ordered = false;
        out.mismatch = {i, f};
      }
      if (r.bottom || r2.bottom) continue;
      for (const auto& c : r.calls)
        for (const auto& c2 : r2.calls)
          if (c.child == c2.child) discover({c.state, c2.state}, PairOrigin{i, f, c.child});
    }
  }
  return out;
}

std::string PairGrammar::nonterminal_name(std::size_t nt, const Transducer& m, const Transducer& m2) const {
  if (nt == 0) return "S";
  const StatePair& p = pairs.at(nt - 1);
  return "<" + m.state_name(p.left) + "," + m2.state_name(p.right) + ">";
}

namespace {

void append_letters(std::string& out, const Word& w, bool barred) {
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    if (barred) out += '~';
    out += l.gen;
    if (l.inverse) out += '-';
  }
}

}  // namespace

std::string PairGrammar::production_str(std::size_t index, const Transducer& m, const Transducer& m2) const {
  const Production& p = productions.at(index);
  std::string rhs;
  for (std::size_t k = 0; k < p.plain.size(); ++k) {
    if (k > 0) {
      if (!rhs.empty()) rhs += ' ';
      rhs += nonterminal_name(p.nonterminals[k - 1], m, m2);
    }
    append_letters(rhs, p.plain[k], false);
    append_letters(rhs, p.barred[k], true);
  }
  std::string lhs = nonterminal_name(p.lhs, m, m2);
  if (p.symbol) lhs += " [" + m.input().name(*p.symbol) + "]";
  return lhs + " -> " + (rhs.empty() ? "_" : rhs);
}

PairGrammar build_pair_grammar(const Transducer& m, const Transducer& m2, const Dta& b, const CompatibleMap& iota) {
  const bool c1 = m.axiom().is_constant();
  const bool c2 = m2.axiom().is_constant();
  if (c1 != c2) throw UsageError("pair grammar needs two constant or two wrapped axioms");
  auto co = coreachable_pairs(m, m2, b);
  if (!co.same_ordered) throw UsageError("pair grammar needs same-ordered transducers");

  PairGrammar g;
  g.pairs = co.pairs;
  g.dta_state.push_back(b.start());
  for (const auto& p : g.pairs) g.dta_state.push_back(iota(p.left));
  g.by_lhs.assign(g.nonterminal_count(), {});
  auto add = [&](Production p) {
    g.by_lhs[p.lhs].push_back(g.productions.size());
    g.productions.push_back(std::move(p));
  };

  if (c1) {
    add(Production{0, std::nullopt, {m.axiom().head}, {m2.axiom().head}, {}, {}});
    return g;
  }
  std::map<StatePair, std::size_t> nt;
  for (std::size_t i = 0; i < g.pairs.size(); ++i) nt[g.pairs[i]] = i + 1;
  add(Production{0, std::nullopt, {m.axiom().head, m.axiom().tail}, {m2.axiom().head, m2.axiom().tail}, {1}, {0}});
  for (std::size_t i = 0; i < g.pairs.size(); ++i) {
    const StatePair p = g.pairs[i];
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const Rule& r = m.rule(p.left, f);
      const Rule& r2 = m2.rule(p.right, f);
      if (r.bottom) continue;
      Production prod{i + 1, f, {r.head}, {r2.head}, {}, {}};
      for (std::size_t k = 0; k < r.calls.size(); ++k) {
        prod.plain.push_back(r.calls[k].after);
        prod.barred.push_back(r2.calls[k].after);
        prod.nonterminals.push_back(nt.at({r.calls[k].state, r2.calls[k].state}));
        prod.children.push_back(r.calls[k].child);
      }
      add(std::move(prod));
    }
  }
  return g;
}

std::string terminal_string(const PairGrammar& g, const Derivation& d) {
  const Production& p = g.productions.at(d.production);
  std::string out;
  for (std::size_t k = 0; k < p.plain.size(); ++k) {
    if (k > 0) {
      std::string sub = terminal_string(g, *d.children[k - 1]);
      if (!sub.empty()) {
        if (!out.empty()) out += ' ';
        out += sub;
      }
    }
    append_letters(out, p.plain[k], false);
    append_letters(out, p.barred[k], true);
  }
  return out;
}

namespace {

struct Image {
  Word f;
  Word g;
  std::shared_ptr<const Derivation> derivation;
};

struct ImageKeyHash {
  std::size_t operator()(const std::pair<Word, Word>& k) const {
    const std::size_t a = std::hash<Word>{}(k.first);
    return a ^ (std::hash<Word>{}(k.second) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

class TestSet {
 public:
  TestSet(const PairGrammar& g, std::size_t bound, std::size_t cap) : g_(g), bound_(bound), cap_(cap) {}

  const std::vector<Image>& images(std::size_t nt, std::string counts) {
    if (static_cast<unsigned char>(counts[nt]) >= bound_) return none_;
    ++counts[nt];
    auto key = std::make_pair(nt, counts);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Image> out;
    std::unordered_map<std::pair<Word, Word>, std::size_t, ImageKeyHash> seen;
    for (std::size_t pi : g_.by_lhs[nt]) {
      const Production& p = g_.productions[pi];
      struct Partial {
        Word f, g;
        std::vector<std::shared_ptr<const Derivation>> kids;
      };
      std::vector<Partial> partial{{p.plain[0], p.barred[0], {}}};
      for (std::size_t k = 0; k < p.nonterminals.size() && !partial.empty(); ++k) {
        const std::vector<Image>& sub = images(p.nonterminals[k], counts);
        std::vector<Partial> next;
        std::unordered_map<std::pair<Word, Word>, std::size_t, ImageKeyHash> local;
        for (const auto& part : partial)
          for (const auto& img : sub) {
            Word f = part.f * img.f * p.plain[k + 1];
            Word gw = part.g * img.g * p.barred[k + 1];
            if (!local.emplace(std::make_pair(f, gw), next.size()).second) continue;
            auto kids = part.kids;
            kids.push_back(img.derivation);
            next.push_back({std::move(f), std::move(gw), std::move(kids)});
            charge(1);
          }
        partial = std::move(next);
      }
      for (auto& part : partial) {
        if (!seen.emplace(std::make_pair(part.f, part.g), out.size()).second) continue;
        auto d = std::make_shared<Derivation>();
        d->production = pi;
        for (const auto& kid : part.kids) d->height = std::max(d->height, kid->height + 1);
        d->children = std::move(part.kids);
        out.push_back({std::move(part.f), std::move(part.g), std::move(d)});
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Image& x, const Image& y) { return x.derivation->height < y.derivation->height; });
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  void charge(std::size_t n) {
    held_ += n;
    if (held_ > cap_)
      throw ResourceError("test set exceeds " + std::to_string(cap_) +
                          " images; lower --bound or use the brute-force oracle");
  }

  const PairGrammar& g_;
  std::size_t bound_;
  std::size_t cap_;
  std::size_t held_ = 0;
  std::vector<Image> none_;
  std::map<std::pair<std::size_t, std::string>, std::vector<Image>> memo_;
};

}  // namespace

AgreeResult morphisms_agree(const PairGrammar& g, std::size_t bound, std::size_t cap) {
  if (bound == 0) throw UsageError("test-set bound must be at least 1");
  TestSet ts(g, bound, cap);
  const auto& words = ts.images(0, std::string(g.nonterminal_count(), '\0'));
  AgreeResult r;
  r.test_set_size = words.size();
  for (const auto& img : words)
    if (img.f != img.g) {
      r.agree = false;
      r.witness = img.derivation;
      r.f_value = img.f;
      r.g_value = img.g;
      break;
    }
  return r;
}

Tree derivation_tree(const PairGrammar& g, const Dta& b, const Derivation& d) {
  const Production& p = g.productions.at(d.production);
  if (!p.symbol) {
    if (p.nonterminals.empty()) return min_tree(b, b.start());
    return derivation_tree(g, b, *d.children.at(0));
  }
  const auto& targets = b.delta(g.dta_state.at(p.lhs), *p.symbol);
  if (!targets) throw InvariantViolation("derivation uses a symbol outside the domain");
  Tree t{*p.symbol, {}};
  for (std::size_t i = 0; i < targets->size(); ++i) {
    auto it = std::find(p.children.begin(), p.children.end(), i);
    if (it == p.children.end())
      t.children.push_back(min_tree(b, (*targets)[i]));
    else
      t.children.push_back(derivation_tree(g, b, *d.children[it - p.children.begin()]));
  }
  return t;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Equivalent:
      return "equivalent";
    case Outcome::Inequivalent:
      return "inequivalent";
    case Outcome::EmptyDomain:
      return "empty-domain";
  }
  return "?";
}

std::optional<Tree> search_witness(const Transducer& m, const Transducer& m2, const Dta& b, std::size_t max_depth) {
  std::optional<Tree> found;
  for_each_tree(b, b.start(), max_depth, [&](const Tree& t) {
    if (eval(m, t) != eval(m2, t)) {
      found = t;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

Verdict inequivalent_at(const Transducer& m, const Transducer& m2, Tree t) {
  Verdict v;
  v.outcome = Outcome::Inequivalent;
  v.left = eval(m, t);
  v.right = eval(m2, t);
  v.witness = std::move(t);
  return v;
}

// Trees that agree with the co-reachability path to the mismatching pair and
// vary one or two children of the mismatching node over small tree sets.
std::optional<Tree> targeted_witness(const Transducer& m, const Transducer& m2, const OrderedTransducer& o,
                                     const CoreachResult& co) {
  constexpr std::size_t kDepth = 4;
  constexpr std::size_t kPool = 40;
  const Dta& b = o.dta;
  auto [pair_index, f] = *co.mismatch;

  std::vector<PairOrigin> path;
  for (std::size_t i = pair_index; co.origin[i]; i = co.origin[i]->parent) path.push_back(*co.origin[i]);
  auto wrap = [&](Tree hole) {
    for (const PairOrigin& step : path) {
      const DtaState h = o.iota(co.pairs[step.parent].left);
      const auto& targets = *b.delta(h, step.symbol);
      Tree t{step.symbol, {}};
      for (std::size_t i = 0; i < targets.size(); ++i)
        t.children.push_back(i == step.child ? std::move(hole) : min_tree(b, targets[i]));
      hole = std::move(t);
    }
    return hole;
  };

  const DtaState h = o.iota(co.pairs[pair_index].left);
  const auto& targets = b.delta(h, f);
  if (!targets) return std::nullopt;
  const std::size_t rank = targets->size();
  std::vector<Tree> base;
  std::vector<std::vector<Tree>> pools;
  for (DtaState c : *targets) {
    base.push_back(min_tree(b, c));
    auto pool = enum_trees(b, c, kDepth);
    if (pool.size() > kPool) pool.resize(kPool);
    pools.push_back(std::move(pool));
  }
  auto differs = [&](const std::vector<Tree>& kids) -> std::optional<Tree> {
    Tree t = wrap(Tree{f, kids});
    if (eval(m, t) != eval(m2, t)) return t;
    return std::nullopt;
  };
  if (auto t = differs(base)) return t;
  for (std::size_t i = 0; i < rank; ++i)
    for (const Tree& x : pools[i]) {
      auto kids = base;
      kids[i] = x;
      if (auto t = differs(kids)) return t;
    }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j)
      for (const Tree& x : pools[i])
        for (const Tree& y : pools[j]) {
          auto kids = base;
          kids[i] = x;
          kids[j] = y;
          if (auto t = differs(kids)) return t;
        }
  return std::nullopt;
}

}  // namespace

Verdict decide_equiv(const Transducer& m, const Transducer& m2, const Dta& b, const DecideConfig& config) {
  m.validate();
  m2.validate();
  if (!(m.input() == b.alphabet()) || !(m2.input() == b.alphabet()))
    throw InvalidInput("transducers and DTA use different input alphabets");
  if (dta_reduce(b).empty_language) {
    Verdict v;
    v.outcome = Outcome::EmptyDomain;
    v.note = "the domain automaton accepts no tree";
    return v;
  }

  const OrderedTransducer o1 = order_transducer(m, b);
  const OrderedTransducer o2 = order_transducer(m2, b);
  const Transducer& t1 = o1.transducer;
  const Transducer& t2 = o2.transducer;
  const std::string depth_note = "witness search exceeded depth " + std::to_string(config.witness_depth);

  const bool c1 = t1.axiom().is_constant();
  const bool c2 = t2.axiom().is_constant();
  if (c1 && c2) {
    if (t1.axiom().head == t2.axiom().head) return Verdict{Outcome::Equivalent, {}, {}, {}, false, "constant outputs"};
    return inequivalent_at(m, m2, min_tree(o1.dta, o1.dta.start()));
  }
  if (c1 != c2) {
    // A wrapped axiom over a non-trivial state has at least two outputs.
    if (auto t = search_witness(m, m2, o1.dta, config.witness_depth)) return inequivalent_at(m, m2, std::move(*t));
    Verdict v;
    v.outcome = Outcome::Inequivalent;
    v.note = "inequivalent: constant against non-trivial output; " + depth_note;
    return v;
  }

  const CoreachResult co = coreachable_pairs(t1, t2, o1.dta);
  if (!co.same_ordered) {
    if (auto t = targeted_witness(m, m2, o1, co)) return inequivalent_at(m, m2, std::move(*t));
    if (auto t = search_witness(m, m2, o1.dta, config.witness_depth)) return inequivalent_at(m, m2, std::move(*t));
    Verdict v;
    v.outcome = Outcome::Inequivalent;
    v.note = "inequivalent: normalized rules read children in different orders; " + depth_note;
    return v;
  }

  const PairGrammar g = build_pair_grammar(t1, t2, o1.dta, o1.iota);
  const bool span = config.test_set == TestSetStrategy::Span;
  const AgreeResult agree = span ? morphisms_agree_span(g) : morphisms_agree(g, config.bound, config.cap);
  if (agree.agree) {
    Verdict v;
    v.note = "test set of " + std::to_string(agree.test_set_size) + " words" +
             (span ? " spanning the start symbol" : ", bound " + std::to_string(config.bound));
    return v;
  }
  Verdict v = inequivalent_at(m, m2, derivation_tree(g, o1.dta, *agree.witness));
  if (v.left == v.right)
    throw InvariantViolation("grammar witness " + terminal_string(g, *agree.witness) + " does not separate the inputs");
  return v;
}

}  // namespace ltg
