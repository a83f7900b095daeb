#include "ltg/harness.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ltg/error.hpp"

namespace ltg {

void GenParams::validate() const {
  if (max_states == 0 || input_symbols == 0 || output_generators == 0 || max_dta_states == 0)
    throw UsageError("generator counts must be at least 1");
  if (output_generators > 26) throw UsageError("at most 26 output generators");
  if (input_symbols > 20) throw UsageError("at most 20 input symbols");
  if (periodic_share < 0 || periodic_share > 1) throw UsageError("periodic share must lie in [0, 1]");
}

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Word random_word(Rng& rng, const Alphabet& out, std::size_t max_len) {
  const std::vector<char> gens(out.generators().begin(), out.generators().end());
  const std::size_t len = pick(rng, 0, max_len);
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < len; ++i) raw.push_back({gens[pick(rng, 0, gens.size() - 1)], chance(rng, 0.3)});
  return Word::reduce(raw);
}

Word nonempty_word(Rng& rng, const Alphabet& out, std::size_t max_len) {
  for (;;) {
    Word w = random_word(rng, out, std::max<std::size_t>(max_len, 1));
    if (!w.empty()) return w;
  }
}

RankedAlphabet random_input(Rng& rng, const GenParams& p) {
  static const char* names[] = {"f", "g", "h", "j", "l", "m", "n", "o", "p", "r",
                                "s", "t", "u", "v", "w", "x", "y", "z", "e", "d"};
  RankedAlphabet sigma;
  const std::size_t n = p.input_symbols;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t rank = i == 0 ? p.max_rank : pick(rng, 0, p.max_rank);
    sigma.add(names[i], rank);
  }
  sigma.add("k", 0);
  return sigma;
}

Dta random_dta(Rng& rng, const RankedAlphabet& sigma, const GenParams& p) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Dta b(sigma);
    const std::size_t nh = pick(rng, 1, p.max_dta_states);
    for (std::size_t h = 0; h < nh; ++h) b.add_state("h" + std::to_string(h));
    b.set_start(0);
    for (DtaState h = 0; h < nh; ++h)
      for (SymbolId f = 0; f < sigma.size(); ++f) {
        if (!chance(rng, 0.75)) continue;
        std::vector<DtaState> targets;
        for (std::size_t i = 0; i < sigma.rank(f); ++i) targets.push_back(pick(rng, 0, nh - 1));
        b.set_transition(h, f, std::move(targets));
      }
    auto red = dta_reduce(b);
    if (!red.empty_language) return red.dta;
  }
  Dta b(sigma);
  b.add_state("h0");
  for (SymbolId f = 0; f < sigma.size(); ++f) b.set_transition(0, f, std::vector<DtaState>(sigma.rank(f), 0));
  return b;
}

}  // namespace

Instance gen_instance(const GenParams& p) {
  p.validate();
  Rng rng(p.seed);
  const RankedAlphabet sigma = random_input(rng, p);
  std::string gens;
  for (std::size_t i = 0; i < p.output_generators; ++i) gens += static_cast<char>('a' + i);
  const Alphabet out(gens);
  Dta b = random_dta(rng, sigma, p);

  const std::size_t nh = b.state_count();
  const std::size_t nq = std::max(nh, pick(rng, 1, std::max(p.max_states, nh)));
  Instance inst{Transducer(sigma, out), b, {}};
  Transducer& m = inst.transducer;
  for (std::size_t q = 0; q < nq; ++q) m.add_state("q" + std::to_string(q));
  // Every DTA state gets at least one transducer state; q0 sits on the start.
  std::vector<DtaState>& iota = inst.iota.dta_state;
  iota.resize(nq);
  std::vector<DtaState> cover(nh);
  std::iota(cover.begin(), cover.end(), DtaState{0});
  std::swap(cover[0], cover[b.start()]);
  for (std::size_t q = 0; q < nq; ++q) iota[q] = q < nh ? cover[q] : pick(rng, 0, nh - 1);

  // Periodic states produce outputs in <period>.tail(q), built so that
  // q'(x) tail(q')- stays inside <period> for periodic callees q'.
  const Word period = primitive_root(nonempty_word(rng, out, 2));
  std::vector<bool> periodic(nq);
  std::vector<Word> tail(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    periodic[q] = chance(rng, p.periodic_share);
    if (periodic[q]) tail[q] = random_word(rng, out, 1);
  }
  const std::size_t wl = p.max_word_length;
  auto period_power = [&] { return power(period, static_cast<std::int64_t>(pick(rng, 0, 2)) - 1); };

  for (std::size_t q = 0; q < nq; ++q)
    for (SymbolId f = 0; f < sigma.size(); ++f) {
      const auto& d = b.delta(iota[q], f);
      if (!d) {
        m.set_rule(q, f, Rule::make_bottom());
        continue;
      }
      std::vector<std::size_t> children(d->size());
      std::iota(children.begin(), children.end(), std::size_t{0});
      std::shuffle(children.begin(), children.end(), rng);
      children.resize(pick(rng, 0, children.size()));
      Rule r{false, periodic[q] ? period_power() : random_word(rng, out, wl), {}};
      for (std::size_t child : children) {
        std::vector<StateId> options;
        for (StateId s = 0; s < nq; ++s)
          if (iota[s] == (*d)[child] && (!periodic[q] || periodic[s])) options.push_back(s);
        if (options.empty()) continue;
        const StateId s = options[pick(rng, 0, options.size() - 1)];
        Word after = periodic[q] ? tail[s].inverse() * period_power() : random_word(rng, out, wl);
        r.calls.push_back(Call{s, child, std::move(after)});
      }
      if (periodic[q]) (r.calls.empty() ? r.head : r.calls.back().after) *= tail[q];
      m.set_rule(q, f, std::move(r));
    }
  if (chance(rng, 0.05))
    m.set_axiom(Axiom{random_word(rng, out, wl), std::nullopt, {}});
  else
    m.set_axiom(Axiom{random_word(rng, out, 2), StateId{0}, random_word(rng, out, 2)});
  return inst;
}

Verdict brute_force_equiv(const Transducer& m, const Transducer& m2, const Dta& b, std::size_t max_depth) {
  Verdict v;
  if (dta_reduce(b).empty_language) {
    v.outcome = Outcome::EmptyDomain;
    return v;
  }
  if (auto t = search_witness(m, m2, b, max_depth)) {
    v.outcome = Outcome::Inequivalent;
    v.left = eval(m, *t);
    v.right = eval(m2, *t);
    v.witness = std::move(t);
    return v;
  }
  v.depth_bounded = true;
  v.note = "no witness among trees of depth < " + std::to_string(max_depth);
  return v;
}

namespace {

struct Site {
  StateId q;
  SymbolId f;
  std::size_t call;  // position within the rule
};

}  // namespace

Transducer mutate_preserving(const Transducer& m, const Dta& b, std::uint64_t seed) {
  Rng rng(seed);
  auto red = dta_reduce(b);
  if (red.empty_language) return m;
  auto ct = make_compatible(m, red.dta);
  if (ct.transducer.axiom().is_constant()) return m;
  Transducer t = ct.transducer;
  const Analysis a = analyze(t, red.dta, ct.iota);
  auto witness = min_tree_witnesses(t, red.dta, ct.iota);

  std::vector<Site> spans;
  std::vector<Site> trivial;
  std::vector<Site> words;
  for (StateId q = 0; q < t.state_count(); ++q)
    for (SymbolId f = 0; f < t.input().size(); ++f) {
      const Rule& r = t.rule(q, f);
      if (r.bottom) continue;
      words.push_back({q, f, 0});
      const auto ivs = periodic_intervals(r, a);
      for (std::size_t i = 0; i < ivs.size(); ++i) spans.push_back({q, f, i});
      for (std::size_t k = 0; k < r.calls.size(); ++k)
        if (a[r.calls[k].state].is_singleton()) trivial.push_back({q, f, k});
    }

  std::vector<int> kinds;
  if (!spans.empty()) kinds.push_back(0);
  if (!trivial.empty()) kinds.push_back(1);
  if (kinds.empty()) {
    // A cancelling pair w w- is absorbed by reduction: the rule is unchanged.
    if (words.empty()) return m;
    const Site s = words[pick(rng, 0, words.size() - 1)];
    Rule& r = t.rule(s.q, s.f);
    const Word w = nonempty_word(rng, t.output(), 2);
    r.head = r.head * w * w.inverse();
    return t;
  }

  if (kinds[pick(rng, 0, kinds.size() - 1)] == 0) {
    const Site s = spans[pick(rng, 0, spans.size() - 1)];
    const Rule& r = t.rule(s.q, s.f);
    const Interval iv = periodic_intervals(r, a)[s.call];
    auto d = periodic_decompose(segment_of(r, iv), a, witness);
    if (!d) throw InvariantViolation("periodic interval without a decomposition");
    std::vector<std::size_t> order(iv.last - iv.first + 1);
    std::iota(order.begin(), order.end(), std::size_t{0});
    while (std::is_sorted(order.begin(), order.end())) std::shuffle(order.begin(), order.end(), rng);
    t.set_rule(s.q, s.f, permute_interval(r, iv, *d, order));
    return t;
  }

  // u s(x) u'  ->  u z s(x) v- z- v u'  where s always outputs v.
  const Site s = trivial[pick(rng, 0, trivial.size() - 1)];
  Rule& r = t.rule(s.q, s.f);
  const Word& v = a[r.calls[s.call].state].value();
  const Word z = nonempty_word(rng, t.output(), 2);
  Word& before = s.call == 0 ? r.head : r.calls[s.call - 1].after;
  before = before * z;
  r.calls[s.call].after = v.inverse() * z.inverse() * v * r.calls[s.call].after;
  return t;
}

Transducer mutate_breaking(const Transducer& m, std::uint64_t seed) {
  Rng rng(seed);
  Transducer t = m;
  const std::vector<char> gens(m.output().generators().begin(), m.output().generators().end());
  if (gens.empty()) throw UsageError("output alphabet is empty");
  const Word g = Word::letter(gens[pick(rng, 0, gens.size() - 1)]);

  std::vector<std::pair<StateId, SymbolId>> live;
  for (StateId q = 0; q < t.state_count(); ++q)
    for (SymbolId f = 0; f < t.input().size(); ++f)
      if (!t.rule(q, f).bottom) live.emplace_back(q, f);
  if (live.empty()) {
    Axiom ax = t.axiom();
    ax.head *= g;
    t.set_axiom(std::move(ax));
    return t;
  }
  auto [q, f] = live[pick(rng, 0, live.size() - 1)];
  Rule& r = t.rule(q, f);
  const std::size_t slot = pick(rng, 0, r.calls.size());
  Word& w = slot == 0 ? r.head : r.calls[slot - 1].after;
  w *= g;
  return t;
}

}  // namespace ltg
