// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Reference values come from the string oracles in oracles.hpp wherever the
// library is not itself the object under test.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "ltg/harness.hpp"
#include "ltg/slp.hpp"
#include "ltg/text_format.hpp"
#include "oracles.hpp"

using namespace ltg;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitExample = 1.0;
constexpr double kLimitDifferential = 60.0;
constexpr double kLimitConjugation = 30.0;
constexpr double kLimitAbstraction = 10.0;
constexpr double kLimitSlp = 10.0;

constexpr std::size_t kDifferentialInstances = 200;
constexpr std::size_t kOracleDepth = 4;
constexpr std::size_t kLanguagePairs = 1000;
constexpr std::size_t kFixpointInstances = 50;
constexpr std::size_t kFixpointRounds = 6;
constexpr std::size_t kSlpDags = 10000;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool all_passed = true;

void report(int n, bool ok, const std::string& detail, double secs) {
  all_passed = all_passed && ok;
  char t[32];
  std::snprintf(t, sizeof t, "%.3fs", secs);
  std::cout << "CRITERION " << n << ' ' << (ok ? "PASS" : "FAIL") << "  " << detail << "  [" << t << "]\n";
}

void info(const std::string& line) { std::cout << "    " << line << '\n'; }

Transducer load(const char* name) {
  return parse_transducer(read_file(std::string(LTG_DATA_DIR "/") + name), name);
}
Dta load_dta(const char* name) { return parse_dta(read_file(std::string(LTG_DATA_DIR "/") + name), name); }

// --- 1 --------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  const Dta b = load_dta("B.dta");
  const auto ct = make_compatible(load("M.lt"), b);
  const Analysis a = analyze(ct.transducer, b, ct.iota);
  struct Expect {
    const char* state;
    const char* rep;
    const char* period;
  };
  const Expect expect[] = {{"q1", "a", "ba"}, {"q2", "", "ab"}, {"q0", "", "ab"}};
  bool ok = ct.transducer.state_count() == 3;
  std::string detail;
  for (const auto& e : expect) {
    const auto q = ct.transducer.find_state(e.state);
    if (!q) {
      ok = false;
      continue;
    }
    const AbstractLang& v = a[*q];
    const bool match = v.is_periodic() && oracle::from(v.coset().rep) == e.rep &&
                       oracle::from(v.coset().period) == e.period;
    ok = ok && match;
    detail += std::string(e.state) + "=" + v.str() + "; ";
  }
  const double secs = since(t0);
  report(1, ok && secs < kLimitExample, detail, secs);
}

// --- 2 --------------------------------------------------------------------

void criterion2() {
  const auto t0 = Clock::now();
  const Dta b = load_dta("B.dta");
  const Transducer m = load("M.lt");
  const auto o = order_transducer(m, b);
  const Transducer& t = o.transducer;
  bool order_ok = false;
  if (!o.empty_domain && t.axiom().state) {
    const Rule& f = t.rule(*t.axiom().state, *t.input().find("f"));
    order_ok = f.calls.size() == 2 && t.state_name(f.calls[0].state) == "q2" && f.calls[0].child == 0 &&
               t.state_name(f.calls[1].state) == "q1" && f.calls[1].child == 1;
  }
  const auto trees = oracle::domain_trees(b, b.start(), 4);
  std::size_t agree = 0;
  for (const auto& tr : trees) agree += oracle::eval(t, tr) == oracle::eval(m, tr);
  const double secs = since(t0);
  std::ostringstream d;
  d << "f-rule order " << (order_ok ? "q2(x1) q1(x2)" : "wrong") << "; eval agrees on " << agree << "/"
    << trees.size() << " trees of depth < 4";
  // L(B) below depth 4 is f(g^i k, g^j k) with i, j <= 2
  report(2, order_ok && agree == trees.size() && trees.size() == 9 && secs < kLimitExample, d.str(), secs);
}

// --- 3 --------------------------------------------------------------------

void criterion3() {
  const Dta b = load_dta("B.dta");
  const Transducer m = load("M.lt");
  auto t0 = Clock::now();
  const Verdict self = decide_equiv(m, m, b);
  const double s1 = since(t0);
  t0 = Clock::now();
  const Transducer hand = load("Mhand.lt");
  const Verdict reordered = decide_equiv(m, hand, b);
  const double s2 = since(t0);
  const bool ok1 = self.outcome == Outcome::Equivalent && s1 < kLimitExample;
  const bool ok2 = reordered.outcome == Outcome::Equivalent && s2 < kLimitExample;
  std::ostringstream d;
  d << "self: " << outcome_name(self.outcome) << "; hand-reordered `ab q2:1 a- q1:2 _`: "
    << outcome_name(reordered.outcome);
  report(3, ok1 && ok2, d.str(), s1 + s2);
  if (reordered.witness) {
    const std::string l = oracle::eval(m, *reordered.witness), r = oracle::eval(hand, *reordered.witness);
    info("hand-reordered rule: witness " + to_string(*reordered.witness, m.input()) + " gives " + l + " vs " + r +
         " (oracle eval, uppercase = inverse)");
  }
  t0 = Clock::now();
  const Verdict derived = decide_equiv(m, load("Mreordered.lt"), b);
  std::ostringstream e;
  e << "reordering built by the normalizer, `ab q2:1 b-a- q1:2 b`: " << outcome_name(derived.outcome) << " ["
    << since(t0) << "s]";
  info(e.str());
}

// --- 4 --------------------------------------------------------------------

void criterion4() {
  const auto t0 = Clock::now();
  std::size_t pairs = 0, agree = 0, beyond_depth = 0, breaking_inequivalent = 0;
  std::vector<std::string> failures;
  for (std::uint64_t seed = 1; seed <= kDifferentialInstances; ++seed) {
    GenParams p;
    p.seed = seed;
    const Instance inst = gen_instance(p);
    const Transducer variants[2] = {mutate_preserving(inst.transducer, inst.dta, seed),
                                    mutate_breaking(inst.transducer, seed)};
    for (int k = 0; k < 2; ++k) {
      ++pairs;
      const Verdict d = decide_equiv(inst.transducer, variants[k], inst.dta);
      const Verdict o = brute_force_equiv(inst.transducer, variants[k], inst.dta, kOracleDepth);
      bool ok = false;
      if (d.outcome == Outcome::Inequivalent) {
        // the witness is checked by the independent membership test and evaluator
        ok = d.witness && oracle::in_dom(inst.dta, inst.dta.start(), *d.witness) &&
             oracle::eval(inst.transducer, *d.witness) != oracle::eval(variants[k], *d.witness);
        if (ok && o.outcome == Outcome::Equivalent) ++beyond_depth;
        ok = ok && o.outcome != Outcome::EmptyDomain;
      } else {
        ok = d.outcome == o.outcome;
      }
      if (k == 1 && d.outcome == Outcome::Inequivalent) ++breaking_inequivalent;
      if (ok)
        ++agree;
      else if (failures.size() < 5)
        failures.push_back("seed " + std::to_string(seed) + (k ? " breaking" : " preserving") + ": decide " +
                           outcome_name(d.outcome) + ", oracle " + outcome_name(o.outcome));
    }
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << agree << "/" << pairs << " pairs agree; " << beyond_depth << " witnesses deeper than the oracle; "
    << breaking_inequivalent << "/" << kDifferentialInstances << " breaking mutations inequivalent";
  report(4, agree == pairs && secs < kLimitDifferential, d.str(), secs);
  for (const auto& f : failures) info(f);
}

// --- 5 --------------------------------------------------------------------

void criterion5() {
  const auto t0 = Clock::now();
  std::vector<std::string> ys, betas;
  for (const auto& w : oracle::reduced_words(4)) {
    betas.push_back(w);
    if (!w.empty() && oracle::is_primitive(w)) ys.push_back(w);
  }
  std::size_t checked = 0, hits = 0, violations = 0, zero_exponent = 0;
  std::string example;
  for (const auto& ys_s : ys) {
    const Word y = oracle::to_word(ys_s);
    Word pw[7];
    for (int e = -3; e <= 3; ++e) pw[e + 3] = power(y, e);
    for (const auto& bs : betas) {
      const Word beta = oracle::to_word(bs);
      const bool beta_in = oracle::in_subgroup(bs, ys_s);
      for (int n = -3; n <= 3; ++n) {
        const Word conj = beta * pw[n + 3] * beta.inverse();
        for (int m = -3; m <= 3; ++m) {
          ++checked;
          if (conj != pw[m + 3]) continue;
          ++hits;
          if (m == n && beta_in) continue;
          ++violations;
          zero_exponent += m == 0 && n == 0;
          if (example.empty())
            example = "y=" + ys_s + " beta=" + bs + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        }
      }
    }
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << ys.size() << " primitive y, " << betas.size() << " beta, " << checked << " (y,beta,m,n); " << hits
    << " solutions; " << violations << " violations";
  report(5, violations == 0 && secs < kLimitConjugation, d.str(), secs);
  if (violations) {
    info("first violation: " + example + " (uppercase = inverse)");
    info(std::to_string(zero_exponent) + " of the violations have m = n = 0, where beta.beta- = y^0 for every beta; " +
         std::to_string(violations - zero_exponent) + " have n != 0");
  }
}

// --- 6 --------------------------------------------------------------------

std::string random_word(std::mt19937_64& rng, std::size_t max_len) {
  static const std::string letters = "abAB";
  std::string s;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s += letters[rng() % 4];
  return oracle::reduce(s);
}

// Random finite language; periodic shapes g.p^i and p^i.g are over-sampled so
// that all four lattice levels show up on both sides of a product.
std::set<std::string> random_language(std::mt19937_64& rng) {
  std::set<std::string> out;
  const std::size_t size = rng() % 5;
  std::string p = random_word(rng, 3);
  if (p.empty()) p = "ab";
  const std::string g = random_word(rng, 3);
  const unsigned shape = rng() % 3;
  for (std::size_t i = 0; i < size; ++i) {
    const long e = static_cast<long>(rng() % 7) - 3;
    if (shape == 0)
      out.insert(random_word(rng, 4));
    else if (shape == 1)
      out.insert(oracle::mul(g, oracle::pow(p, e)));
    else
      out.insert(oracle::mul(oracle::pow(p, e), g));
  }
  return out;
}

AbstractLang alpha(const std::set<std::string>& lang) {
  std::vector<Word> ws;
  for (const auto& s : lang) ws.push_back(oracle::to_word(s));
  return alpha_of(ws);
}

void criterion6() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240607);
  std::size_t violations = 0, periodic_products = 0, oracle_mismatch = 0;
  for (std::size_t i = 0; i < kLanguagePairs; ++i) {
    const auto l1 = random_language(rng), l2 = random_language(rng);
    std::set<std::string> uni = l1, prod;
    uni.insert(l2.begin(), l2.end());
    for (const auto& x : l1)
      for (const auto& y : l2) prod.insert(oracle::mul(x, y));
    const AbstractLang a1 = alpha(l1), a2 = alpha(l2), au = alpha(uni), ap = alpha(prod);
    violations += !(au == alpha_join(a1, a2));
    violations += !(ap == alpha_star(a1, a2));
    oracle_mismatch += !oracle::abstraction_matches(a1, l1) + !oracle::abstraction_matches(au, uni) +
                       !oracle::abstraction_matches(ap, prod);
    periodic_products += ap.is_periodic();
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << kLanguagePairs << " pairs; " << violations << " join/star violations; " << oracle_mismatch
    << " abstractions differing from the oracle; " << periodic_products << " periodic products";
  report(6, violations == 0 && oracle_mismatch == 0 && secs < kLimitAbstraction, d.str(), secs);
}

// --- 7 --------------------------------------------------------------------

void criterion7() {
  const auto t0 = Clock::now();
  std::size_t violations = 0, bound_violations = 0, max_rounds = 0, checks = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= kFixpointInstances; ++seed) {
    GenParams p;
    p.seed = seed;
    const Instance inst = gen_instance(p);
    const auto iters = analyze_iterates(inst.transducer, inst.dta, inst.iota, kFixpointRounds);
    const auto sets = oracle::output_sets(inst.transducer, inst.dta, inst.iota, kFixpointRounds, true);
    for (std::size_t i = 0; i <= kFixpointRounds; ++i)
      for (StateId q = 0; q < inst.transducer.state_count(); ++q) {
        ++checks;
        if (oracle::abstraction_matches(iters[i][q], sets[i][q])) continue;
        ++violations;
        if (first.empty())
          first = "seed " + std::to_string(seed) + " state " + inst.transducer.state_name(q) + " round " +
                  std::to_string(i) + ": " + iters[i][q].str();
      }
    const Analysis a = analyze(inst.transducer, inst.dta, inst.iota);
    max_rounds = std::max(max_rounds, a.rounds);
    bound_violations += a.rounds > 3 * inst.transducer.state_count();
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << checks << " (instance, state, round) checks; " << violations << " mismatches; " << bound_violations
    << " instances over 3N rounds (max " << max_rounds << ")";
  report(7, violations == 0 && bound_violations == 0, d.str(), secs);
  if (!first.empty()) info(first);
}

// --- 8 --------------------------------------------------------------------

void criterion8() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  constexpr std::size_t kMaxLetters = 4096;
  std::size_t violations = 0, equal_pairs = 0, comparisons = 0;
  for (std::size_t dag = 0; dag < kSlpDags; ++dag) {
    SlpStore s;
    std::vector<SlpHandle> nodes;
    std::vector<std::string> raw;  // unreduced denotation, as an oracle string
    std::vector<Word> words;       // the same, by explicit Word arithmetic
    auto add = [&](SlpHandle h, std::string r, Word w) {
      nodes.push_back(h);
      raw.push_back(std::move(r));
      words.push_back(std::move(w));
    };
    const std::size_t count = 4 + rng() % 20;
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned kind = nodes.size() < 2 ? 0 : rng() % 6;
      const std::size_t x = nodes.empty() ? 0 : rng() % nodes.size(), y = nodes.empty() ? 0 : rng() % nodes.size();
      if (kind == 0 || (kind <= 2 && raw[x].size() + raw[y].size() > kMaxLetters)) {
        const std::string w = random_word(rng, 5);
        add(s.make(oracle::to_word(w)), w, oracle::to_word(w));
      } else if (kind <= 2) {
        add(s.concat(nodes[x], nodes[y]), raw[x] + raw[y], words[x] * words[y]);
      } else if (kind == 3) {
        add(s.invert(nodes[x]), oracle::inv(raw[x]), words[x].inverse());
      } else if (kind == 4 && raw[x].size() * 2 <= kMaxLetters) {
        // x.x- denotes the identity
        add(s.concat(nodes[x], s.invert(nodes[x])), raw[x] + oracle::inv(raw[x]), words[x] * words[x].inverse());
      } else {
        // (x.y)- = y-.x-
        const SlpHandle lhs = s.invert(s.concat(nodes[x], nodes[y]));
        const SlpHandle rhs = s.concat(s.invert(nodes[y]), s.invert(nodes[x]));
        const Word xy = words[x] * words[y];
        const Word yx = words[y].inverse() * words[x].inverse();
        add(lhs, oracle::inv(raw[x] + raw[y]), xy.inverse());
        add(rhs, oracle::inv(raw[y]) + oracle::inv(raw[x]), yx);
      }
    }
    std::vector<std::string> reduced(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      reduced[i] = oracle::reduce(raw[i]);
      const Word e = slp_expand(s, nodes[i]);
      violations += oracle::from(e) != reduced[i] || e != words[i] || s.length(nodes[i]) != raw[i].size();
    }
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t i = rng() % nodes.size();
      const std::size_t j = k < 4 ? nodes.size() - 1 - k % nodes.size() : rng() % nodes.size();
      const bool truth = words[i] == words[j];
      ++comparisons;
      equal_pairs += truth;
      violations += slp_equal(s, nodes[i], nodes[j]) != truth || truth != (reduced[i] == reduced[j]);
    }
  }
  const double secs = since(t0);
  std::ostringstream d;
  d << kSlpDags << " DAGs, " << comparisons << " equality queries (" << equal_pairs << " equal); " << violations
    << " violations";
  report(8, violations == 0 && secs < kLimitSlp, d.str(), secs);
}

}  // namespace

int main() {
  const std::pair<int, void (*)()> criteria[] = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                                 {4, criterion4}, {5, criterion5}, {6, criterion6},
                                                 {7, criterion7}, {8, criterion8}};
  for (const auto& [n, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      report(n, false, std::string("exception: ") + e.what(), 0);
    }
  }
  std::cout << (all_passed ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return all_passed ? 0 : 1;
}
