#include <doctest.h>

#include <random>

#include "ltg/error.hpp"
#include "ltg/group.hpp"
#include "oracles.hpp"

using namespace ltg;

namespace {

Word w(const char* s) { return parse_word(s); }

Word random_word(std::mt19937_64& rng, std::size_t max_len, const std::string& gens) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), g(0, gens.size() - 1);
  std::bernoulli_distribution neg(0.4);
  std::vector<Letter> raw;
  for (std::size_t i = len(rng); i > 0; --i) raw.push_back({gens[g(rng)], neg(rng)});
  return Word::reduce(raw);
}

}  // namespace

TEST_CASE("token syntax") {
  CHECK(w("ab-c").str() == "ab-c");
  CHECK(w("_").empty());
  CHECK(w("_").str() == "_");
  CHECK(w("a-").size() == 1);
  CHECK_THROWS_AS(parse_word("c", Alphabet("ab")), InvalidInput);
  CHECK_THROWS_AS(parse_word("-a"), InvalidInput);
  CHECK_THROWS_AS(parse_word(""), InvalidInput);
}

TEST_CASE("reduce") {
  CHECK(w("abc-cb-a") == w("aa"));
  CHECK(Word::reduce({}).empty());
  CHECK(w("ab-ba-c") == w("c"));
  std::vector<Letter> raw{{'a', false}, {'z', false}};
  CHECK_THROWS_AS(reduce(raw, Alphabet("ab")), InvalidInput);
}

TEST_CASE("concat and invert") {
  CHECK(concat(w("abc-"), w("cb-a")) == w("aa"));
  CHECK(concat(w("ab"), w("_")) == w("ab"));
  CHECK(concat(w("ab"), w("b-a-")).empty());
  CHECK(invert(w("abc-")) == w("cb-a-"));
  CHECK(invert(w("_")).empty());
  CHECK(invert(w("a")) == w("a-"));
}

TEST_CASE("cyclic_reduce") {
  auto d = cyclic_reduce(w("b-ab"));
  CHECK(d.conjugator == w("b"));
  CHECK(d.core == w("a"));
  d = cyclic_reduce(w("aba-"));
  CHECK(d.conjugator == w("a-"));
  CHECK(d.core == w("b"));
  d = cyclic_reduce(w("ab"));
  CHECK(d.conjugator.empty());
  CHECK(d.core == w("ab"));
  d = cyclic_reduce(Word{});
  CHECK(d.core.empty());
}

TEST_CASE("primitive_root") {
  CHECK(primitive_root(w("abab")) == w("ab"));
  CHECK(primitive_root(w("a")) == w("a"));
  CHECK(primitive_root(w("b-ababb")) == w("b-abb"));
  CHECK_THROWS_AS(primitive_root(Word{}), DomainError);
}

TEST_CASE("solve_power") {
  CHECK(solve_power(w("ababab"), w("ab")) == 3);
  CHECK(solve_power(Word{}, w("ab")) == 0);
  CHECK(!solve_power(w("a"), w("b")));
  CHECK(solve_power(w("b-a-b-a-"), w("ab")) == -2);
  CHECK_THROWS_AS(solve_power(w("a"), Word{}), DomainError);
}

TEST_CASE("canonical_coset") {
  auto c = canonical_coset(w("ab"), w("ab"));
  CHECK(c.rep.empty());
  CHECK(c.period == w("ab"));
  c = canonical_coset(w("a"), w("ba"));
  CHECK(c.rep == w("a"));
  CHECK(c.period == w("ba"));
  c = canonical_coset(w("aab"), w("ab"));
  CHECK(c.rep == w("a"));
  CHECK(c.period == w("ab"));
  // the period's sign is normalized
  CHECK(canonical_coset(w("_"), w("b-a-")).period == w("ab"));
  CHECK_THROWS_AS(canonical_coset(w("a"), Word{}), DomainError);
}

TEST_CASE("associativity and inverses, randomized") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Word x = random_word(rng, 12, "abc"), y = random_word(rng, 12, "abc"), z = random_word(rng, 12, "abc");
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE((x * x.inverse()).empty());
    REQUIRE(x.inverse().inverse() == x);
    REQUIRE(oracle::from(x * y) == oracle::mul(oracle::from(x), oracle::from(y)));
    REQUIRE(Word::reduce(x.letters()) == x);
  }
}

TEST_CASE("primitive roots against brute force") {
  const auto all = oracle::reduced_words(4);
  for (const auto& s : oracle::reduced_words(8)) {
    if (s.empty()) continue;
    const Word x = oracle::to_word(s);
    const Word p = primitive_root(x);
    auto k = solve_power(x, p);
    REQUIRE(k);
    REQUIRE(*k >= 1);
    REQUIRE(static_cast<std::size_t>(*k) <= x.size());
    // no strictly shorter root
    if (s.size() <= 6)
      for (const auto& q : all) {
        if (q.empty() || q.size() >= p.size()) continue;
        for (long m = 1; m <= static_cast<long>(s.size()); ++m) REQUIRE(oracle::pow(q, m) != s);
      }
    REQUIRE(is_primitive(p) == oracle::is_primitive(oracle::from(p)));
  }
}

TEST_CASE("coset canonicalization is invariant under shifts") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Word g = random_word(rng, 6, "ab");
    Word p = random_word(rng, 4, "ab");
    if (p.empty()) continue;
    const Coset c = canonical_coset(g, p);
    for (int k = -3; k <= 3; ++k) REQUIRE(canonical_coset(g * power(p, k), p) == c);
    REQUIRE(c.contains(g));
    REQUIRE(oracle::in_subgroup(oracle::from(c.rep.inverse() * g), oracle::from(c.period)));
  }
}

TEST_CASE("conjugation property for primitive words") {
  std::size_t checked = 0;
  const auto words = oracle::reduced_words(4);
  for (const auto& ys : words) {
    if (ys.empty() || !oracle::is_primitive(ys)) continue;
    const Word y = oracle::to_word(ys);
    for (const auto& bs : words) {
      const Word beta = oracle::to_word(bs);
      for (int n = -3; n <= 3; ++n) {
        const Word lhs = beta * power(y, n) * beta.inverse();
        for (int m = -3; m <= 3; ++m)
          if (lhs == power(y, m)) {
            REQUIRE(m == n);
            if (n != 0) REQUIRE(in_cyclic_subgroup(beta, y));
            ++checked;
          }
      }
    }
  }
  CHECK(checked > 0);
}
