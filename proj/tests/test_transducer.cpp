#include <doctest.h>

#include "ltg/error.hpp"
#include "ltg/harness.hpp"
#include "ltg/text_format.hpp"
#include "oracles.hpp"

using namespace ltg;

namespace {

Transducer M() { return parse_transducer(read_file(LTG_DATA_DIR "/M.lt"), "M.lt"); }
Dta B() { return parse_dta(read_file(LTG_DATA_DIR "/B.dta"), "B.dta"); }
Word w(const char* s) { return parse_word(s); }

}  // namespace

TEST_CASE("eval on the running example") {
  const Transducer m = M();
  const auto& s = m.input();
  CHECK(eval(m, parse_tree("f(k,k)", s)) == w("abab"));
  CHECK(eval(m, parse_tree("f(g(k),k)", s)) == w("ababab"));
  CHECK(eval(m, parse_tree("g(g(k))", s)).empty());

  Transducer c(s, Alphabet("ab"));
  c.set_axiom(Axiom{w("ab"), std::nullopt, {}});
  CHECK(eval(c, parse_tree("f(k,g(k))", s)) == w("ab"));
}

TEST_CASE("BOTTOM reports the subtree") {
  Transducer m = M();
  m.rule(*m.find_state("q1"), *m.input().find("g")) = Rule::make_bottom();
  try {
    eval(m, parse_tree("f(k,g(k))", m.input()));
    FAIL("expected OffDomainError");
  } catch (const OffDomainError& e) {
    CHECK(e.subtree() == "g(k)");
  }
}

TEST_CASE("validate") {
  Transducer m = M();
  m.rule(0, 0).calls[0].child = 0;  // both calls read x1
  CHECK_THROWS_AS(m.validate(), InvalidInput);
  Transducer partial(m.input(), m.output());
  partial.add_state("q");
  partial.set_axiom(Axiom{{}, StateId{0}, {}});
  CHECK_THROWS_AS(partial.validate(), InvalidInput);
}

TEST_CASE("compatibility checker") {
  const Dta b = B();
  const auto ct = make_compatible(M(), b);
  CHECK(check_compatible(ct.transducer, b, ct.iota));

  CompatibleMap wrong = ct.iota;
  wrong.dta_state[0] = 1;
  CHECK(!check_compatible(ct.transducer, b, wrong));

  Transducer t = ct.transducer;
  t.rule(*t.find_state("q1"), *t.input().find("k")) = Rule::make_bottom();
  CHECK(!compatibility_violations(t, b, ct.iota).empty());

  Transducer c(b.alphabet(), Alphabet("ab"));
  c.set_axiom(Axiom{w("a"), std::nullopt, {}});
  CHECK(check_compatible(c, b, {}));
}

TEST_CASE("eval matches the naive semantics and never hits BOTTOM on the domain") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenParams p;
    p.seed = seed;
    const Instance inst = gen_instance(p);
    REQUIRE(check_compatible(inst.transducer, inst.dta, inst.iota));
    for (const auto& t : enum_trees(inst.dta, inst.dta.start(), 4))
      REQUIRE(oracle::from(eval(inst.transducer, t)) == oracle::eval(inst.transducer, t));
  }
}

TEST_CASE("deep inputs hit the depth guard") {
  const Transducer m = M();
  Tree t{*m.input().find("k"), {}};
  for (std::size_t i = 0; i < kMaxEvalDepth + 5; ++i) t = Tree{*m.input().find("g"), {std::move(t)}};
  CHECK_THROWS_AS(eval(m, t), ResourceError);
  // release the deep chain iteratively
  while (!t.children.empty()) {
    Tree c = std::move(t.children[0]);
    t = std::move(c);
  }
}
