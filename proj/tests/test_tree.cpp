#include <doctest.h>

#include <set>

#include "ltg/error.hpp"
#include "ltg/text_format.hpp"
#include "oracles.hpp"

using namespace ltg;

namespace {

const char* kB = R"(alphabet f:2 g:1 k:0
dta start h0
delta h0 f -> h1 h1
delta h1 g -> h1
delta h1 k ->
)";

std::vector<std::string> names(const std::vector<Tree>& ts, const RankedAlphabet& s) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(to_string(t, s));
  return out;
}

}  // namespace

TEST_CASE("tree syntax and depth") {
  RankedAlphabet s;
  s.add("f", 2);
  s.add("g", 1);
  s.add("k", 0);
  const Tree t = parse_tree("f(g(k),k)", s);
  CHECK(to_string(t, s) == "f(g(k),k)");
  CHECK(t.depth() == 2);
  CHECK(t.size() == 4);
  CHECK(parse_tree("k", s).depth() == 0);
  CHECK(parse_tree(" f( k , k() ) ", s) == parse_tree("f(k,k)", s));
  CHECK_THROWS_AS(parse_tree("f(k)", s), InvalidInput);
  CHECK_THROWS_AS(parse_tree("g(k", s), InvalidInput);
  CHECK_THROWS_AS(parse_tree("x", s), InvalidInput);
  CHECK_THROWS_AS(parse_tree("k k", s), InvalidInput);
}

TEST_CASE("dta_reduce") {
  const Dta b = parse_dta(kB);
  auto r = dta_reduce(b);
  CHECK(!r.empty_language);
  CHECK(r.dta.state_count() == 2);
  CHECK(format_dta(r.dta) == format_dta(b));

  // h2 never reaches a leaf, h3 is unreachable
  const Dta b2 = parse_dta(R"(alphabet f:2 g:1 k:0
dta start h0
delta h0 f -> h1 h1
delta h0 g -> h2
delta h2 g -> h2
delta h1 k ->
delta h3 k ->
)");
  auto r2 = dta_reduce(b2);
  CHECK(!r2.empty_language);
  CHECK(r2.dta.state_count() == 2);
  CHECK(!r2.state_map[*b2.find_state("h2")]);
  CHECK(!r2.state_map[*b2.find_state("h3")]);
  CHECK(!r2.dta.delta(*r2.state_map[*b2.find_state("h0")], 1));

  auto r3 = dta_reduce(parse_dta("alphabet g:1 k:0\ndta start h0\ndelta h0 g -> h0\n"));
  CHECK(r3.empty_language);
}

TEST_CASE("dom_member and min_tree") {
  const Dta b = parse_dta(kB);
  const auto& s = b.alphabet();
  CHECK(dom_member(b, 0, parse_tree("f(k,k)", s)));
  CHECK(!dom_member(b, 0, parse_tree("g(k)", s)));
  CHECK(dom_member(b, 1, parse_tree("k", s)));
  CHECK(to_string(min_tree(b, 1), s) == "k");
  CHECK(to_string(min_tree(b, 0), s) == "f(k,k)");
  const Dta single = parse_dta("alphabet k:0\ndta start h\ndelta h k ->\n");
  CHECK(to_string(min_tree(single, 0), single.alphabet()) == "k");
  const Dta empty = parse_dta("alphabet g:1 k:0\ndta start h0\ndelta h0 g -> h0\n");
  CHECK_THROWS_AS(min_tree(empty, 0), DomainError);
}

TEST_CASE("enum_trees") {
  const Dta b = parse_dta(kB);
  const auto& s = b.alphabet();
  CHECK(names(enum_trees(b, 1, 2), s) == std::vector<std::string>{"k", "g(k)"});
  CHECK(enum_trees(b, 0, 1).empty());
  CHECK(names(enum_trees(b, 0, 2), s) == std::vector<std::string>{"f(k,k)"});
  CHECK(enum_trees(b, 0, 4).size() == 9);
}

TEST_CASE("enumeration matches the naive oracle") {
  const Dta b = parse_dta(R"(alphabet f:2 g:1 h:2 k:0
dta start h0
delta h0 f -> h1 h0
delta h0 k ->
delta h1 g -> h0
delta h1 h -> h1 h1
delta h1 k ->
)");
  for (DtaState h = 0; h < b.state_count(); ++h)
    for (std::size_t d = 0; d <= 4; ++d) {
      const auto got = enum_trees(b, h, d);
      const auto want = oracle::domain_trees(b, h, d);
      std::set<std::string> gs, ws;
      for (const auto& t : got) {
        REQUIRE(dom_member(b, h, t));
        REQUIRE(t.depth() < d);
        gs.insert(to_string(t, b.alphabet()));
      }
      for (const auto& t : want) ws.insert(to_string(t, b.alphabet()));
      REQUIRE(gs.size() == got.size());
      REQUIRE(gs == ws);
      for (std::size_t i = 1; i < got.size(); ++i) REQUIRE(got[i - 1].depth() <= got[i].depth());

      std::vector<Tree> streamed;
      for_each_tree(b, h, d, [&](const Tree& t) {
        streamed.push_back(t);
        return true;
      });
      REQUIRE(streamed == got);
    }
}

TEST_CASE("reduction preserves membership") {
  const Dta b = parse_dta(R"(alphabet f:2 g:1 k:0
dta start h0
delta h0 f -> h1 h2
delta h0 g -> h3
delta h1 g -> h1
delta h1 k ->
delta h2 f -> h2 h2
delta h3 k ->
delta h4 k ->
)");
  auto r = dta_reduce(b);
  REQUIRE(!r.empty_language);
  for (const auto& t : oracle::all_trees(b.alphabet(), 4)) REQUIRE(accepts(b, t) == accepts(r.dta, t));
}
