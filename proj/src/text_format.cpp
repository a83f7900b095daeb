#include "ltg/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ltg/error.hpp"

namespace ltg {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, const Line& line, const std::string& token, const std::string& msg) {
  throw InvalidInput(source + ":" + std::to_string(line.number) + ": " + msg + " (token '" + token + "')");
}

std::pair<std::string, std::size_t> split_colon(const std::string& source, const Line& line, const std::string& tok) {
  auto colon = tok.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
    fail(source, line, tok, "expected name:number");
  std::size_t n = 0;
  const char* first = tok.data() + colon + 1;
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc{} || ptr != last) fail(source, line, tok, "expected a number after ':'");
  return {tok.substr(0, colon), n};
}

RankedAlphabet parse_alphabet(const std::string& source, const Line& line) {
  RankedAlphabet sigma;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    auto [name, rank] = split_colon(source, line, line.tokens[i]);
    if (sigma.find(name)) fail(source, line, line.tokens[i], "symbol declared twice");
    sigma.add(name, rank);
  }
  return sigma;
}

Word word_at(const std::string& source, const Line& line, const std::string& tok, const Alphabet& out) {
  try {
    return parse_word(tok, out);
  } catch (const InvalidInput& e) {
    fail(source, line, tok, e.what());
  }
}

bool is_call(const std::string& tok) { return tok.find(':') != std::string::npos; }

const Line* single(const std::vector<Line>& lines, const std::string& keyword, const std::string& source) {
  const Line* found = nullptr;
  for (const auto& l : lines)
    if (l.tokens[0] == keyword) {
      if (found) fail(source, l, keyword, "duplicate '" + keyword + "' line");
      found = &l;
    }
  return found;
}

}  // namespace

Transducer parse_transducer(std::string_view text, const std::string& source) {
  const auto lines = lex(text);
  for (const auto& l : lines) {
    const auto& k = l.tokens[0];
    if (k != "alphabet" && k != "output" && k != "axiom" && k != "rule") fail(source, l, k, "unknown keyword");
  }
  const Line* alpha = single(lines, "alphabet", source);
  const Line* output = single(lines, "output", source);
  const Line* axiom = single(lines, "axiom", source);
  if (!alpha) throw InvalidInput(source + ": missing 'alphabet' line");
  if (!output) throw InvalidInput(source + ": missing 'output' line");
  if (!axiom) throw InvalidInput(source + ": missing 'axiom' line");

  const RankedAlphabet sigma = parse_alphabet(source, *alpha);
  Alphabet out;
  for (std::size_t i = 1; i < output->tokens.size(); ++i) {
    const auto& tok = output->tokens[i];
    if (tok.size() != 1) fail(source, *output, tok, "output generators are single letters");
    try {
      out.add(tok[0]);
    } catch (const InvalidInput& e) {
      fail(source, *output, tok, e.what());
    }
  }

  Transducer m(sigma, out);
  auto declare = [&](const std::string& name) {
    if (!m.find_state(name)) m.add_state(name);
  };
  for (const auto& l : lines) {
    if (l.tokens[0] != "rule") continue;
    if (l.tokens.size() < 4 || l.tokens[3] != "->") fail(source, l, l.tokens.back(), "expected 'rule q f -> ...'");
    declare(l.tokens[1]);
  }
  // callees without rules of their own come last and fail validation
  for (const auto& l : lines) {
    if (l.tokens[0] != "rule") continue;
    for (std::size_t i = 4; i < l.tokens.size(); ++i)
      if (is_call(l.tokens[i])) declare(split_colon(source, l, l.tokens[i]).first);
  }

  for (const auto& l : lines) {
    if (l.tokens[0] != "rule") continue;
    const StateId q = *m.find_state(l.tokens[1]);
    auto f = sigma.find(l.tokens[2]);
    if (!f) fail(source, l, l.tokens[2], "unknown input symbol");
    if (m.has_rule(q, *f)) fail(source, l, l.tokens[2], "duplicate rule");
    if (l.tokens.size() == 5 && l.tokens[4] == "BOTTOM") {
      m.set_rule(q, *f, Rule::make_bottom());
      continue;
    }
    Rule r;
    for (std::size_t i = 4; i < l.tokens.size(); ++i) {
      const auto& tok = l.tokens[i];
      if (tok == "BOTTOM") fail(source, l, tok, "BOTTOM must be the whole right-hand side");
      if (!is_call(tok)) {
        (r.calls.empty() ? r.head : r.calls.back().after) *= word_at(source, l, tok, out);
        continue;
      }
      auto [name, child] = split_colon(source, l, tok);
      if (child == 0 || child > sigma.rank(*f))
        fail(source, l, tok, "child index must lie in 1.." + std::to_string(sigma.rank(*f)));
      r.calls.push_back(Call{*m.find_state(name), child - 1, {}});
    }
    m.set_rule(q, *f, std::move(r));
  }

  Axiom ax;
  bool seen_state = false;
  for (std::size_t i = 1; i < axiom->tokens.size(); ++i) {
    const auto& tok = axiom->tokens[i];
    if (auto q = m.find_state(tok)) {
      if (seen_state) fail(source, *axiom, tok, "axiom calls more than one state");
      ax.state = *q;
      seen_state = true;
      continue;
    }
    if (is_call(tok)) fail(source, *axiom, tok, "axiom state is written without a child index");
    (seen_state ? ax.tail : ax.head) *= word_at(source, *axiom, tok, out);
  }
  m.set_axiom(std::move(ax));
  try {
    m.validate();
  } catch (const InvalidInput& e) {
    throw InvalidInput(source + ": " + e.what());
  }
  return m;
}

Dta parse_dta(std::string_view text, const std::string& source, const RankedAlphabet* sigma) {
  const auto lines = lex(text);
  for (const auto& l : lines) {
    const auto& k = l.tokens[0];
    if (k != "alphabet" && k != "dta" && k != "delta") fail(source, l, k, "unknown keyword");
  }
  const Line* alpha = single(lines, "alphabet", source);
  const Line* start = single(lines, "dta", source);
  if (!start) throw InvalidInput(source + ": missing 'dta start h' line");
  if (start->tokens.size() != 3 || start->tokens[1] != "start")
    fail(source, *start, start->tokens.back(), "expected 'dta start h'");

  const bool infer = !alpha && !sigma;
  RankedAlphabet symbols = alpha ? parse_alphabet(source, *alpha) : sigma ? *sigma : RankedAlphabet{};
  if (infer)
    for (const auto& l : lines) {
      if (l.tokens[0] != "delta" || l.tokens.size() < 4) continue;
      if (!symbols.find(l.tokens[2])) symbols.add(l.tokens[2], l.tokens.size() - 4);
    }

  Dta b(symbols);
  auto state = [&](const std::string& name) {
    if (auto h = b.find_state(name)) return *h;
    return b.add_state(name);
  };
  // sources first, so that formatting and re-parsing keeps the state ids
  for (const auto& l : lines)
    if (l.tokens[0] == "delta" && l.tokens.size() >= 2) state(l.tokens[1]);
  std::vector<std::vector<bool>> defined;
  for (const auto& l : lines) {
    if (l.tokens[0] == "dta") {
      b.set_start(state(l.tokens[2]));
      continue;
    }
    if (l.tokens[0] != "delta") continue;
    if (l.tokens.size() < 4 || l.tokens[3] != "->") fail(source, l, l.tokens.back(), "expected 'delta h f -> h1 ...'");
    const DtaState h = state(l.tokens[1]);
    auto f = symbols.find(l.tokens[2]);
    if (!f) fail(source, l, l.tokens[2], "unknown input symbol");
    std::vector<DtaState> targets;
    for (std::size_t i = 4; i < l.tokens.size(); ++i) targets.push_back(state(l.tokens[i]));
    if (targets.size() != symbols.rank(*f))
      fail(source, l, l.tokens[2],
           "symbol has rank " + std::to_string(symbols.rank(*f)) + " but " + std::to_string(targets.size()) +
               " targets are given");
    if (defined.size() < b.state_count()) defined.resize(b.state_count(), std::vector<bool>(symbols.size(), false));
    if (defined[h][*f]) fail(source, l, l.tokens[2], "duplicate transition");
    defined[h][*f] = true;
    b.set_transition(h, *f, std::move(targets));
  }
  return b;
}

std::string format_alphabet(const RankedAlphabet& sigma) {
  std::string s = "alphabet";
  for (SymbolId f = 0; f < sigma.size(); ++f) s += " " + sigma.name(f) + ":" + std::to_string(sigma.rank(f));
  return s;
}

std::string format_transducer(const Transducer& m) {
  std::ostringstream out;
  out << format_alphabet(m.input()) << "\noutput";
  for (char g : m.output().generators()) out << ' ' << g;
  out << "\naxiom " << m.axiom().head.str();
  if (m.axiom().state) out << ' ' << m.state_name(*m.axiom().state) << ' ' << m.axiom().tail.str();
  out << '\n';
  for (StateId q = 0; q < m.state_count(); ++q)
    for (SymbolId f = 0; f < m.input().size(); ++f) {
      const Rule& r = m.rule(q, f);
      out << "rule " << m.state_name(q) << ' ' << m.input().name(f) << " ->";
      if (r.bottom) {
        out << " BOTTOM\n";
        continue;
      }
      out << ' ' << r.head.str();
      for (const auto& c : r.calls) out << ' ' << m.state_name(c.state) << ':' << c.child + 1 << ' ' << c.after.str();
      out << '\n';
    }
  return out.str();
}

std::string format_dta(const Dta& b) {
  std::ostringstream out;
  out << format_alphabet(b.alphabet()) << "\ndta start " << b.state_name(b.start()) << '\n';
  for (DtaState h = 0; h < b.state_count(); ++h)
    for (SymbolId f = 0; f < b.alphabet().size(); ++f)
      if (const auto& d = b.delta(h, f)) {
        out << "delta " << b.state_name(h) << ' ' << b.alphabet().name(f) << " ->";
        for (DtaState c : *d) out << ' ' << b.state_name(c);
        out << '\n';
      }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ltg
