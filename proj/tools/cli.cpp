#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>

#include "ltg/error.hpp"
#include "ltg/harness.hpp"
#include "ltg/text_format.hpp"

namespace ltg::cli {

namespace {

enum class Format { Lines, Text };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string dta;
  std::string tree;
  std::size_t depth = 4;
  std::size_t witness_depth = 5;
  TestSetStrategy test_set = TestSetStrategy::Span;
  std::size_t bound = 2;
  std::size_t cap = kDefaultTestSetCap;
  Format format = Format::Lines;
  GenParams gen;
  std::string prefix;
};

Transducer load_transducer(const std::string& path) { return parse_transducer(read_file(path), path); }

Dta load_dta(const std::string& path, const Transducer& m) {
  Dta b = parse_dta(read_file(path), path, &m.input());
  if (!(b.alphabet() == m.input()))
    throw InvalidInput(path + ": input alphabet differs from the transducer's (" + format_alphabet(b.alphabet()) +
                       " vs " + format_alphabet(m.input()) + ")");
  return b;
}

int report(const Verdict& v, const Transducer& m, const RunConfig& cfg, std::ostream& out) {
  const RankedAlphabet& sigma = m.input();
  if (cfg.format == Format::Lines) {
    out << "RESULT " << outcome_name(v.outcome) << '\n';
    if (v.witness) {
      out << "WITNESS " << to_string(*v.witness, sigma) << '\n';
      out << "LEFT " << v.left.str() << '\n';
      out << "RIGHT " << v.right.str() << '\n';
    }
  } else {
    out << cfg.inputs[0] << " and " << cfg.inputs[1] << ": " << outcome_name(v.outcome);
    if (v.depth_bounded) out << " up to the searched depth";
    out << '\n';
    if (v.witness) {
      out << "  witness " << to_string(*v.witness, sigma) << '\n';
      out << "  left    " << v.left.str() << '\n';
      out << "  right   " << v.right.str() << '\n';
    }
    if (!v.note.empty()) out << "  " << v.note << '\n';
  }
  switch (v.outcome) {
    case Outcome::Equivalent:
      return kEquivalent;
    case Outcome::Inequivalent:
      return kInequivalent;
    case Outcome::EmptyDomain:
      return kError;
  }
  return kError;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Transducer m = load_transducer(cfg.inputs[0]);
  const Transducer m2 = load_transducer(cfg.inputs[1]);
  const Dta b = load_dta(cfg.dta, m);
  DecideConfig dc;
  dc.witness_depth = cfg.witness_depth;
  dc.test_set = cfg.test_set;
  dc.bound = cfg.bound;
  dc.cap = cfg.cap;
  return report(decide_equiv(m, m2, b, dc), m, cfg, out);
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Transducer m = load_transducer(cfg.inputs[0]);
  const Transducer m2 = load_transducer(cfg.inputs[1]);
  const Dta b = load_dta(cfg.dta, m);
  return report(brute_force_equiv(m, m2, b, cfg.depth), m, cfg, out);
}

int cmd_normalize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Transducer m = load_transducer(cfg.inputs[0]);
  const Dta b = load_dta(cfg.dta, m);
  const OrderedTransducer o = order_transducer(m, b);
  if (o.empty_domain) {
    out << "RESULT empty-domain\n";
    err << "error: the domain automaton accepts no tree\n";
    return kError;
  }
  out << format_transducer(o.transducer);
  return 0;
}

int cmd_abstract(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Transducer m = load_transducer(cfg.inputs[0]);
  const Dta b = load_dta(cfg.dta, m);
  const auto red = dta_reduce(b);
  if (red.empty_language) {
    out << "RESULT empty-domain\n";
    err << "error: the domain automaton accepts no tree\n";
    return kError;
  }
  const auto ct = make_compatible(m, red.dta);
  const Analysis a = analyze(ct.transducer, red.dta, ct.iota);
  for (StateId q = 0; q < ct.transducer.state_count(); ++q) {
    if (cfg.format == Format::Lines)
      out << "STATE " << ct.transducer.state_name(q) << ' ' << a[q].str() << '\n';
    else
      out << ct.transducer.state_name(q) << ' ' << a[q].str() << '\n';
  }
  if (cfg.format == Format::Text) out << "stable after " << a.rounds << " rounds\n";
  return 0;
}

// The outermost subtree the DTA has no transition for.
const Tree* rejected_subtree(const Dta& b, DtaState h, const Tree& t) {
  const auto& d = b.delta(h, t.symbol);
  if (!d) return &t;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    if (const Tree* r = rejected_subtree(b, (*d)[i], t.children[i])) return r;
  return nullptr;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const Transducer m = load_transducer(cfg.inputs[0]);
  const Tree t = parse_tree(cfg.tree, m.input());
  if (!cfg.dta.empty()) {
    const Dta b = load_dta(cfg.dta, m);
    if (const Tree* r = rejected_subtree(b, b.start(), t))
      throw DomainError("tree is not accepted by the DTA at subtree " + to_string(*r, m.input()));
  }
  out << eval(m, t).str() << '\n';
  return 0;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = gen_instance(cfg.gen);
  if (cfg.prefix.empty()) {
    out << "# transducer\n" << format_transducer(inst.transducer) << "# dta\n" << format_dta(inst.dta);
    return 0;
  }
  for (const auto& [path, text] : {std::pair{cfg.prefix + ".lt", format_transducer(inst.transducer)},
                                   std::pair{cfg.prefix + ".dta", format_dta(inst.dta)}}) {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    f << text;
  }
  out << cfg.prefix << ".lt\n" << cfg.prefix << ".dta\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivalence of linear tree transducers with output in the free group", "ltgeq"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::map<std::string, Format> formats{{"lines", Format::Lines}, {"text", Format::Text}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "lines (keyword lines) or text")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  auto* check = app.add_subcommand("check", "decide equivalence relative to a DTA");
  check->add_option("transducers", cfg.inputs, "two transducer files")->required()->expected(2)->check(CLI::ExistingFile);
  check->add_option("--dta", cfg.dta, "domain automaton")->required()->check(CLI::ExistingFile);
  check->add_option("--witness-depth", cfg.witness_depth, "tree depth bound for witness searches")
      ->check(CLI::PositiveNumber);
  const std::map<std::string, TestSetStrategy> strategies{{"span", TestSetStrategy::Span},
                                                           {"bounded", TestSetStrategy::Bounded}};
  check->add_option("--test-set", cfg.test_set, "span (exact) or bounded (enumerated derivations)")
      ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
  check->add_option("--bound", cfg.bound, "with --test-set bounded: nonterminal repetitions per path")
      ->check(CLI::PositiveNumber);
  check->add_option("--cap", cfg.cap, "with --test-set bounded: maximal test-set size")->check(CLI::PositiveNumber);
  add_format(check);

  auto* normalize = app.add_subcommand("normalize", "print the ordered, trivial-free equivalent transducer");
  normalize->add_option("transducer", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  normalize->add_option("--dta", cfg.dta)->required()->check(CLI::ExistingFile);

  auto* abstract = app.add_subcommand("abstract", "print the abstract output language of every state");
  abstract->add_option("transducer", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  abstract->add_option("--dta", cfg.dta)->required()->check(CLI::ExistingFile);
  add_format(abstract);

  auto* evalc = app.add_subcommand("eval", "translate one input tree");
  evalc->add_option("transducer", cfg.inputs)->required()->expected(1)->check(CLI::ExistingFile);
  evalc->add_option("--tree", cfg.tree, "e.g. 'f(g(k),k)'")->required();
  evalc->add_option("--dta", cfg.dta, "reject trees outside this domain")->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "compare on every domain tree below a depth");
  oracle->add_option("transducers", cfg.inputs, "two transducer files")->required()->expected(2)->check(CLI::ExistingFile);
  oracle->add_option("--dta", cfg.dta)->required()->check(CLI::ExistingFile);
  oracle->add_option("--depth", cfg.depth, "trees of depth < N")->check(CLI::PositiveNumber);
  add_format(oracle);

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--seed", cfg.gen.seed)->required();
  gen->add_option("--states", cfg.gen.max_states)->check(CLI::PositiveNumber);
  gen->add_option("--rank", cfg.gen.max_rank)->check(CLI::NonNegativeNumber);
  gen->add_option("--symbols", cfg.gen.input_symbols)->check(CLI::PositiveNumber);
  gen->add_option("--generators", cfg.gen.output_generators)->check(CLI::Range(1, 26));
  gen->add_option("--word-length", cfg.gen.max_word_length)->check(CLI::NonNegativeNumber);
  gen->add_option("--periodic-share", cfg.gen.periodic_share)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--prefix", cfg.prefix, "write PREFIX.lt and PREFIX.dta instead of printing");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (check->parsed()) return cmd_check(cfg, out);
    if (oracle->parsed()) return cmd_oracle(cfg, out);
    if (normalize->parsed()) return cmd_normalize(cfg, out, err);
    if (abstract->parsed()) return cmd_abstract(cfg, out, err);
    if (evalc->parsed()) return cmd_eval(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace ltg::cli
