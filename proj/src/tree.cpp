#include "ltg/tree.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "ltg/error.hpp"

namespace ltg {

SymbolId RankedAlphabet::add(std::string name, std::size_t rank) {
  if (name.empty()) throw InvalidInput("empty input symbol name");
  if (index_.count(name)) throw InvalidInput("input symbol '" + name + "' declared twice");
  index_.emplace(name, names_.size());
  names_.push_back(std::move(name));
  ranks_.push_back(rank);
  return names_.size() - 1;
}

std::optional<SymbolId> RankedAlphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Tree::depth() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth() + 1);
  return d;
}

std::size_t Tree::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

std::string to_string(const Tree& t, const RankedAlphabet& sigma) {
  std::string s = sigma.name(t.symbol);
  if (t.children.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ',';
    s += to_string(t.children[i], sigma);
  }
  s += ')';
  return s;
}

namespace {

class TreeParser {
 public:
  TreeParser(std::string_view text, const RankedAlphabet& sigma) : text_(text), sigma_(sigma) {}

  Tree parse() {
    Tree t = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("tree '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Tree parse_node() {
    skip_ws();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (begin == pos_) fail("expected a symbol");
    const std::string name(text_.substr(begin, pos_ - begin));
    auto f = sigma_.find(name);
    if (!f) fail("unknown symbol '" + name + "'");
    Tree t{*f, {}};
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          t.children.push_back(parse_node());
          skip_ws();
          if (pos_ >= text_.size()) fail("unbalanced parenthesis");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    if (t.children.size() != sigma_.rank(*f))
      fail("symbol '" + name + "' has rank " + std::to_string(sigma_.rank(*f)) + " but " +
           std::to_string(t.children.size()) + " children");
    return t;
  }

  std::string_view text_;
  const RankedAlphabet& sigma_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_tree(std::string_view text, const RankedAlphabet& sigma) { return TreeParser(text, sigma).parse(); }

DtaState Dta::add_state(std::string name) {
  if (find_state(name)) throw InvalidInput("DTA state '" + name + "' declared twice");
  names_.push_back(std::move(name));
  delta_.emplace_back(sigma_.size());
  return names_.size() - 1;
}

std::optional<DtaState> Dta::find_state(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<DtaState>(it - names_.begin());
}

void Dta::set_transition(DtaState h, SymbolId f, std::vector<DtaState> targets) {
  if (h >= names_.size() || f >= sigma_.size()) throw InvalidInput("transition out of range");
  if (targets.size() != sigma_.rank(f))
    throw InvalidInput("transition " + names_[h] + " " + sigma_.name(f) + " needs " +
                       std::to_string(sigma_.rank(f)) + " targets, got " + std::to_string(targets.size()));
  for (auto t : targets)
    if (t >= names_.size()) throw InvalidInput("transition target out of range");
  delta_[h][f] = std::move(targets);
}

DtaReduction dta_reduce(const Dta& b) {
  const std::size_t n = b.state_count();
  const std::size_t nsym = b.alphabet().size();
  std::vector<bool> nonempty(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (DtaState h = 0; h < n; ++h) {
      if (nonempty[h]) continue;
      for (SymbolId f = 0; f < nsym && !nonempty[h]; ++f) {
        const auto& d = b.delta(h, f);
        if (d && std::all_of(d->begin(), d->end(), [&](DtaState c) { return nonempty[c]; })) {
          nonempty[h] = true;
          changed = true;
        }
      }
    }
  }

  DtaReduction out;
  out.state_map.assign(n, std::nullopt);
  if (n == 0 || !nonempty[b.start()]) {
    out.empty_language = true;
    return out;
  }

  auto usable = [&](DtaState h, SymbolId f) {
    const auto& d = b.delta(h, f);
    return d && std::all_of(d->begin(), d->end(), [&](DtaState c) { return nonempty[c]; });
  };

  std::vector<bool> reach(n, false);
  std::vector<DtaState> work{b.start()};
  reach[b.start()] = true;
  while (!work.empty()) {
    DtaState h = work.back();
    work.pop_back();
    for (SymbolId f = 0; f < nsym; ++f) {
      if (!usable(h, f)) continue;
      for (DtaState c : *b.delta(h, f))
        if (!reach[c]) {
          reach[c] = true;
          work.push_back(c);
        }
    }
  }

  Dta r(b.alphabet());
  for (DtaState h = 0; h < n; ++h)
    if (reach[h]) out.state_map[h] = r.add_state(b.state_name(h));
  for (DtaState h = 0; h < n; ++h) {
    if (!reach[h]) continue;
    for (SymbolId f = 0; f < nsym; ++f) {
      if (!usable(h, f)) continue;
      std::vector<DtaState> targets;
      for (DtaState c : *b.delta(h, f)) targets.push_back(*out.state_map[c]);
      r.set_transition(*out.state_map[h], f, std::move(targets));
    }
  }
  r.set_start(*out.state_map[b.start()]);
  out.dta = std::move(r);
  return out;
}

bool dom_member(const Dta& b, DtaState h, const Tree& t) {
  if (h >= b.state_count() || t.symbol >= b.alphabet().size()) return false;
  const auto& d = b.delta(h, t.symbol);
  if (!d || d->size() != t.children.size()) return false;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    if (!dom_member(b, (*d)[i], t.children[i])) return false;
  return true;
}

namespace {

constexpr std::size_t kNoTree = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> min_depths(const Dta& b) {
  const std::size_t n = b.state_count();
  std::vector<std::size_t> depth(n, kNoTree);
  for (bool changed = true; changed;) {
    changed = false;
    for (DtaState h = 0; h < n; ++h) {
      for (SymbolId f = 0; f < b.alphabet().size(); ++f) {
        const auto& d = b.delta(h, f);
        if (!d) continue;
        std::size_t cand = 0;
        for (DtaState c : *d) {
          if (depth[c] == kNoTree) {
            cand = kNoTree;
            break;
          }
          cand = std::max(cand, depth[c] + 1);
        }
        if (cand < depth[h]) {
          depth[h] = cand;
          changed = true;
        }
      }
    }
  }
  return depth;
}

Tree build_min_tree(const Dta& b, DtaState h, const std::vector<std::size_t>& depth) {
  for (SymbolId f = 0; f < b.alphabet().size(); ++f) {
    const auto& d = b.delta(h, f);
    if (!d) continue;
    std::size_t cand = 0;
    bool ok = true;
    for (DtaState c : *d) {
      if (depth[c] == kNoTree) {
        ok = false;
        break;
      }
      cand = std::max(cand, depth[c] + 1);
    }
    if (!ok || cand != depth[h]) continue;
    Tree t{f, {}};
    for (DtaState c : *d) t.children.push_back(build_min_tree(b, c, depth));
    return t;
  }
  throw InvariantViolation("min_tree: no symbol attains the minimal depth");
}

// Exact-depth layers: layers[h][d] holds the trees of dom(h) with depth d.
using Layers = std::vector<std::vector<std::vector<Tree>>>;

// Calls emit for every tree f(c1..cm) of exact depth d whose children come from
// layers below d. Returns false if emit asked to stop.
bool emit_layer(const Dta& b, DtaState h, std::size_t d, const Layers& layers,
                const std::function<bool(Tree&&)>& emit) {
  for (SymbolId f = 0; f < b.alphabet().size(); ++f) {
    const auto& targets = b.delta(h, f);
    if (!targets) continue;
    const std::size_t m = targets->size();
    if (m == 0) {
      if (d == 0 && !emit(Tree{f, {}})) return false;
      continue;
    }
    if (d == 0) continue;
    // Children range over trees of depth <= d-1, at least one of depth d-1.
    std::vector<std::vector<const Tree*>> pools(m);
    std::vector<std::vector<bool>> exact(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t e = 0; e < d && e < layers[(*targets)[i]].size(); ++e)
        for (const auto& t : layers[(*targets)[i]][e]) {
          pools[i].push_back(&t);
          exact[i].push_back(e + 1 == d);
        }
    if (std::any_of(pools.begin(), pools.end(), [](const auto& p) { return p.empty(); })) continue;
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      bool has_exact = false;
      for (std::size_t i = 0; i < m; ++i) has_exact = has_exact || exact[i][idx[i]];
      if (has_exact) {
        Tree t{f, {}};
        t.children.reserve(m);
        for (std::size_t i = 0; i < m; ++i) t.children.push_back(*pools[i][idx[i]]);
        if (!emit(std::move(t))) return false;
      }
      bool advanced = false;
      for (std::size_t pos = m; pos-- > 0;) {
        if (++idx[pos] < pools[pos].size()) {
          advanced = true;
          break;
        }
        idx[pos] = 0;
      }
      if (!advanced) break;
    }
  }
  return true;
}

Layers build_layers(const Dta& b, std::size_t levels) {
  Layers layers(b.state_count());
  for (std::size_t d = 0; d < levels; ++d)
    for (DtaState h = 0; h < b.state_count(); ++h) {
      std::vector<Tree> layer;
      emit_layer(b, h, d, layers, [&](Tree&& t) {
        layer.push_back(std::move(t));
        return true;
      });
      layers[h].push_back(std::move(layer));
    }
  return layers;
}

}  // namespace

Tree min_tree(const Dta& b, DtaState h) {
  if (h >= b.state_count()) throw DomainError("min_tree: unknown DTA state");
  auto depth = min_depths(b);
  if (depth[h] == kNoTree) throw DomainError("min_tree: dom(" + b.state_name(h) + ") is empty");
  return build_min_tree(b, h, depth);
}

void for_each_tree(const Dta& b, DtaState h, std::size_t max_depth, const std::function<bool(const Tree&)>& visit) {
  if (max_depth == 0 || h >= b.state_count()) return;
  // Only the topmost layer at h is streamed; everything below is materialized.
  const Layers layers = build_layers(b, max_depth - 1);
  for (std::size_t d = 0; d + 1 < max_depth; ++d)
    for (const auto& t : layers[h][d])
      if (!visit(t)) return;
  emit_layer(b, h, max_depth - 1, layers, [&](Tree&& t) { return visit(t); });
}

std::vector<Tree> enum_trees(const Dta& b, DtaState h, std::size_t max_depth) {
  std::vector<Tree> out;
  for_each_tree(b, h, max_depth, [&](const Tree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace ltg
