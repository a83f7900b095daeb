#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "ltg/error.hpp"
#include "ltg/pair_checker.hpp"

namespace ltg {

namespace {

// Row-major 2x2 integer matrix.
using Mat = std::array<mpz_class, 4>;

Mat operator*(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// Determinant one throughout.
Mat inverse(const Mat& m) { return {m[3], -m[1], -m[2], m[0]}; }

// A = (1 2; 0 1) and B = (1 0; 2 1) generate a free subgroup of SL2(Z), and
// the conjugates B^i A B^-i are a free basis of a subgroup of it, so
// generator number i is sent to B^i A B^-i.
class Representation {
 public:
  explicit Representation(const PairGrammar& g) {
    std::set<char> gens;
    for (const auto& p : g.productions)
      for (const auto* words : {&p.plain, &p.barred})
        for (const Word& w : *words)
          for (const Letter& l : w.letters()) gens.insert(l.gen);
    long i = 0;
    for (char c : gens) {
      const Mat a{1, 2, 0, 1};
      const Mat b{1, 0, 2 * i, 1};
      const Mat m = b * a * inverse(b);
      letters_.emplace(c, std::make_pair(m, inverse(m)));
      ++i;
    }
  }

  Mat of(const Word& w) const {
    Mat r{1, 0, 0, 1};
    for (const Letter& l : w.letters()) {
      const auto& e = letters_.at(l.gen);
      r = r * (l.inverse ? e.second : e.first);
    }
    return r;
  }

 private:
  std::map<char, std::pair<Mat, Mat>> letters_;
};

struct Element {
  Mat f, g;
  std::shared_ptr<const Derivation> derivation;
};

// Echelon basis of a subspace of Q^8; every row is zero at the pivots of the
// rows before it and one at its own pivot.
class Span {
 public:
  bool add(const Element& e) {
    std::array<mpq_class, 8> v;
    for (std::size_t k = 0; k < 4; ++k) {
      v[k] = e.f[k];
      v[4 + k] = e.g[k];
    }
    for (const auto& [pivot, row] : rows_) {
      if (sgn(v[pivot]) == 0) continue;
      const mpq_class c = v[pivot];
      for (std::size_t k = 0; k < 8; ++k) v[k] -= c * row[k];
    }
    std::size_t pivot = 0;
    while (pivot < 8 && sgn(v[pivot]) == 0) ++pivot;
    if (pivot == 8) return false;
    const mpq_class c = v[pivot];
    for (auto& x : v) x /= c;
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

 private:
  std::vector<std::pair<std::size_t, std::array<mpq_class, 8>>> rows_;
};

using Projection = std::pair<Word, Word>;

const Projection& project(const PairGrammar& g, const Derivation& d,
                          std::unordered_map<const Derivation*, Projection>& memo) {
  if (auto it = memo.find(&d); it != memo.end()) return it->second;
  const Production& p = g.productions.at(d.production);
  Projection out{p.plain[0], p.barred[0]};
  for (std::size_t k = 0; k < d.children.size(); ++k) {
    const Projection& c = project(g, *d.children[k], memo);
    out.first = out.first * c.first * p.plain[k + 1];
    out.second = out.second * c.second * p.barred[k + 1];
  }
  return memo.emplace(&d, std::move(out)).first->second;
}

}  // namespace

AgreeResult morphisms_agree_span(const PairGrammar& g) {
  const Representation rho(g);
  std::vector<std::vector<std::pair<Mat, Mat>>> words(g.productions.size());
  for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
    const Production& p = g.productions[pi];
    for (std::size_t k = 0; k < p.plain.size(); ++k) words[pi].emplace_back(rho.of(p.plain[k]), rho.of(p.barred[k]));
  }

  // The span of L(A) is spanned by the products of basis elements of the
  // children's spans, by multilinearity, so the iteration only ever needs
  // concrete basis derivations.
  std::vector<Span> spans(g.nonterminal_count());
  std::vector<std::vector<Element>> basis(g.nonterminal_count());
  // per production, the child basis sizes at its last enumeration
  std::vector<std::optional<std::vector<std::size_t>>> tried(g.productions.size());
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t pi = 0; pi < g.productions.size(); ++pi) {
      const Production& p = g.productions[pi];
      std::vector<std::size_t> sizes;
      for (std::size_t nt : p.nonterminals) sizes.push_back(basis[nt].size());
      if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) continue;
      if (tried[pi] == sizes) continue;
      const bool first = !tried[pi];
      const std::vector<std::size_t> old = first ? std::vector<std::size_t>(sizes.size(), 0) : *tried[pi];
      tried[pi] = sizes;

      std::vector<std::size_t> idx(sizes.size(), 0);
      for (;;) {
        bool fresh = first;
        for (std::size_t k = 0; k < idx.size(); ++k) fresh = fresh || idx[k] >= old[k];
        if (fresh) {
          Element e{words[pi][0].first, words[pi][0].second, nullptr};
          auto d = std::make_shared<Derivation>();
          d->production = pi;
          for (std::size_t k = 0; k < idx.size(); ++k) {
            const Element& c = basis[p.nonterminals[k]][idx[k]];
            e.f = e.f * c.f * words[pi][k + 1].first;
            e.g = e.g * c.g * words[pi][k + 1].second;
            d->height = std::max(d->height, c.derivation->height + 1);
            d->children.push_back(c.derivation);
          }
          e.derivation = std::move(d);
          if (spans[p.lhs].add(e)) {
            basis[p.lhs].push_back(std::move(e));
            grew = true;
          }
        }
        std::size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == sizes[pos - 1]) idx[--pos] = 0;
        if (pos == 0) break;
      }
    }
  }

  AgreeResult r;
  r.test_set_size = basis[0].size();
  const Element* bad = nullptr;
  for (const auto& e : basis[0])
    if (e.f != e.g && (!bad || e.derivation->height < bad->derivation->height)) bad = &e;
  if (!bad) return r;
  std::unordered_map<const Derivation*, Projection> memo;
  const Projection& pr = project(g, *bad->derivation, memo);
  if (pr.first == pr.second) throw InvariantViolation("matrix images differ on equal words");
  r.agree = false;
  r.witness = bad->derivation;
  r.f_value = pr.first;
  r.g_value = pr.second;
  return r;
}

}  // namespace ltg
