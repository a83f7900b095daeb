#include "ltg/group.hpp"

#include <algorithm>
#include <cctype>

#include "ltg/error.hpp"

namespace ltg {

Alphabet::Alphabet(std::string_view generators) {
  for (char c : generators) add(c);
}

void Alphabet::add(char gen) {
  if (!std::isalpha(static_cast<unsigned char>(gen)))
    throw InvalidInput(std::string("generator must be an ASCII letter: '") + gen + "'");
  gens_.insert(gen);
}

Word Word::reduce(std::span<const Letter> raw) {
  Word out;
  out.letters_.reserve(raw.size());
  for (const auto& l : raw) {
    if (!out.letters_.empty() && out.letters_.back().cancels(l))
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->flipped());
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() && letters_.back().cancels(rhs.letters_[i])) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(i), rhs.letters_.end());
  return *this;
}

std::string Word::str() const {
  if (letters_.empty()) return "_";
  std::string s;
  s.reserve(letters_.size() * 2);
  for (const auto& l : letters_) {
    s.push_back(l.gen);
    if (l.inverse) s.push_back('-');
  }
  return s;
}

bool shortlex_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

namespace {

std::vector<Letter> tokenize_letters(std::string_view token, const Alphabet* alphabet) {
  if (token == "_") return {};
  if (token.empty()) throw InvalidInput("empty word token (use '_' for the empty word)");
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw InvalidInput("bad character '" + std::string(1, c) + "' in word '" + std::string(token) + "'");
    if (alphabet && !alphabet->contains(c))
      throw InvalidInput("letter '" + std::string(1, c) + "' of word '" + std::string(token) +
                         "' is not in the output alphabet");
    bool inv = i + 1 < token.size() && token[i + 1] == '-';
    raw.push_back({c, inv});
    if (inv) ++i;
  }
  return raw;
}

}  // namespace

Word parse_word(std::string_view token, const Alphabet& alphabet) {
  return Word::reduce(tokenize_letters(token, &alphabet));
}

Word parse_word(std::string_view token) { return Word::reduce(tokenize_letters(token, nullptr)); }

Word reduce(std::span<const Letter> raw, const Alphabet& alphabet) {
  for (const auto& l : raw)
    if (!alphabet.contains(l.gen)) throw InvalidInput(std::string("letter '") + l.gen + "' is not in the alphabet");
  return Word::reduce(raw);
}

Word power(const Word& w, std::int64_t k) {
  Word base = k < 0 ? w.inverse() : w;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Word acc;
  while (n > 0) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n > 0) base *= Word(base);
  }
  return acc;
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(ls.begin() + static_cast<std::ptrdiff_t>(lo), ls.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<Letter> conj(ls.begin() + static_cast<std::ptrdiff_t>(hi), ls.end());
  return {Word::reduce(conj), Word::reduce(core)};
}

namespace {

// Length of the shortest d dividing |s| with s = (s[0..d))^(|s|/d), via the
// KMP failure function.
std::size_t string_root_length(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && !(s[i] == s[k])) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  std::size_t period = n - fail[n];
  return n % period == 0 ? period : n;
}

}  // namespace

Word primitive_root(const Word& w) {
  if (w.empty()) throw DomainError("primitive root of the empty word");
  auto [r, s] = cyclic_reduce(w);
  const std::size_t d = string_root_length(s.letters());
  std::vector<Letter> q(s.letters().begin(), s.letters().begin() + static_cast<std::ptrdiff_t>(d));
  return r.inverse() * Word::reduce(q) * r;
}

bool is_primitive(const Word& w) { return !w.empty() && primitive_root(w) == w; }

std::optional<std::int64_t> solve_power(const Word& w, const Word& p) {
  if (p.empty()) throw DomainError("solve_power with an empty base");
  if (w.empty()) return 0;
  const Word q = primitive_root(p);
  const auto [r, s] = cyclic_reduce(q);
  // |q^i| = 2|r| + |i||s| for i != 0.
  const std::size_t fixed = 2 * r.size();
  const std::int64_t j = static_cast<std::int64_t>((p.size() - fixed) / s.size());
  if (w.size() < fixed + s.size() || (w.size() - fixed) % s.size() != 0) return std::nullopt;
  const auto i = static_cast<std::int64_t>((w.size() - fixed) / s.size());
  std::int64_t exponent = 0;
  if (power(q, i) == w)
    exponent = i;
  else if (power(q, -i) == w)
    exponent = -i;
  else
    return std::nullopt;
  if (exponent % j != 0) return std::nullopt;
  return exponent / j;
}

bool Coset::contains(const Word& g) const { return in_cyclic_subgroup(rep.inverse() * g, period); }

std::string Coset::str() const { return "rep=" + rep.str() + " period=" + period.str(); }

Coset canonical_coset(const Word& g, const Word& p) {
  if (p.empty()) throw DomainError("coset of the trivial subgroup");
  Word root = primitive_root(p);
  Word root_inv = root.inverse();
  Word period = root_inv < root ? root_inv : root;

  // Any g.period^k not longer than g has |k| <= 2|g|/|s|, s the cyclic core.
  const std::size_t core = cyclic_reduce(period).core.size();
  const std::size_t bound = 2 * g.size() / core + 1;
  Word best = g;
  Word up = g, down = g;
  const Word period_inv = period.inverse();
  for (std::size_t k = 0; k < bound; ++k) {
    up *= period;
    down *= period_inv;
    if (shortlex_less(up, best)) best = up;
    if (shortlex_less(down, best)) best = down;
  }
  return {std::move(best), std::move(period)};
}

}  // namespace ltg
