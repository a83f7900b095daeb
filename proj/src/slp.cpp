#include "ltg/slp.hpp"

#include <atomic>
#include <limits>
#include <string>
#include <utility>

#include "ltg/error.hpp"

namespace ltg {

namespace {

std::atomic<std::uint64_t> next_store_id{1};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

}  // namespace

SlpStore::SlpStore() : id_(next_store_id.fetch_add(1)) {}

const SlpStore::Node& SlpStore::node(SlpHandle h) const {
  if (h.store != id_) throw UsageError("SLP handle belongs to a different store");
  if (h.node >= nodes_.size()) throw UsageError("dangling SLP handle");
  return nodes_[h.node];
}

SlpHandle SlpStore::push(Node n) {
  if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) throw ResourceError("SLP store is full");
  nodes_.push_back(std::move(n));
  return {id_, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

SlpHandle SlpStore::make(const Word& w) {
  Node n{Kind::Literal, w, 0, 0, w.size()};
  return push(std::move(n));
}

SlpHandle SlpStore::concat(SlpHandle lhs, SlpHandle rhs) {
  const auto len = saturating_add(node(lhs).length, node(rhs).length);
  return push(Node{Kind::Concat, {}, lhs.node, rhs.node, len});
}

SlpHandle SlpStore::invert(SlpHandle h) {
  const auto len = node(h).length;
  return push(Node{Kind::Inverse, {}, h.node, 0, len});
}

std::uint64_t SlpStore::length(SlpHandle h) const { return node(h).length; }

Word SlpStore::expand(SlpHandle h, std::size_t limit) const {
  if (limit == 0) throw UsageError("expansion limit must be positive");
  node(h);
  std::lock_guard lock(memo_mutex_);
  if (memo_.size() < nodes_.size()) memo_.resize(nodes_.size());

  auto check = [&](std::uint32_t id, const Word& w) {
    if (w.size() > limit)
      throw ResourceError("SLP node " + std::to_string(id) + " expands to " + std::to_string(w.size()) +
                          " letters, over the limit of " + std::to_string(limit));
  };

  // Post-order over the DAG with an explicit stack.
  std::vector<std::pair<std::uint32_t, bool>> stack{{h.node, false}};
  while (!stack.empty()) {
    auto [id, children_done] = stack.back();
    stack.pop_back();
    if (memo_[id]) continue;
    const Node& n = nodes_[id];
    if (n.kind == Kind::Literal) {
      check(id, n.literal);
      memo_[id] = n.literal;
      continue;
    }
    if (!children_done) {
      stack.push_back({id, true});
      stack.push_back({n.left, false});
      if (n.kind == Kind::Concat) stack.push_back({n.right, false});
      continue;
    }
    Word w = n.kind == Kind::Concat ? *memo_[n.left] * *memo_[n.right] : memo_[n.left]->inverse();
    check(id, w);
    memo_[id] = std::move(w);
  }
  return *memo_[h.node];
}

bool SlpStore::equal(SlpHandle lhs, SlpHandle rhs, std::size_t limit) const {
  // Every cancellation removes two letters, so parity of the raw length is an invariant.
  if ((node(lhs).length & 1) != (node(rhs).length & 1)) return false;
  if (lhs == rhs) return true;
  return expand(lhs, limit) == expand(rhs, limit);
}

SlpHandle SlpStore::primitive_root(SlpHandle h, std::size_t limit) {
  return make(ltg::primitive_root(expand(h, limit)));
}

Coset SlpStore::coset(SlpHandle g, SlpHandle p, std::size_t limit) const {
  return canonical_coset(expand(g, limit), expand(p, limit));
}

}  // namespace ltg
