#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "ltg/group.hpp"

namespace ltg {

/// Reference to a node of one SlpStore. Cheap to copy.
struct SlpHandle {
  std::uint64_t store = 0;
  std::uint32_t node = 0;

  friend bool operator==(const SlpHandle&, const SlpHandle&) = default;
};

/// Append-only DAG of straight-line-program nodes denoting (unreduced) words.
///
/// Nodes are literals, concatenations or inversions of earlier nodes, so the
/// graph is acyclic by construction. Equality and the other group queries
/// work by expanding to reduced words with per-node memoization; every
/// expansion is bounded by a letter limit. The memo table is guarded, so
/// concurrent expand() calls on a store that is no longer being extended
/// are safe.
class SlpStore {
 public:
  static constexpr std::size_t kDefaultLimit = std::size_t{1} << 20;

  SlpStore();
  SlpStore(const SlpStore&) = delete;
  SlpStore& operator=(const SlpStore&) = delete;

  SlpHandle make(const Word& w);
  SlpHandle concat(SlpHandle lhs, SlpHandle rhs);
  SlpHandle invert(SlpHandle h);

  /// Expanded length before any reduction (saturating).
  std::uint64_t length(SlpHandle h) const;
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Reduced denotation. Throws ResourceError if an intermediate reduced
  /// form exceeds `limit` letters.
  Word expand(SlpHandle h, std::size_t limit = kDefaultLimit) const;

  bool equal(SlpHandle lhs, SlpHandle rhs, std::size_t limit = kDefaultLimit) const;

  // Both by expansion followed by the explicit group operations.
  SlpHandle primitive_root(SlpHandle h, std::size_t limit = kDefaultLimit);
  Coset coset(SlpHandle g, SlpHandle p, std::size_t limit = kDefaultLimit) const;

 private:
  enum class Kind : std::uint8_t { Literal, Concat, Inverse };
  struct Node {
    Kind kind;
    Word literal;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint64_t length = 0;
  };

  const Node& node(SlpHandle h) const;
  SlpHandle push(Node n);

  std::uint64_t id_;
  std::vector<Node> nodes_;
  mutable std::mutex memo_mutex_;
  mutable std::vector<std::optional<Word>> memo_;
};

inline SlpHandle slp_make(SlpStore& s, const Word& w) { return s.make(w); }
inline SlpHandle slp_concat(SlpStore& s, SlpHandle a, SlpHandle b) { return s.concat(a, b); }
inline SlpHandle slp_invert(SlpStore& s, SlpHandle h) { return s.invert(h); }
inline Word slp_expand(const SlpStore& s, SlpHandle h, std::size_t limit = SlpStore::kDefaultLimit) {
  return s.expand(h, limit);
}
inline bool slp_equal(const SlpStore& s, SlpHandle a, SlpHandle b, std::size_t limit = SlpStore::kDefaultLimit) {
  return s.equal(a, b, limit);
}

}  // namespace ltg
