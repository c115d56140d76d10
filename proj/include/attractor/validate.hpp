#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "attractor/attractor.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Shortest substring with no occurrence crossing the attractor; among the
// shortest, the one whose leftmost occurrence is leftmost. (length, leftmost
// start) identifies a substring uniquely, so both validators agree exactly.
struct Witness {
  Pos pos = 0;  // leftmost occurrence start
  uint32_t len = 0;
};

struct ValidationResult {
  bool valid = false;
  std::optional<Witness> witness;
};

// Succ-distance machinery shared by the validator, the parse reducer and the
// random-access builder: for every SA rank i, dist-to-next-marked of sa[i]
// packed with sa[i] for deterministic argmin queries.
class CrossingFinder {
 public:
  CrossingFinder(const SuffixIndex& index, size_t n, std::span<const Pos> marked);

  // Min distance-to-marked over sa[lo..hi].
  uint32_t min_dist(SaInterval iv) const;

  // Occurrence of the (length-len) substring with SA interval iv whose
  // crossing happens at the smallest offset, ties broken by smallest text
  // position. Empty when no occurrence in the interval crosses a mark.
  std::optional<Pos> crossing_occurrence(SaInterval iv, uint32_t len) const;

  uint32_t dist_at(Pos p) const { return dist_[p - 1]; }

 private:
  std::vector<uint32_t> dist_;    // by text position
  SparseMin<uint64_t> rank_min_;  // (dist << 32 | sa) by SA rank
};

// One suffix-tree node, enumerated as an LCP interval: the SA interval
// [lo..hi] of a set of substrings with lengths in [min_len..max_len] whose
// occurrence set is exactly {sa[lo..hi]}.
struct LcpNode {
  uint32_t lo, hi;
  uint32_t min_len, max_len;
};

// All suffix-tree nodes (internal nodes and leaves) of the index, each
// carrying its exact represented length range.
std::vector<LcpNode> lcp_nodes(const SuffixIndex& index);

struct ValidateOptions {
  bool parallel = true;
  const SuffixIndex* index = nullptr;  // reuse a prebuilt index for text
};

// Efficient validator: a node's substrings all have a crossing occurrence
// iff the min succ-distance over its SA interval is <= min_len-1 (coverage
// is monotone in substring length for a fixed occurrence set).
ValidationResult validate_k_attractor(const Text& text, const Attractor& gamma,
                                      uint64_t k, const ValidateOptions& opts = {});

// Reference validator: enumerates every distinct substring of length <= k
// and every occurrence directly. Quadratic-ish; the ground truth the fast
// path is tested against.
ValidationResult naive_validate(const Text& text, const Attractor& gamma, uint64_t k);

// Exhaustive minimum k-attractor, n <= 20. Searches subsets in
// size-lexicographic order and returns the first valid one; the search is
// pruned below max(#distinct symbols, ceil(sigma_k/k)).
Attractor min_attractor_brute(const Text& text, uint64_t k,
                              const SuffixIndex* prebuilt = nullptr,
                              bool parallel = true);

}  // namespace attractor
