#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "attractor/text.hpp"

namespace attractor {

// Half-open nothing here: SA intervals are inclusive 1-based [lo..hi];
// empty() when hi < lo.
struct SaInterval {
  uint32_t lo = 1;
  uint32_t hi = 0;
  bool empty() const { return hi < lo; }
  uint32_t count() const { return empty() ? 0 : hi - lo + 1; }
};

// Sparse table answering min queries over a static sequence in O(1).
template <typename T>
class SparseMin {
 public:
  SparseMin() = default;
  explicit SparseMin(std::vector<T> base);

  // Minimum of values[lo..hi], 1-based inclusive. Requires lo <= hi.
  T min(uint32_t lo, uint32_t hi) const;

  bool built() const { return !rows_.empty(); }

 private:
  std::vector<std::vector<T>> rows_;
};

extern template class SparseMin<uint32_t>;
extern template class SparseMin<uint64_t>;

// Suffix array, inverse, LCP array and BWT of a text, plus a min-table over
// SA used to pick leftmost occurrences.
struct SuffixIndex {
  std::vector<uint32_t> sa;   // sa[i-1] = start of i-th smallest suffix (1-based values)
  std::vector<uint32_t> isa;  // isa[p-1] = rank of suffix p
  std::vector<uint32_t> lcp;  // lcp[0] = 0; lcp[i-1] = lcp(suffix sa[i-2], suffix sa[i-1])
  std::vector<Symbol> bwt;    // bwt[i-1] = T[sa[i]-1], wrapping to T[n]
  SparseMin<uint32_t> sa_min;

  size_t n() const { return sa.size(); }
  uint32_t sa_at(uint32_t i) const { return sa[i - 1]; }
  uint32_t isa_at(Pos p) const { return isa[p - 1]; }
  uint32_t lcp_at(uint32_t i) const { return lcp[i - 1]; }

  // Smallest text position among sa[lo..hi].
  Pos leftmost_occurrence(SaInterval iv) const { return sa_min.min(iv.lo, iv.hi); }
};

// O(n log n) prefix-doubling construction. Deterministic. Rejects empty text.
SuffixIndex build_suffix_index(const Text& text);

// SA interval of all suffixes having `pattern` as a prefix (binary search).
// Empty interval iff the pattern does not occur. Pattern must be non-empty.
SaInterval occurrences(const SuffixIndex& index, const Text& text,
                       std::span<const Symbol> pattern);

// Interval of suffixes whose first `len` symbols match the suffix starting at
// p, i.e. the occurrence interval of T[p..p+len-1]. Requires p+len-1 <= n.
SaInterval occurrence_interval(const SuffixIndex& index, const Text& text, Pos p,
                               uint32_t len);

// Distance sentinel for positions with no marked position at or after them.
inline constexpr uint32_t kNoSucc = std::numeric_limits<uint32_t>::max() / 2;

// d[p-1] = (smallest marked position >= p) - p, or kNoSucc when none.
// An occurrence of length l starting at p crosses a marked position iff
// d[p-1] <= l-1. Positions must be sorted, distinct, within [1..n].
std::vector<uint32_t> succ_distance(size_t n, std::span<const Pos> marked);

}  // namespace attractor
