#include "attractor/validate.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace attractor {

CrossingFinder::CrossingFinder(const SuffixIndex& index, size_t n,
                               std::span<const Pos> marked)
    : dist_(succ_distance(n, marked)) {
  std::vector<uint64_t> packed(n);
  for (size_t i = 0; i < n; i++) {
    uint32_t p = index.sa[i];
    packed[i] = (static_cast<uint64_t>(dist_[p - 1]) << 32) | p;
  }
  rank_min_ = SparseMin<uint64_t>(std::move(packed));
}

uint32_t CrossingFinder::min_dist(SaInterval iv) const {
  return static_cast<uint32_t>(rank_min_.min(iv.lo, iv.hi) >> 32);
}

std::optional<Pos> CrossingFinder::crossing_occurrence(SaInterval iv, uint32_t len) const {
  uint64_t best = rank_min_.min(iv.lo, iv.hi);
  uint32_t d = static_cast<uint32_t>(best >> 32);
  if (d + 1 > len) return std::nullopt;  // d <= len-1 crosses
  return static_cast<Pos>(best & 0xffffffffu);
}

std::vector<LcpNode> lcp_nodes(const SuffixIndex& index) {
  uint32_t n = static_cast<uint32_t>(index.n());
  std::vector<LcpNode> nodes;
  nodes.reserve(2 * n);

  // Leaves: rank i alone represents prefixes of suffix sa[i] longer than the
  // LCP with both neighbours.
  for (uint32_t i = 1; i <= n; i++) {
    uint32_t parent = std::max(index.lcp_at(i), i < n ? index.lcp_at(i + 1) : 0);
    uint32_t suffix_len = n - index.sa_at(i) + 1;
    if (suffix_len >= parent + 1) {
      nodes.push_back(LcpNode{i, i, parent + 1, suffix_len});
    }
  }

  // Internal nodes via the classic LCP-interval stack scan.
  struct Entry {
    uint32_t lcp, lb;
  };
  std::vector<Entry> stack;
  stack.push_back({0, 1});
  for (uint32_t i = 2; i <= n + 1; i++) {
    uint32_t l = i <= n ? index.lcp_at(i) : 0;
    uint32_t lb = i - 1;
    while (stack.back().lcp > l) {
      Entry e = stack.back();
      stack.pop_back();
      uint32_t rb = i - 1;
      uint32_t parent = std::max(stack.back().lcp, l);
      nodes.push_back(LcpNode{e.lb, rb, parent + 1, e.lcp});
      lb = e.lb;
    }
    if (stack.back().lcp < l) stack.push_back({l, lb});
  }
  return nodes;
}

namespace {

// (len, pos) pairs ordered shortest-then-leftmost; packed for cheap min.
constexpr uint64_t kNoWitness = ~uint64_t{0};

uint64_t pack_witness(uint32_t len, Pos pos) {
  return (static_cast<uint64_t>(len) << 32) | pos;
}

ValidationResult result_from(uint64_t packed) {
  if (packed == kNoWitness) return ValidationResult{true, std::nullopt};
  return ValidationResult{false, Witness{static_cast<Pos>(packed & 0xffffffffu),
                                         static_cast<uint32_t>(packed >> 32)}};
}

}  // namespace

ValidationResult validate_k_attractor(const Text& text, const Attractor& gamma,
                                      uint64_t k, const ValidateOptions& opts) {
  gamma.check();
  if (gamma.n != text.n()) throw std::invalid_argument("validate: attractor built for a different length");
  if (k < 1 || k > text.n()) throw std::invalid_argument("validate: k out of [1..n]");

  SuffixIndex local;
  const SuffixIndex* index = opts.index;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  CrossingFinder cf(*index, text.n(), gamma.positions);
  std::vector<LcpNode> nodes = lcp_nodes(*index);

  uint64_t best = kNoWitness;
#pragma omp parallel if (opts.parallel)
  {
    uint64_t mine = kNoWitness;
#pragma omp for schedule(static) nowait
    for (long t = 0; t < static_cast<long>(nodes.size()); t++) {
      const LcpNode& nd = nodes[t];
      if (nd.min_len > k) continue;
      uint32_t dmin = cf.min_dist(SaInterval{nd.lo, nd.hi});
      if (dmin >= nd.min_len) {
        Pos leftmost = index->leftmost_occurrence(SaInterval{nd.lo, nd.hi});
        mine = std::min(mine, pack_witness(nd.min_len, leftmost));
      }
    }
#pragma omp critical
    best = std::min(best, mine);
  }
  return result_from(best);
}

namespace {

struct SubKey {
  const Symbol* ptr;
  uint32_t len;
  bool operator==(const SubKey& o) const {
    return len == o.len && std::equal(ptr, ptr + len, o.ptr);
  }
};

struct SubKeyHash {
  size_t operator()(const SubKey& k) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t i = 0; i < k.len; i++) {
      h ^= k.ptr[i];
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

ValidationResult naive_validate(const Text& text, const Attractor& gamma, uint64_t k) {
  gamma.check();
  if (gamma.n != text.n()) throw std::invalid_argument("validate: attractor built for a different length");
  if (k < 1 || k > text.n()) throw std::invalid_argument("validate: k out of [1..n]");

  size_t n = text.n();
  std::vector<uint32_t> d = succ_distance(n, gamma.positions);

  struct State {
    bool covered;
    Pos leftmost;
  };
  for (uint32_t len = 1; len <= std::min<uint64_t>(k, n); len++) {
    std::unordered_map<SubKey, State, SubKeyHash> subs;
    subs.reserve(n);
    for (Pos p = 1; p + len - 1 <= n; p++) {
      SubKey key{text.sym.data() + (p - 1), len};
      auto [it, fresh] = subs.try_emplace(key, State{false, p});
      it->second.covered = it->second.covered || d[p - 1] + 1 <= len;
    }
    uint64_t best = kNoWitness;
    for (const auto& [key, st] : subs) {
      if (!st.covered) best = std::min(best, pack_witness(len, st.leftmost));
    }
    if (best != kNoWitness) return result_from(best);
  }
  return ValidationResult{true, std::nullopt};
}

namespace {

uint64_t binom(uint32_t n, uint32_t r) {
  if (r > n) return 0;
  uint64_t out = 1;
  for (uint32_t i = 1; i <= r; i++) out = out * (n - r + i) / i;
  return out;
}

// r-th (0-based) size-s subset of [1..n] in lexicographic order.
void unrank_combination(uint32_t n, uint32_t s, uint64_t r, std::vector<Pos>& out) {
  out.clear();
  Pos start = 1;
  for (uint32_t j = 0; j < s; j++) {
    for (Pos p = start;; p++) {
      uint64_t cnt = binom(n - p, s - 1 - j);
      if (r < cnt) {
        out.push_back(p);
        start = p + 1;
        break;
      }
      r -= cnt;
    }
  }
}

// Direct-scan validation for tiny texts; avoids any per-candidate tables.
bool valid_small(const SuffixIndex& index, const std::vector<LcpNode>& nodes,
                 uint64_t k, std::span<const Pos> positions, std::vector<uint32_t>& d) {
  uint32_t n = static_cast<uint32_t>(index.n());
  uint32_t next = kNoSucc;
  size_t mi = positions.size();
  for (uint32_t p = n; p >= 1; p--) {
    if (mi > 0 && positions[mi - 1] == p) {
      next = p;
      mi--;
    }
    d[p - 1] = next == kNoSucc ? kNoSucc : next - p;
    if (p == 1) break;
  }
  for (const LcpNode& nd : nodes) {
    if (nd.min_len > k) continue;
    uint32_t dmin = kNoSucc;
    for (uint32_t i = nd.lo; i <= nd.hi; i++) dmin = std::min(dmin, d[index.sa_at(i) - 1]);
    if (dmin >= nd.min_len) return false;
  }
  return true;
}

}  // namespace

Attractor min_attractor_brute(const Text& text, uint64_t k, const SuffixIndex* prebuilt,
                              bool parallel) {
  uint32_t n = static_cast<uint32_t>(text.n());
  if (n > 20) throw std::invalid_argument("min_attractor_brute: text too long (n <= 20)");
  if (k < 1 || k > n) throw std::invalid_argument("min_attractor_brute: k out of [1..n]");

  SuffixIndex local;
  const SuffixIndex* index = prebuilt;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  std::vector<LcpNode> nodes = lcp_nodes(*index);

  // Lower bounds: one position per distinct symbol, and each position covers
  // at most k distinct length-k substrings.
  std::vector<Symbol> distinct = text.sym;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  uint64_t sigma_k = 0;
  for (uint32_t i = 1; i <= n; i++) {
    if (index->lcp_at(i) < k && n - index->sa_at(i) + 1 >= k) sigma_k++;
  }
  uint32_t lower = std::max<uint64_t>(distinct.size(), (sigma_k + k - 1) / k);
  lower = std::max<uint32_t>(lower, 1);

  for (uint32_t s = lower; s <= n; s++) {
    uint64_t total = binom(n, s);
    uint64_t best_rank = ~uint64_t{0};
#pragma omp parallel if (parallel)
    {
      std::vector<Pos> cand;
      std::vector<uint32_t> d(n);
      uint64_t mine = ~uint64_t{0};
#pragma omp for schedule(dynamic, 64) nowait
      for (long long r = 0; r < static_cast<long long>(total); r++) {
        uint64_t limit;
#pragma omp atomic read
        limit = best_rank;
        if (static_cast<uint64_t>(r) > limit) continue;
        unrank_combination(n, s, static_cast<uint64_t>(r), cand);
        if (valid_small(*index, nodes, k, cand, d)) {
          mine = std::min(mine, static_cast<uint64_t>(r));
#pragma omp critical
          best_rank = std::min(best_rank, mine);
        }
      }
    }
    if (best_rank != ~uint64_t{0}) {
      std::vector<Pos> cand;
      unrank_combination(n, s, best_rank, cand);
      return Attractor::of(std::move(cand), n, k);
    }
  }
  throw std::logic_error("min_attractor_brute: no attractor found");  // {1..n} always valid
}

}  // namespace attractor
