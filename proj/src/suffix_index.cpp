#include "attractor/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace attractor {

template <typename T>
SparseMin<T>::SparseMin(std::vector<T> base) {
  if (base.empty()) return;
  rows_.push_back(std::move(base));
  size_t n = rows_[0].size();
  for (size_t len = 2; len <= n; len *= 2) {
    const auto& prev = rows_.back();
    std::vector<T> row(n - len + 1);
    for (size_t i = 0; i + len <= n; i++) row[i] = std::min(prev[i], prev[i + len / 2]);
    rows_.push_back(std::move(row));
  }
}

template <typename T>
T SparseMin<T>::min(uint32_t lo, uint32_t hi) const {
  size_t a = lo - 1, b = hi - 1;
  size_t k = std::bit_width(b - a + 1) - 1;
  return std::min(rows_[k][a], rows_[k][b + 1 - (size_t{1} << k)]);
}

template class SparseMin<uint32_t>;
template class SparseMin<uint64_t>;

namespace {

// Prefix-doubling suffix sort; each round sorts by (rank[i], rank[i+h]).
std::vector<uint32_t> sort_suffixes(const std::vector<Symbol>& s) {
  size_t n = s.size();
  std::vector<uint32_t> sa(n), rank(n), tmp(n);
  for (size_t i = 0; i < n; i++) sa[i] = static_cast<uint32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) { return s[a] < s[b]; });
  rank[sa[0]] = 0;
  for (size_t i = 1; i < n; i++) {
    rank[sa[i]] = rank[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);
  }
  for (size_t h = 1; h < n; h *= 2) {
    auto key = [&](uint32_t i) {
      uint64_t second = i + h < n ? rank[i + h] + 1 : 0;
      return (static_cast<uint64_t>(rank[i]) << 32) | second;
    };
    std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) {
      uint64_t ka = key(a), kb = key(b);
      return ka != kb ? ka < kb : a < b;
    });
    tmp[sa[0]] = 0;
    for (size_t i = 1; i < n; i++) {
      tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i]) != key(sa[i - 1]) ? 1 : 0);
    }
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

}  // namespace

SuffixIndex build_suffix_index(const Text& text) {
  if (text.sym.empty()) throw std::invalid_argument("suffix index: empty text");
  size_t n = text.n();
  SuffixIndex idx;
  idx.sa = sort_suffixes(text.sym);
  for (auto& v : idx.sa) v += 1;  // to 1-based positions

  idx.isa.resize(n);
  for (size_t i = 0; i < n; i++) idx.isa[idx.sa[i] - 1] = static_cast<uint32_t>(i + 1);

  // Kasai LCP.
  idx.lcp.assign(n, 0);
  uint32_t h = 0;
  for (size_t p = 1; p <= n; p++) {
    uint32_t r = idx.isa[p - 1];
    if (r == 1) {
      h = 0;
      continue;
    }
    uint32_t q = idx.sa[r - 2];
    while (p + h <= n && q + h <= n && text.at(static_cast<Pos>(p + h)) == text.at(q + h)) h++;
    idx.lcp[r - 1] = h;
    if (h > 0) h--;
  }

  idx.bwt.resize(n);
  for (size_t i = 0; i < n; i++) {
    uint32_t p = idx.sa[i];
    idx.bwt[i] = p > 1 ? text.at(p - 1) : text.at(static_cast<Pos>(n));
  }

  idx.sa_min = SparseMin<uint32_t>(idx.sa);
  return idx;
}

namespace {

// Compares pattern against the suffix starting at p. Returns <0, 0, >0 like
// a three-way compare where the suffix is truncated to |pattern| symbols;
// a proper-prefix suffix compares smaller.
int compare_at(const Text& text, Pos p, std::span<const Symbol> pattern) {
  size_t n = text.n();
  for (size_t i = 0; i < pattern.size(); i++) {
    if (p + i > n) return -1;
    Symbol c = text.at(static_cast<Pos>(p + i));
    if (c != pattern[i]) return c < pattern[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

SaInterval occurrences(const SuffixIndex& index, const Text& text,
                       std::span<const Symbol> pattern) {
  if (pattern.empty()) throw std::invalid_argument("occurrences: empty pattern");
  size_t n = index.n();
  // lo = first suffix >= pattern, hi = first suffix > all pattern-prefixed.
  uint32_t lo = 1, hi = static_cast<uint32_t>(n) + 1;
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    if (compare_at(text, index.sa_at(mid), pattern) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  uint32_t lo2 = lo, hi2 = static_cast<uint32_t>(n) + 1;
  while (lo2 < hi2) {
    uint32_t mid = lo2 + (hi2 - lo2) / 2;
    if (compare_at(text, index.sa_at(mid), pattern) <= 0) {
      lo2 = mid + 1;
    } else {
      hi2 = mid;
    }
  }
  return SaInterval{lo, lo2 - 1};
}

SaInterval occurrence_interval(const SuffixIndex& index, const Text& text, Pos p,
                               uint32_t len) {
  if (p + len - 1 > text.n()) throw std::invalid_argument("occurrence_interval: out of range");
  return occurrences(index, text, std::span<const Symbol>(text.sym).subspan(p - 1, len));
}

std::vector<uint32_t> succ_distance(size_t n, std::span<const Pos> marked) {
  for (size_t i = 0; i < marked.size(); i++) {
    if (marked[i] < 1 || marked[i] > n) throw std::invalid_argument("succ_distance: position out of range");
    if (i > 0 && marked[i] <= marked[i - 1]) throw std::invalid_argument("succ_distance: positions not strictly increasing");
  }
  std::vector<uint32_t> d(n, kNoSucc);
  size_t mi = marked.size();
  uint32_t next = kNoSucc;
  for (size_t p = n; p >= 1; p--) {
    if (mi > 0 && marked[mi - 1] == p) {
      next = static_cast<uint32_t>(p);
      mi--;
    }
    d[p - 1] = next == kNoSucc ? kNoSucc : next - static_cast<uint32_t>(p);
    if (p == 1) break;
  }
  return d;
}

}  // namespace attractor
