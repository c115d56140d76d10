#include "attractor/approx.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attractor {

void SetCoverInstance::check() const {
  if (universe_size == 0) throw std::invalid_argument("set cover: empty universe");
  std::vector<bool> hit(universe_size + 1, false);
  std::vector<uint32_t> ids;
  for (const auto& s : sets) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("set cover: duplicate set id");
  }
  for (const auto& s : sets) {
    if (k_bound && s.elems.size() > *k_bound) {
      throw std::invalid_argument("set cover: set " + std::to_string(s.id) + " exceeds the size bound");
    }
    for (size_t i = 0; i < s.elems.size(); i++) {
      uint32_t e = s.elems[i];
      if (e < 1 || e > universe_size) throw std::invalid_argument("set cover: element out of universe");
      if (i > 0 && s.elems[i] <= s.elems[i - 1]) throw std::invalid_argument("set cover: set not sorted/distinct");
      hit[e] = true;
    }
  }
  for (uint64_t e = 1; e <= universe_size; e++) {
    if (!hit[e]) throw std::invalid_argument("set cover: universe element " + std::to_string(e) + " uncoverable");
  }
}

std::vector<uint32_t> greedy_set_cover(const SetCoverInstance& instance, bool parallel) {
  instance.check();
  size_t m = instance.sets.size();
  std::vector<bool> covered(instance.universe_size + 1, false);
  uint64_t remaining = instance.universe_size;
  std::vector<bool> used(m, false);
  std::vector<uint32_t> chosen;

  while (remaining > 0) {
    // (gain, -id) maximum, packed so the parallel reduction is order-free.
    int64_t best = -1;
    int64_t best_idx = -1;
#pragma omp parallel if (parallel)
    {
      int64_t my_best = -1, my_idx = -1;
#pragma omp for schedule(static) nowait
      for (long i = 0; i < static_cast<long>(m); i++) {
        if (used[i]) continue;
        int64_t gain = 0;
        for (uint32_t e : instance.sets[i].elems) gain += covered[e] ? 0 : 1;
        if (gain > my_best || (gain == my_best && my_idx >= 0 &&
                               instance.sets[i].id < instance.sets[my_idx].id)) {
          my_best = gain;
          my_idx = i;
        }
      }
#pragma omp critical
      {
        if (my_best > best || (my_best == best && my_idx >= 0 && best_idx >= 0 &&
                               instance.sets[my_idx].id < instance.sets[best_idx].id)) {
          best = my_best;
          best_idx = my_idx;
        }
      }
    }
    if (best <= 0) throw std::logic_error("set cover: positive gain expected for a coverable universe");
    used[best_idx] = true;
    chosen.push_back(instance.sets[best_idx].id);
    for (uint32_t e : instance.sets[best_idx].elems) {
      if (!covered[e]) {
        covered[e] = true;
        remaining--;
      }
    }
  }
  return chosen;
}

double harmonic(uint64_t p) {
  double h = 0;
  for (uint64_t i = 1; i <= p; i++) h += 1.0 / static_cast<double>(i);
  return h;
}

namespace {

// Universe ids for all distinct substrings of length <= k: one pass per
// length over the SA, where maximal runs with lcp >= len are the distinct
// substrings of that length.
struct SubstringUniverse {
  uint64_t count = 0;
  // per length: id of the run containing each SA rank (0 = suffix too short)
  std::vector<std::vector<uint32_t>> run_id;
};

SubstringUniverse build_universe(const Text& text, const SuffixIndex& index, uint64_t k) {
  uint32_t n = static_cast<uint32_t>(text.n());
  SubstringUniverse u;
  u.run_id.assign(k + 1, {});
  for (uint32_t len = 1; len <= k; len++) {
    auto& ids = u.run_id[len];
    ids.assign(n + 1, 0);
    uint32_t cur = 0;
    for (uint32_t i = 1; i <= n; i++) {
      if (n - index.sa_at(i) + 1 < len) continue;  // suffix too short
      if (cur == 0 || index.lcp_at(i) < len) {
        cur = static_cast<uint32_t>(++u.count);
      }
      ids[i] = cur;
    }
  }
  return u;
}

}  // namespace

Attractor k_attractor_greedy(const Text& text, uint64_t k, bool parallel) {
  uint64_t n = text.n();
  if (k < 1 || k > n) throw std::invalid_argument("k_attractor_greedy: k out of [1..n]");
  if (n * k * k > 100000000ull) throw std::invalid_argument("k_attractor_greedy: n*k^2 cap exceeded");

  SuffixIndex index = build_suffix_index(text);
  SubstringUniverse universe = build_universe(text, index, k);

  SetCoverInstance instance;
  instance.universe_size = universe.count;
  instance.sets.resize(n);
  for (uint64_t i = 1; i <= n; i++) instance.sets[i - 1].id = static_cast<uint32_t>(i);
  for (uint32_t len = 1; len <= k; len++) {
    const auto& ids = universe.run_id[len];
    for (uint64_t p = 1; p + len - 1 <= n; p++) {
      uint32_t id = ids[index.isa_at(static_cast<Pos>(p))];
      // the occurrence [p..p+len-1] puts this substring into every set it touches
      for (uint64_t i = p; i <= p + len - 1; i++) instance.sets[i - 1].elems.push_back(id);
    }
  }
  for (auto& s : instance.sets) {
    std::sort(s.elems.begin(), s.elems.end());
    s.elems.erase(std::unique(s.elems.begin(), s.elems.end()), s.elems.end());
  }

  std::vector<uint32_t> chosen = greedy_set_cover(instance, parallel);
  std::vector<Pos> positions(chosen.begin(), chosen.end());
  return Attractor::of(std::move(positions), n, k);
}

Attractor k_attractor_2k(const Text& text, uint64_t k) {
  uint64_t n = text.n();
  if (k < 1 || k > n) throw std::invalid_argument("k_attractor_2k: k out of [1..n]");
  Text doubled = text.square();
  SuffixIndex index = build_suffix_index(doubled);

  std::vector<Pos> starts;
  uint64_t nn = doubled.n();
  Pos leftmost = 0;
  bool open = false;
  for (uint32_t i = 1; i <= nn; i++) {
    if (nn - index.sa_at(i) + 1 < k) continue;
    if (!open || index.lcp_at(i) < k) {
      if (open) starts.push_back(leftmost);
      leftmost = index.sa_at(i);
      open = true;
    } else {
      leftmost = std::min(leftmost, index.sa_at(i));
    }
  }
  if (open) starts.push_back(leftmost);

  // A length-k window fully inside the second copy recurs one period earlier,
  // so every leftmost start lies in [1..n].
  for (Pos p : starts) {
    if (p > n) throw std::logic_error("k_attractor_2k: leftmost start beyond the first copy");
  }
  return Attractor::of(std::move(starts), n, k);
}

uint64_t sigma_k(const Text& text, uint64_t k, const SuffixIndex* prebuilt) {
  uint64_t n = text.n();
  if (k < 1 || k > n) throw std::invalid_argument("sigma_k: k out of [1..n]");
  SuffixIndex local;
  const SuffixIndex* index = prebuilt;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  uint64_t count = 0;
  for (uint32_t i = 1; i <= n; i++) {
    if (n - index->sa_at(i) + 1 >= k && index->lcp_at(i) < k) count++;
  }
  return count;
}

uint64_t attractor_lower_bound(const Text& text, uint64_t k) {
  uint64_t s = sigma_k(text.square(), k);
  return (s + k - 1) / k - 1;
}

SetCoverInstance read_set_cover(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  SetCoverInstance inst;
  uint64_t m = 0;
  if (!(in >> inst.universe_size >> m)) throw std::runtime_error("set cover file: bad header");
  for (uint64_t i = 0; i < m; i++) {
    SetCoverInstance::Set s;
    uint64_t cnt;
    if (!(in >> s.id >> cnt)) throw std::runtime_error("set cover file: bad set record");
    s.elems.resize(cnt);
    for (auto& e : s.elems) {
      if (!(in >> e)) throw std::runtime_error("set cover file: truncated set record");
    }
    std::sort(s.elems.begin(), s.elems.end());
    inst.sets.push_back(std::move(s));
  }
  inst.check();
  return inst;
}

void write_set_cover(const std::filesystem::path& path, const SetCoverInstance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << instance.universe_size << " " << instance.sets.size() << "\n";
  for (const auto& s : instance.sets) {
    out << s.id << " " << s.elems.size();
    for (uint32_t e : s.elems) out << " " << e;
    out << "\n";
  }
}

}  // namespace attractor
