#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "attractor/attractor.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Universe {1..universe_size} plus identified subsets. k_bound, when set,
// caps every set's cardinality.
struct SetCoverInstance {
  uint64_t universe_size = 0;
  struct Set {
    uint32_t id;
    std::vector<uint32_t> elems;  // sorted, distinct, within [1..universe_size]
  };
  std::vector<Set> sets;
  std::optional<uint32_t> k_bound;

  void check() const;
};

// Classical greedy cover: repeatedly the set with the largest residual gain,
// ties to the smallest id. Chosen ids in choice order. Throws when the sets
// cannot cover the universe. Gains are recomputed in parallel; the chosen
// sequence is deterministic.
std::vector<uint32_t> greedy_set_cover(const SetCoverInstance& instance, bool parallel = true);

// p-th harmonic number, the greedy approximation ratio for sets of size <= p.
double harmonic(uint64_t p);

// Set-cover reduction of the k-attractor problem: universe = distinct
// substrings of length <= k, one candidate set per text position holding
// every substring with an occurrence through that position. Enforces
// n*k^2 <= 10^8 before building. Output is a valid k-attractor of size
// <= H(k(k+1)/2) * optimum.
Attractor k_attractor_greedy(const Text& text, uint64_t k, bool parallel = true);

// Start positions of the leftmost occurrences of all distinct length-k
// substrings of the doubled text; a valid k-attractor of size sigma_k(T^2)
// <= 2k * optimum. All leftmost starts provably lie in [1..n].
Attractor k_attractor_2k(const Text& text, uint64_t k);

// Number of distinct length-k substrings of the given text.
uint64_t sigma_k(const Text& text, uint64_t k, const SuffixIndex* prebuilt = nullptr);

// ceil(sigma_k(T^2)/k) - 1, a lower bound on the minimum k-attractor size.
uint64_t attractor_lower_bound(const Text& text, uint64_t k);

// File format: first line "u m", then per set: "id n_i e_1 ... e_{n_i}".
SetCoverInstance read_set_cover(const std::filesystem::path& path);
void write_set_cover(const std::filesystem::path& path, const SetCoverInstance& instance);

}  // namespace attractor
