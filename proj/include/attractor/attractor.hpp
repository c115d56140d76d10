#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "attractor/text.hpp"

namespace attractor {

// A set of positions claimed to cover every distinct substring of length <= k
// of a length-n text. k == n claims a full attractor. The claim is only
// trustworthy after validation.
struct Attractor {
  std::vector<Pos> positions;  // strictly increasing, within [1..n]
  uint64_t n = 0;
  uint64_t k = 0;

  size_t size() const { return positions.size(); }

  // Throws std::invalid_argument when sortedness/range invariants fail.
  void check() const;

  static Attractor full(uint64_t n);                        // {1..n}
  static Attractor of(std::vector<Pos> positions, uint64_t n, uint64_t k);
};

// Union with extra positions; preserves the k claim. A superset of a valid
// attractor is itself valid.
Attractor superset_close(const Attractor& gamma, std::span<const Pos> extra);

// Adds |gamma| equally spaced positions (multiples of ceil(n/|gamma|),
// clamped to [1..n]) so consecutive elements are at most ceil(n/|gamma|)
// apart and position n is always present.
Attractor equally_spaced_close(const Attractor& gamma);

// File format: optional "# n=<n> k=<k>" header, then one 1-based position
// per line, strictly increasing.
Attractor read_attractor(const std::filesystem::path& path, uint64_t fallback_n);
void write_attractor(const std::filesystem::path& path, const Attractor& gamma);

// Distance from every text position to its next attractor element (see
// succ_distance in suffix_index.hpp). Requires gamma.n == text length.
std::vector<uint32_t> succ_distance(const Text& text, const Attractor& gamma);

}  // namespace attractor
