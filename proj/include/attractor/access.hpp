#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "attractor/attractor.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Multi-level block structure over a text and an attractor. Level 0 tiles
// the (virtually padded) text into top blocks of length s1, a power of tau.
// Each deeper level i surrounds every attractor element with two context
// substrings of length s_i = s1/tau^(i-1), cut into 2*tau aligned plus
// 2*tau-1 half-shifted blocks of length s_(i+1). Every block points to an
// occurrence of itself crossing an attractor element, expressed as
// <off, j>: the occurrence starts at j - off. The last level stores its
// context rows verbatim in a bit-packed symbol store.
struct AttractorIndex {
  static constexpr uint8_t kPresent = 1;
  static constexpr uint8_t kPartial = 2;
  static constexpr uint8_t kFinal = 4;

  struct Block {
    uint8_t flags = 0;
    uint64_t off = 0;   // pointer offset, or store offset for final blocks
    uint64_t mark = 0;  // index into marks for pointer blocks
  };

  uint64_t n = 0;
  uint32_t sigma = 0;
  uint32_t tau = 0;
  uint32_t word_width = 0;  // W in the extraction-unit formula
  uint32_t levels = 0;      // pointer levels; 0 means plain packed storage
  uint64_t s1 = 0;          // top block length (power of tau, >= ceil(n/gamma'))
  uint32_t exponent = 0;    // s1 = tau^exponent
  uint32_t alpha = 0;       // extraction unit, in symbols
  uint32_t bits = 0;        // bits per packed symbol
  std::vector<Pos> marks;   // the equally-spaced-closed attractor
  std::vector<std::vector<Block>> level_blocks;  // levels 0..levels (last = rows)
  std::vector<uint64_t> store;
  uint64_t store_bits = 0;

  bool degenerate() const { return levels == 0; }
  uint64_t context_len(uint32_t level) const;  // s_level, level >= 1
  Symbol store_at(uint64_t sym_off) const;
};

struct ExtractStats {
  uint64_t units = 0;
  uint64_t pointer_derefs = 0;
  // units that reached a boundary-clamped single-symbol block before the
  // last level; all other units dereference exactly `levels` pointers
  uint64_t early_final_units = 0;
};

// Builds the index; validates the attractor first (rejects invalid ones) and
// verifies every stored pointer against the text. Block pointer searches run
// in parallel with deterministic results.
AttractorIndex build_index(const Text& text, const Attractor& gamma, uint32_t tau,
                           uint32_t word_width = 64, bool parallel = true);

// T[i..i+l-1]; works from the index alone. Each extraction unit walks
// exactly `levels` pointers and then copies from the store.
std::vector<Symbol> extract(const AttractorIndex& index, uint64_t i, uint64_t l,
                            ExtractStats* stats = nullptr);

struct SpaceReport {
  std::vector<uint64_t> blocks_per_level;  // present blocks, per level
  uint64_t pointer_words = 0;
  uint64_t explicit_symbols = 0;
  uint64_t explicit_words = 0;  // 64-bit words of packed store
  uint64_t total_words = 0;
};
SpaceReport space_report(const AttractorIndex& index);

// Versioned little-endian binary format, magic "ATRX".
void save_index(const std::filesystem::path& path, const AttractorIndex& index);
AttractorIndex load_index(const std::filesystem::path& path);

}  // namespace attractor
