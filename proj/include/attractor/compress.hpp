#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// ---------------------------------------------------------------------------
// LZ77 (greedy longest previous factor, sources may not overlap phrases)

struct Lz77Phrase {
  Symbol literal = 0;  // set when len == 0
  Pos src = 0;
  uint32_t len = 0;  // copy length; 0 marks a literal (which covers 1 symbol)

  bool is_literal() const { return len == 0; }
  uint32_t cover() const { return is_literal() ? 1 : len; }
};

struct Lz77Parse {
  std::vector<Lz77Phrase> phrases;
  uint64_t n = 0;  // decoded length

  size_t z() const { return phrases.size(); }
  std::vector<Pos> phrase_ends() const;
};

// Greedy left-to-right parse into longest previous non-overlapping factors;
// among the sources realizing the longest factor the leftmost is chosen.
Lz77Parse lz77_parse(const Text& text, const SuffixIndex* prebuilt = nullptr);

// Rejects copies that reach at or past their own phrase (violated
// non-overlap shows up as a reference before definition).
Text lz77_decode(const Lz77Parse& parse);

// ---------------------------------------------------------------------------
// Run-length BWT

struct Rlbwt {
  struct Run {
    uint64_t len;
    Symbol sym;
  };
  std::vector<Run> runs;
  uint64_t n = 0;

  size_t r() const { return runs.size(); }
};

// Requires a sentinel text; the run list is minimal (adjacent runs differ).
Rlbwt rlbwt_build(const Text& text, const SuffixIndex* prebuilt = nullptr);

// Inverts via LF-mapping steps. Rejects run lists that do not expand to a
// permutation-consistent BWT with exactly one sentinel.
Text rlbwt_invert(const Rlbwt& rlbwt);

// ---------------------------------------------------------------------------
// Macro schemes

struct MacroScheme {
  struct Copy {
    Pos dst_lo, dst_hi;
    Pos src_lo, src_hi;
  };
  struct Literal {
    Pos pos;
    Symbol sym;
  };
  std::vector<Copy> copies;
  std::vector<Literal> literals;
  uint64_t n = 0;

  size_t b() const { return copies.size() + literals.size(); }
};

// Fixed-point decoding: literal positions seed the worklist, copies propagate
// one position at a time. Throws with an unresolved-position witness when the
// scheme leaves positions undetermined, and rejects conflicting assignments.
Text macro_decode(const MacroScheme& scheme);

// An LZ77 parse is a (unidirectional) macro scheme with b = z directives.
MacroScheme macro_from_lz77(const Lz77Parse& parse);

// ---------------------------------------------------------------------------
// Collage systems

struct CollageSystem {
  struct Terminal {
    Symbol sym;
  };
  struct Pair {
    uint32_t left, right;
  };
  struct Power {
    uint32_t base;
    uint64_t count;  // >= 2
  };
  struct Slice {
    uint32_t base;
    uint64_t lo, hi;  // 1-based inclusive into the base expansion
  };
  using Rule = std::variant<Terminal, Pair, Power, Slice>;

  std::vector<Rule> rules;  // rule ids are 1-based indices
  uint32_t start = 0;

  size_t c() const { return rules.size(); }
  const Rule& rule(uint32_t id) const { return rules[id - 1]; }
};

// Expansion length of every rule (memoized, cycle-checked). Lengths above
// 2^30 symbols are rejected as out of desk scale.
std::vector<uint64_t> collage_lengths(const CollageSystem& system);

// Expands the start nonterminal. Rejects cycles and out-of-bounds slices.
Text collage_expand(const CollageSystem& system);

// Height of every rule under the usual inductive definition.
std::vector<uint32_t> collage_heights(const CollageSystem& system);

// ---------------------------------------------------------------------------
// Interchange formats (one record per line, 1-based decimal positions)

Lz77Parse read_lz77(const std::filesystem::path& path);
void write_lz77(const std::filesystem::path& path, const Lz77Parse& parse);

Rlbwt read_rlbwt(const std::filesystem::path& path);
void write_rlbwt(const std::filesystem::path& path, const Rlbwt& rlbwt);

MacroScheme read_macro(const std::filesystem::path& path);
void write_macro(const std::filesystem::path& path, const MacroScheme& scheme);

CollageSystem read_collage(const std::filesystem::path& path);
void write_collage(const std::filesystem::path& path, const CollageSystem& system);

}  // namespace attractor
