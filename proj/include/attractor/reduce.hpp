#pragma once

#include <cstdint>
#include <vector>

#include "attractor/attractor.hpp"
#include "attractor/compress.hpp"
#include "attractor/text.hpp"

namespace attractor {

// A macro scheme whose copy destinations tile [1..n]: explicit single
// symbols at attractor positions, copy phrases elsewhere, every copy source
// an occurrence crossing an attractor element.
struct BidirectionalParse {
  struct Phrase {
    Pos start = 0;
    uint32_t len = 0;
    bool is_explicit = false;
    Symbol sym = 0;  // explicit phrases (always length 1)
    Pos src = 0;     // copy phrases
  };
  std::vector<Phrase> phrases;  // sorted by start, tiling [1..n]
  uint64_t n = 0;
  uint32_t height = 0;  // longest copy chain measured by parse_decode

  size_t size() const { return phrases.size(); }
  MacroScheme to_macro() const;
};

// Lays phrases around the (equally-spaced-closed) attractor in doubling
// lengths toward the midpoint of each gap, then picks for every phrase the
// source occurrence whose crossing offset is smallest. The attractor must be
// a validated full attractor.
BidirectionalParse bidirectional_parse_from_attractor(const Text& text, const Attractor& gamma);

// Follows copy chains to explicit symbols; records the chain-depth height.
// Rejects non-terminating chains with a step budget.
Text parse_decode(const BidirectionalParse& parse);

// Builds the parse, then collapses phrases in increasing length order:
// length-1 runs are blocked into pairs/triples, each longer phrase becomes
// one slice of an already-collapsed region plus at most two pair rules to
// merge with its neighbours.
CollageSystem collage_from_attractor(const Text& text, const Attractor& gamma);

}  // namespace attractor
