#pragma once

#include "attractor/attractor.hpp"
#include "attractor/compress.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Reductions from compressed representations to attractors. Each returned
// set claims full coverage (k = n) and is validated by the test suites.

// Phrase end positions; |result| = z. Every substring has a primary
// occurrence crossing a phrase boundary.
Attractor attractor_from_lz77(const Lz77Parse& parse);

// Text positions of BWT run starts (position of L[j] is sa[j]-1, wrapping
// to n); |result| = r. Requires a sentinel text.
Attractor attractor_from_rlbwt(const Text& text, const SuffixIndex* prebuilt = nullptr);

// Both endpoints of every copy destination plus every literal position,
// deduplicated; |result| <= 2b. Rejects undecodable schemes.
Attractor attractor_from_macro(const MacroScheme& scheme);

// One position per rule realized in the derivation of the start symbol:
// a terminal's own position, the split point of a pair, the end of the
// first repetition of a power; slices insert nothing. Realizations are
// taken leftmost-first during a single expansion traversal; |result| <= c.
Attractor attractor_from_collage(const CollageSystem& system);

}  // namespace attractor
