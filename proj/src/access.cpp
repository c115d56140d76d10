#include "attractor/access.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "attractor/validate.hpp"

namespace attractor {

namespace {

uint32_t symbol_bits(uint32_t sigma) {
  return std::max<uint32_t>(1, std::bit_width(static_cast<uint32_t>(sigma)));  // covers 0..sigma
}

void store_append(std::vector<uint64_t>& store, uint64_t& bits, uint32_t width, Symbol s) {
  uint64_t word = bits / 64, off = bits % 64;
  if (word >= store.size()) store.push_back(0);
  store[word] |= static_cast<uint64_t>(s) << off;
  if (off + width > 64) {
    store.push_back(0);
    store[word + 1] |= static_cast<uint64_t>(s) >> (64 - off);
  }
  bits += width;
}

// Geometry of one level-i slot (i in [1..levels-1]): 2*tau aligned blocks
// then 2*tau-1 half-shifted ones, all of length s_(i+1), laid over the two
// context substrings [j-s_i+1 .. j+s_i].
struct SlotGeom {
  int64_t abs_start;  // may fall outside [1..n]
  uint64_t len;
};

SlotGeom slot_geom(uint64_t j, uint64_t s_ctx, uint64_t block_len, uint32_t slot, uint32_t tau) {
  uint64_t half = block_len / 2;
  int64_t base = static_cast<int64_t>(j) - static_cast<int64_t>(s_ctx);
  if (slot < 2 * tau) {
    return {base + static_cast<int64_t>(slot * block_len) + 1, block_len};
  }
  uint32_t k = slot - 2 * tau;
  return {base + static_cast<int64_t>(k * block_len + half) + 1, block_len};
}

// Slot containing [rel .. rel+len-1] (rel is 0-based within the contexts).
// Requires len <= floor(block_len/2)+1.
uint32_t slot_for(uint64_t rel, uint64_t len, uint64_t block_len, uint32_t tau) {
  uint64_t k = rel / block_len;
  if (rel + len <= (k + 1) * block_len) return static_cast<uint32_t>(k);
  return 2 * tau + static_cast<uint32_t>((rel - block_len / 2) / block_len);
}

// s1, exponent, alpha and bits follow from (n, sigma, tau, W, gamma') alone,
// so the loader can rederive them.
void derive_geometry(AttractorIndex& ix) {
  ix.bits = symbol_bits(ix.sigma);
  uint64_t per_mark = (ix.n + ix.marks.size() - 1) / ix.marks.size();
  ix.s1 = 1;
  ix.exponent = 0;
  while (ix.s1 < per_mark) {
    ix.s1 *= ix.tau;
    ix.exponent++;
  }
  ix.alpha = static_cast<uint32_t>(std::max<uint64_t>(
      1, (static_cast<uint64_t>(ix.word_width) * ix.exponent + ix.bits - 1) / ix.bits));
}

}  // namespace

uint64_t AttractorIndex::context_len(uint32_t level) const {
  uint64_t s = s1;
  for (uint32_t i = 1; i < level; i++) s /= tau;
  return s;
}

Symbol AttractorIndex::store_at(uint64_t sym_off) const {
  uint64_t bit = sym_off * bits;
  uint64_t word = bit / 64, off = bit % 64;
  uint64_t v = store[word] >> off;
  if (off + bits > 64) v |= store[word + 1] << (64 - off);
  return static_cast<Symbol>(v & ((uint64_t{1} << bits) - 1));
}

AttractorIndex build_index(const Text& text, const Attractor& gamma, uint32_t tau,
                           uint32_t word_width, bool parallel) {
  if (tau < 2) throw std::invalid_argument("build_index: tau must be >= 2");
  if (word_width < 1) throw std::invalid_argument("build_index: word width must be positive");
  SuffixIndex sindex = build_suffix_index(text);
  ValidateOptions vopts{.parallel = parallel, .index = &sindex};
  if (!validate_k_attractor(text, gamma, text.n(), vopts).valid) {
    throw std::invalid_argument("build_index: attractor does not validate");
  }
  Attractor closed = equally_spaced_close(gamma);

  AttractorIndex ix;
  ix.n = text.n();
  ix.sigma = text.sigma;
  ix.tau = tau;
  ix.word_width = word_width;
  ix.marks = closed.positions;
  derive_geometry(ix);

  uint32_t levels = 0;
  for (uint64_t s = ix.s1; s >= 2 * static_cast<uint64_t>(ix.alpha); s /= tau) levels++;
  ix.levels = levels;

  if (ix.n <= 2 * static_cast<uint64_t>(ix.alpha) || ix.levels == 0) {
    // Plain packed storage: the structure would not beat the text itself.
    ix.levels = 0;
    ix.level_blocks.assign(1, {});
    for (uint64_t p = 1; p <= ix.n; p++) store_append(ix.store, ix.store_bits, ix.bits, text.at(p));
    return ix;
  }

  CrossingFinder cf(sindex, ix.n, ix.marks);
  auto find_pointer = [&](uint64_t a, uint64_t b, AttractorIndex::Block& blk) {
    uint32_t len = static_cast<uint32_t>(b - a + 1);
    SaInterval iv = occurrence_interval(sindex, text, static_cast<Pos>(a), len);
    std::optional<Pos> occ = cf.crossing_occurrence(iv, len);
    if (!occ) throw std::logic_error("build_index: no crossing occurrence for a validated attractor");
    uint64_t mark_pos = *occ + cf.dist_at(*occ);
    uint64_t mi = static_cast<uint64_t>(
        std::lower_bound(ix.marks.begin(), ix.marks.end(), mark_pos) - ix.marks.begin());
    blk.off = mark_pos - *occ;
    blk.mark = mi;
    // verification pass: the occurrence must reproduce the block verbatim
    for (uint32_t t = 0; t < len; t++) {
      if (text.at(static_cast<Pos>(*occ + t)) != text.at(static_cast<Pos>(a + t))) {
        throw std::logic_error("build_index: pointer target mismatch");
      }
    }
  };

  ix.level_blocks.assign(ix.levels + 1, {});

  // Level 0: ceil(n/s1) top blocks.
  uint64_t top = (ix.n + ix.s1 - 1) / ix.s1;
  ix.level_blocks[0].assign(top, {});
  // Levels 1..levels-1: 4*tau-1 slots per mark.
  for (uint32_t lv = 1; lv < ix.levels; lv++) {
    ix.level_blocks[lv].assign(ix.marks.size() * (4 * tau - 1), {});
  }
  // Final level: one context row per mark.
  ix.level_blocks[ix.levels].assign(ix.marks.size(), {});

  struct Pending {
    uint32_t level;
    uint64_t idx;
    uint64_t a, b;
  };
  std::vector<Pending> pending;

  for (uint64_t bidx = 0; bidx < top; bidx++) {
    uint64_t a = bidx * ix.s1 + 1;
    uint64_t b = std::min(ix.n, (bidx + 1) * ix.s1);
    AttractorIndex::Block& blk = ix.level_blocks[0][bidx];
    blk.flags = AttractorIndex::kPresent;
    if (b - a + 1 < ix.s1) blk.flags |= AttractorIndex::kPartial;
    if (b - a + 1 < 2) {
      blk.flags |= AttractorIndex::kFinal;
      blk.off = ix.store_bits / ix.bits;
      store_append(ix.store, ix.store_bits, ix.bits, text.at(static_cast<Pos>(a)));
    } else {
      pending.push_back({0, bidx, a, b});
    }
  }

  for (uint32_t lv = 1; lv < ix.levels; lv++) {
    uint64_t s_ctx = ix.context_len(lv);
    uint64_t blen = s_ctx / tau;
    for (uint64_t mi = 0; mi < ix.marks.size(); mi++) {
      for (uint32_t slot = 0; slot < 4 * tau - 1; slot++) {
        SlotGeom g = slot_geom(ix.marks[mi], s_ctx, blen, slot, tau);
        int64_t a = std::max<int64_t>(1, g.abs_start);
        int64_t b = std::min<int64_t>(static_cast<int64_t>(ix.n),
                                      g.abs_start + static_cast<int64_t>(g.len) - 1);
        AttractorIndex::Block& blk = ix.level_blocks[lv][mi * (4 * tau - 1) + slot];
        if (a > b) continue;  // absent: fully outside the text
        blk.flags = AttractorIndex::kPresent;
        if (b - a + 1 < static_cast<int64_t>(g.len)) blk.flags |= AttractorIndex::kPartial;
        if (b - a + 1 < 2) {
          blk.flags |= AttractorIndex::kFinal;
          blk.off = ix.store_bits / ix.bits;
          store_append(ix.store, ix.store_bits, ix.bits, text.at(static_cast<Pos>(a)));
        } else {
          pending.push_back({lv, mi * (4 * tau - 1) + slot, static_cast<uint64_t>(a),
                             static_cast<uint64_t>(b)});
        }
      }
    }
  }

  // Final level rows go to the store.
  {
    uint64_t s_ctx = ix.context_len(ix.levels);
    for (uint64_t mi = 0; mi < ix.marks.size(); mi++) {
      int64_t a = std::max<int64_t>(1, static_cast<int64_t>(ix.marks[mi]) - static_cast<int64_t>(s_ctx) + 1);
      int64_t b = std::min<int64_t>(static_cast<int64_t>(ix.n), ix.marks[mi] + s_ctx);
      AttractorIndex::Block& blk = ix.level_blocks[ix.levels][mi];
      blk.flags = AttractorIndex::kPresent | AttractorIndex::kFinal;
      if (static_cast<uint64_t>(b - a + 1) < 2 * s_ctx) blk.flags |= AttractorIndex::kPartial;
      blk.off = ix.store_bits / ix.bits;
      for (int64_t p = a; p <= b; p++) store_append(ix.store, ix.store_bits, ix.bits, text.at(static_cast<Pos>(p)));
    }
  }

  // Pointer searches are independent; run them in parallel.
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long t = 0; t < static_cast<long>(pending.size()); t++) {
    const Pending& pd = pending[t];
    find_pointer(pd.a, pd.b, ix.level_blocks[pd.level][pd.idx]);
  }
  return ix;
}

std::vector<Symbol> extract(const AttractorIndex& index, uint64_t i, uint64_t l,
                            ExtractStats* stats) {
  if (i < 1 || l < 1 || i + l - 1 > index.n) throw std::invalid_argument("extract: range out of [1..n]");
  std::vector<Symbol> out;
  out.reserve(l);

  if (index.degenerate()) {
    for (uint64_t p = i; p < i + l; p++) out.push_back(index.store_at(p - 1));
    if (stats) stats->units += 1;
    return out;
  }

  uint64_t pos = i, remaining = l;
  while (remaining > 0) {
    uint64_t bidx = (pos - 1) / index.s1;
    uint64_t block_end = std::min(index.n, (bidx + 1) * index.s1);
    uint64_t chunk = std::min({static_cast<uint64_t>(index.alpha), remaining, block_end - pos + 1});
    if (stats) stats->units += 1;

    const AttractorIndex::Block* blk = &index.level_blocks[0][bidx];
    uint64_t span_start = bidx * index.s1 + 1;
    uint64_t cur = pos;
    uint32_t lv = 0;
    while (true) {
      if (blk->flags & AttractorIndex::kFinal) {
        if (stats && lv < index.levels) stats->early_final_units += 1;
        break;
      }
      uint64_t mark = index.marks[blk->mark];
      cur = (mark - blk->off) + (cur - span_start);
      if (stats) stats->pointer_derefs += 1;
      lv++;
      if (lv == index.levels) {  // final rows
        blk = &index.level_blocks[lv][blk->mark];
        span_start = std::max<int64_t>(1, static_cast<int64_t>(mark) -
                                              static_cast<int64_t>(index.context_len(lv)) + 1);
        break;
      }
      uint64_t s_ctx = index.context_len(lv);
      uint64_t blen = s_ctx / index.tau;
      // context start may virtually precede the text; rel stays >= 0
      uint64_t rel = static_cast<uint64_t>(
          static_cast<int64_t>(cur) - (static_cast<int64_t>(mark) - static_cast<int64_t>(s_ctx) + 1));
      uint32_t slot = slot_for(rel, chunk, blen, index.tau);
      uint64_t mi = blk->mark;
      blk = &index.level_blocks[lv][mi * (4 * index.tau - 1) + slot];
      SlotGeom g = slot_geom(mark, s_ctx, blen, slot, index.tau);
      span_start = static_cast<uint64_t>(std::max<int64_t>(1, g.abs_start));
    }
    for (uint64_t t = 0; t < chunk; t++) {
      out.push_back(index.store_at(blk->off + (cur - span_start) + t));
    }
    pos += chunk;
    remaining -= chunk;
  }
  return out;
}

SpaceReport space_report(const AttractorIndex& index) {
  SpaceReport rep;
  for (const auto& level : index.level_blocks) {
    uint64_t present = 0;
    for (const auto& blk : level) {
      if (blk.flags & AttractorIndex::kPresent) {
        present++;
        if (!(blk.flags & AttractorIndex::kFinal)) rep.pointer_words += 2;
      }
    }
    rep.blocks_per_level.push_back(present);
  }
  rep.explicit_symbols = index.store_bits / std::max<uint32_t>(1, index.bits);
  rep.explicit_words = (index.store_bits + 63) / 64;
  rep.total_words = rep.pointer_words + rep.explicit_words;
  return rep;
}

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("index file: truncated");
  return v;
}

}  // namespace

void save_index(const std::filesystem::path& path, const AttractorIndex& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index: " + path.string());
  out.write("ATRX", 4);
  put<uint16_t>(out, 1);
  put<uint64_t>(out, index.n);
  put<uint32_t>(out, index.sigma);
  put<uint32_t>(out, index.tau);
  put<uint64_t>(out, index.marks.size());
  put<uint32_t>(out, index.levels);
  put<uint32_t>(out, index.word_width);
  for (Pos p : index.marks) put<uint64_t>(out, p);
  for (const auto& level : index.level_blocks) {
    put<uint64_t>(out, level.size());
    for (const auto& blk : level) {
      put<uint8_t>(out, blk.flags);
      put<uint64_t>(out, blk.off);
      // pointer blocks carry the crossed element as a position value
      bool pointer = (blk.flags & AttractorIndex::kPresent) && !(blk.flags & AttractorIndex::kFinal);
      put<uint64_t>(out, pointer ? index.marks[blk.mark] : 0);
    }
  }
  put<uint64_t>(out, index.store_bits);
  for (uint64_t w : index.store) put<uint64_t>(out, w);
}

AttractorIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "ATRX", 4) != 0) throw std::runtime_error("index file: bad magic");
  if (get<uint16_t>(in) != 1) throw std::runtime_error("index file: unsupported version");

  AttractorIndex ix;
  ix.n = get<uint64_t>(in);
  ix.sigma = get<uint32_t>(in);
  ix.tau = get<uint32_t>(in);
  uint64_t gamma = get<uint64_t>(in);
  ix.levels = get<uint32_t>(in);
  ix.word_width = get<uint32_t>(in);
  ix.marks.resize(gamma);
  for (auto& p : ix.marks) p = static_cast<Pos>(get<uint64_t>(in));
  derive_geometry(ix);

  ix.level_blocks.resize(ix.levels + 1);
  for (auto& level : ix.level_blocks) {
    level.resize(get<uint64_t>(in));
    for (auto& blk : level) {
      blk.flags = get<uint8_t>(in);
      blk.off = get<uint64_t>(in);
      uint64_t mark_pos = get<uint64_t>(in);
      bool pointer = (blk.flags & AttractorIndex::kPresent) && !(blk.flags & AttractorIndex::kFinal);
      if (pointer) {
        auto it = std::lower_bound(ix.marks.begin(), ix.marks.end(), mark_pos);
        if (it == ix.marks.end() || *it != mark_pos) throw std::runtime_error("index file: pointer to unknown element");
        blk.mark = static_cast<uint64_t>(it - ix.marks.begin());
      }
    }
  }
  ix.store_bits = get<uint64_t>(in);
  ix.store.resize((ix.store_bits + 63) / 64);
  for (auto& w : ix.store) w = get<uint64_t>(in);
  return ix;
}

}  // namespace attractor
