#include "attractor/reduce.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "attractor/validate.hpp"

namespace attractor {

MacroScheme BidirectionalParse::to_macro() const {
  MacroScheme m;
  m.n = n;
  for (const Phrase& ph : phrases) {
    if (ph.is_explicit) {
      m.literals.push_back(MacroScheme::Literal{ph.start, ph.sym});
    } else {
      m.copies.push_back(MacroScheme::Copy{ph.start, ph.start + ph.len - 1, ph.src, ph.src + ph.len - 1});
    }
  }
  return m;
}

namespace {

// Doubling-length phrases filling the open gap (a, b): lengths 1, 2, 4, ...
// rightward from a+1 truncated at the midpoint, mirrored leftward from b-1.
void lay_gap(std::vector<BidirectionalParse::Phrase>& out, uint64_t a, uint64_t b) {
  if (b <= a + 1) return;
  uint64_t m = (a + b) / 2;
  uint64_t pos = a + 1, len = 1;
  while (pos <= m) {
    uint64_t end = std::min(pos + len - 1, m);
    out.push_back({static_cast<Pos>(pos), static_cast<uint32_t>(end - pos + 1), false, 0, 0});
    pos = end + 1;
    len *= 2;
  }
  pos = b - 1;
  len = 1;
  while (pos >= m + 1) {
    uint64_t start = std::max(pos - len + 1, m + 1);
    out.push_back({static_cast<Pos>(start), static_cast<uint32_t>(pos - start + 1), false, 0, 0});
    if (start == m + 1) break;
    pos = start - 1;
    len *= 2;
  }
}

Text decode_impl(const BidirectionalParse& parse, uint32_t* height_out) {
  uint64_t n = parse.n;
  if (n == 0 || parse.phrases.empty()) throw std::invalid_argument("parse_decode: empty parse");
  uint64_t at = 1;
  for (const auto& ph : parse.phrases) {
    if (ph.start != at || ph.len == 0) throw std::invalid_argument("parse_decode: phrases do not tile the text");
    if (ph.is_explicit && ph.len != 1) throw std::invalid_argument("parse_decode: explicit phrase longer than one symbol");
    at += ph.len;
  }
  if (at != n + 1) throw std::invalid_argument("parse_decode: phrases do not tile the text");

  std::vector<size_t> phrase_of(n);
  for (size_t i = 0; i < parse.phrases.size(); i++) {
    const auto& ph = parse.phrases[i];
    if (!ph.is_explicit && (ph.src < 1 || ph.src + ph.len - 1 > n)) {
      throw std::invalid_argument("parse_decode: source out of range");
    }
    for (uint64_t p = ph.start; p < ph.start + ph.len; p++) phrase_of[p - 1] = i;
  }

  std::vector<Symbol> sym(n, 0);
  std::vector<uint32_t> depth(n, UINT32_MAX);  // UINT32_MAX marks unresolved
  uint32_t height = 0;
  std::vector<Pos> chain;
  for (uint64_t p = 1; p <= n; p++) {
    if (depth[p - 1] != UINT32_MAX) continue;
    Pos q = static_cast<Pos>(p);
    chain.clear();
    while (depth[q - 1] == UINT32_MAX) {
      const auto& ph = parse.phrases[phrase_of[q - 1]];
      if (ph.is_explicit) {
        sym[q - 1] = ph.sym;
        depth[q - 1] = 0;
        break;
      }
      chain.push_back(q);
      if (chain.size() > n) throw std::invalid_argument("parse_decode: non-terminating copy chain");
      q = ph.src + (q - ph.start);
    }
    Symbol s = sym[q - 1];
    uint32_t d = depth[q - 1];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      sym[*it - 1] = s;
      depth[*it - 1] = ++d;
    }
    height = std::max(height, d);
  }
  if (height_out) *height_out = height;

  Text out;
  out.sym = std::move(sym);
  out.sigma = *std::max_element(out.sym.begin(), out.sym.end());
  if (out.sym.back() == kSentinel) out.has_sentinel = true;
  return out;
}

}  // namespace

BidirectionalParse bidirectional_parse_from_attractor(const Text& text, const Attractor& gamma) {
  SuffixIndex index = build_suffix_index(text);
  ValidateOptions opts{.parallel = true, .index = &index};
  if (!validate_k_attractor(text, gamma, text.n(), opts).valid) {
    throw std::invalid_argument("bidirectional parse: attractor does not validate");
  }
  Attractor closed = equally_spaced_close(gamma);

  BidirectionalParse parse;
  parse.n = text.n();
  for (Pos p : closed.positions) {
    parse.phrases.push_back({p, 1, true, text.at(p), 0});
  }
  uint64_t prev = 0;  // virtual elements at 0 and n+1 shape the boundary gaps
  for (Pos p : closed.positions) {
    lay_gap(parse.phrases, prev, p);
    prev = p;
  }
  lay_gap(parse.phrases, prev, text.n() + 1);
  std::sort(parse.phrases.begin(), parse.phrases.end(),
            [](const auto& x, const auto& y) { return x.start < y.start; });

  CrossingFinder cf(index, text.n(), closed.positions);
  for (auto& ph : parse.phrases) {
    if (ph.is_explicit) continue;
    SaInterval iv = occurrence_interval(index, text, ph.start, ph.len);
    std::optional<Pos> src = cf.crossing_occurrence(iv, ph.len);
    if (!src) throw std::logic_error("bidirectional parse: no crossing source for a validated attractor");
    if (*src == ph.start) throw std::logic_error("bidirectional parse: phrase chose itself as source");
    ph.src = *src;
  }

  Text decoded = decode_impl(parse, &parse.height);
  if (decoded.sym != text.sym) throw std::logic_error("bidirectional parse: decode mismatch");
  return parse;
}

Text parse_decode(const BidirectionalParse& parse) { return decode_impl(parse, nullptr); }

namespace {

struct RegionMap {
  struct Region {
    Pos end;
    uint32_t nt;
  };
  std::map<Pos, Region> by_start;
  CollageSystem* sys;

  uint32_t pair(uint32_t a, uint32_t b) {
    sys->rules.push_back(CollageSystem::Pair{a, b});
    return static_cast<uint32_t>(sys->rules.size());
  }

  // Inserts [s..e] -> nt and merges with adjacent regions, right-associated:
  // X1 W X2 collapses as X1 (W X2).
  void insert(Pos s, Pos e, uint32_t nt) {
    auto right = by_start.find(e + 1);
    if (right != by_start.end()) {
      nt = pair(nt, right->second.nt);
      e = right->second.end;
      by_start.erase(right);
    }
    if (s > 1) {
      auto it = by_start.lower_bound(s);
      if (it != by_start.begin()) {
        --it;
        if (it->second.end == s - 1) {
          nt = pair(it->second.nt, nt);
          s = it->first;
          by_start.erase(it);
        }
      }
    }
    by_start[s] = Region{e, nt};
  }

  // Region covering [lo..hi]; throws when it is not fully collapsed yet.
  std::pair<Pos, Region> covering(Pos lo, Pos hi) const {
    auto it = by_start.upper_bound(lo);
    if (it == by_start.begin()) throw std::logic_error("collage build: source region missing");
    --it;
    if (it->second.end < hi) throw std::logic_error("collage build: source region not collapsed");
    return {it->first, it->second};
  }
};

// Collapses a run of unit nonterminals by repeated pairing, blocks of 2 with
// a trailing block of 3 when the level is odd.
uint32_t combine(RegionMap& regions, std::vector<uint32_t> ids) {
  while (ids.size() > 1) {
    std::vector<uint32_t> next;
    size_t i = 0;
    while (i < ids.size()) {
      size_t left = ids.size() - i;
      if (left == 3) {
        next.push_back(regions.pair(regions.pair(ids[i], ids[i + 1]), ids[i + 2]));
        i += 3;
      } else if (left == 1) {
        next.push_back(ids[i]);
        i += 1;
      } else {
        next.push_back(regions.pair(ids[i], ids[i + 1]));
        i += 2;
      }
    }
    ids = std::move(next);
  }
  return ids[0];
}

}  // namespace

CollageSystem collage_from_attractor(const Text& text, const Attractor& gamma) {
  BidirectionalParse parse = bidirectional_parse_from_attractor(text, gamma);

  CollageSystem sys;
  RegionMap regions{{}, &sys};
  std::unordered_map<Symbol, uint32_t> terminal;
  auto terminal_of = [&](Symbol s) {
    auto it = terminal.find(s);
    if (it != terminal.end()) return it->second;
    sys.rules.push_back(CollageSystem::Terminal{s});
    uint32_t id = static_cast<uint32_t>(sys.rules.size());
    terminal.emplace(s, id);
    return id;
  };

  // Base: maximal runs of length-1 phrases become blocked pair trees over
  // terminal rules.
  size_t i = 0;
  std::vector<const BidirectionalParse::Phrase*> longer;
  while (i < parse.phrases.size()) {
    if (parse.phrases[i].len != 1) {
      longer.push_back(&parse.phrases[i]);
      i++;
      continue;
    }
    size_t j = i;
    std::vector<uint32_t> ids;
    while (j < parse.phrases.size() && parse.phrases[j].len == 1) {
      ids.push_back(terminal_of(text.at(parse.phrases[j].start)));
      j++;
    }
    regions.insert(parse.phrases[i].start, parse.phrases[j - 1].start, combine(regions, ids));
    i = j;
  }

  // Longer phrases in increasing length: the source overlaps only shorter,
  // already-collapsed phrases, so it is a slice of one existing region.
  std::sort(longer.begin(), longer.end(), [](const auto* a, const auto* b) {
    return a->len != b->len ? a->len < b->len : a->start < b->start;
  });
  for (const auto* ph : longer) {
    auto [rstart, region] = regions.covering(ph->src, ph->src + ph->len - 1);
    uint32_t w;
    if (rstart == ph->src && region.end == ph->src + ph->len - 1) {
      w = region.nt;
    } else {
      sys.rules.push_back(CollageSystem::Slice{region.nt, ph->src - rstart + 1,
                                               ph->src + ph->len - 1 - rstart + 1});
      w = static_cast<uint32_t>(sys.rules.size());
    }
    regions.insert(ph->start, ph->start + ph->len - 1, w);
  }

  if (regions.by_start.size() != 1 || regions.by_start.begin()->first != 1 ||
      regions.by_start.begin()->second.end != parse.n) {
    throw std::logic_error("collage build: text did not collapse into one region");
  }
  sys.start = regions.by_start.begin()->second.nt;
  return sys;
}

}  // namespace attractor
