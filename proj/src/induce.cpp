#include "attractor/induce.hpp"

#include <optional>
#include <stdexcept>

namespace attractor {

Attractor attractor_from_lz77(const Lz77Parse& parse) {
  if (parse.phrases.empty()) throw std::invalid_argument("attractor_from_lz77: empty parse");
  return Attractor::of(parse.phrase_ends(), parse.n, parse.n);
}

Attractor attractor_from_rlbwt(const Text& text, const SuffixIndex* prebuilt) {
  if (!text.has_sentinel) throw std::invalid_argument("attractor_from_rlbwt: text must carry a sentinel");
  SuffixIndex local;
  const SuffixIndex* index = prebuilt;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  uint32_t n = static_cast<uint32_t>(text.n());
  std::vector<Pos> pos;
  for (uint32_t j = 1; j <= n; j++) {
    if (j > 1 && index->bwt[j - 1] == index->bwt[j - 2]) continue;  // not a run start
    uint32_t p = index->sa_at(j);
    pos.push_back(p > 1 ? p - 1 : n);
  }
  return Attractor::of(std::move(pos), n, n);
}

Attractor attractor_from_macro(const MacroScheme& scheme) {
  Text decoded = macro_decode(scheme);  // rejects undecodable schemes
  std::vector<Pos> pos;
  for (const auto& c : scheme.copies) {
    pos.push_back(c.dst_lo);
    pos.push_back(c.dst_hi);
  }
  for (const auto& l : scheme.literals) pos.push_back(l.pos);
  return Attractor::of(std::move(pos), decoded.n(), decoded.n());
}

namespace {

struct CollageWalk {
  const CollageSystem& sys;
  const std::vector<uint64_t>& len;
  std::vector<std::optional<Pos>> recorded;
  std::vector<bool> fully_traversed;

  // Walks the realization of rule `id` restricted to window [wl..wr] of its
  // expansion, laid out at absolute position `abs` (the text position of
  // expansion symbol wl). Records each rule's insertion point the first
  // (= leftmost) time the rule is realized in full.
  void visit(uint32_t id, uint64_t wl, uint64_t wr, uint64_t abs) {
    if (wl > wr) return;
    bool full = wl == 1 && wr == len[id];
    if (full && fully_traversed[id]) return;

    const auto& rule = sys.rule(id);
    if (std::holds_alternative<CollageSystem::Terminal>(rule)) {
      if (full && !recorded[id]) recorded[id] = static_cast<Pos>(abs);
    } else if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      uint64_t la = len[p->left];
      if (full && !recorded[id]) recorded[id] = static_cast<Pos>(abs + la - 1);
      if (wl <= la) visit(p->left, wl, std::min(wr, la), abs);
      if (wr > la) {
        uint64_t cl = std::max(wl, la + 1);
        visit(p->right, cl - la, wr - la, abs + (cl - wl));
      }
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      uint64_t lr = len[p->base];
      if (full && !recorded[id]) recorded[id] = static_cast<Pos>(abs + lr - 1);
      for (uint64_t k = 0; k * lr + 1 <= wr; k++) {
        uint64_t cl = std::max(wl, k * lr + 1);
        uint64_t cr = std::min(wr, (k + 1) * lr);
        if (cl > cr) continue;
        visit(p->base, cl - k * lr, cr - k * lr, abs + (cl - wl));
      }
    } else {
      const auto& s = std::get<CollageSystem::Slice>(rule);
      visit(s.base, s.lo + wl - 1, s.lo + wr - 1, abs);
    }
    if (full) fully_traversed[id] = true;
  }
};

}  // namespace

Attractor attractor_from_collage(const CollageSystem& system) {
  std::vector<uint64_t> len = collage_lengths(system);
  CollageWalk walk{system, len,
                   std::vector<std::optional<Pos>>(system.c() + 1),
                   std::vector<bool>(system.c() + 1, false)};
  walk.visit(system.start, 1, len[system.start], 1);

  std::vector<Pos> pos;
  for (uint32_t id = 1; id <= system.c(); id++) {
    if (walk.recorded[id]) pos.push_back(*walk.recorded[id]);
  }
  uint64_t n = len[system.start];
  return Attractor::of(std::move(pos), n, n);
}

}  // namespace attractor
