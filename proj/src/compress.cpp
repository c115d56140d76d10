#include "attractor/compress.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace attractor {

namespace {
constexpr uint64_t kMaxExpansion = uint64_t{1} << 30;
}

// ---------------------------------------------------------------------------
// LZ77

std::vector<Pos> Lz77Parse::phrase_ends() const {
  std::vector<Pos> ends;
  ends.reserve(phrases.size());
  uint64_t at = 0;
  for (const Lz77Phrase& ph : phrases) {
    at += ph.cover();
    ends.push_back(static_cast<Pos>(at));
  }
  return ends;
}

Lz77Parse lz77_parse(const Text& text, const SuffixIndex* prebuilt) {
  SuffixIndex local;
  const SuffixIndex* index = prebuilt;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  uint32_t n = static_cast<uint32_t>(text.n());
  Lz77Parse parse;
  parse.n = n;

  // Longest l such that T[i..i+l-1] has an occurrence ending before i, i.e.
  // some start p <= i-l. The leftmost occurrence start is monotone in l, so
  // binary search works.
  auto source_for = [&](Pos i, uint32_t l) -> Pos {
    SaInterval iv = occurrence_interval(*index, text, i, l);
    Pos leftmost = index->leftmost_occurrence(iv);
    return leftmost + l - 1 < i ? leftmost : 0;
  };

  Pos i = 1;
  while (i <= n) {
    uint32_t hi = std::min(n - i + 1, i - 1);
    if (hi == 0 || source_for(i, 1) == 0) {
      parse.phrases.push_back(Lz77Phrase{text.at(i), 0, 0});
      i += 1;
      continue;
    }
    uint32_t lo = 1;  // valid
    while (lo < hi) {
      uint32_t mid = lo + (hi - lo + 1) / 2;
      if (source_for(i, mid) != 0) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    parse.phrases.push_back(Lz77Phrase{0, source_for(i, lo), lo});
    i += lo;
  }
  return parse;
}

Text lz77_decode(const Lz77Parse& parse) {
  Text out;
  out.sym.reserve(parse.n);
  for (const Lz77Phrase& ph : parse.phrases) {
    if (ph.is_literal()) {
      out.sym.push_back(ph.literal);
      continue;
    }
    uint64_t start = out.sym.size() + 1;
    if (ph.src < 1 || ph.src + ph.len - 1 >= start) {
      throw std::invalid_argument("lz77_decode: phrase source reaches into or past its own phrase");
    }
    for (uint32_t j = 0; j < ph.len; j++) out.sym.push_back(out.sym[ph.src - 1 + j]);
  }
  out.sigma = out.sym.empty() ? 0 : *std::max_element(out.sym.begin(), out.sym.end());
  if (!out.sym.empty() && out.sym.back() == kSentinel) out.has_sentinel = true;
  return out;
}

// ---------------------------------------------------------------------------
// RLBWT

Rlbwt rlbwt_build(const Text& text, const SuffixIndex* prebuilt) {
  if (!text.has_sentinel) throw std::invalid_argument("rlbwt_build: text must carry a sentinel");
  SuffixIndex local;
  const SuffixIndex* index = prebuilt;
  if (index == nullptr) {
    local = build_suffix_index(text);
    index = &local;
  }
  Rlbwt out;
  out.n = text.n();
  for (Symbol c : index->bwt) {
    if (!out.runs.empty() && out.runs.back().sym == c) {
      out.runs.back().len++;
    } else {
      out.runs.push_back(Rlbwt::Run{1, c});
    }
  }
  return out;
}

Text rlbwt_invert(const Rlbwt& rlbwt) {
  std::vector<Symbol> bwt;
  bwt.reserve(rlbwt.n);
  for (const auto& run : rlbwt.runs) {
    if (run.len == 0) throw std::invalid_argument("rlbwt_invert: empty run");
    bwt.insert(bwt.end(), run.len, run.sym);
  }
  size_t n = bwt.size();
  size_t sentinels = static_cast<size_t>(std::count(bwt.begin(), bwt.end(), kSentinel));
  if (sentinels != 1) throw std::invalid_argument("rlbwt_invert: malformed BWT, sentinel count != 1");

  Symbol maxsym = *std::max_element(bwt.begin(), bwt.end());
  std::vector<uint32_t> cnt(maxsym + 2, 0);
  for (Symbol c : bwt) cnt[c + 1]++;
  for (size_t c = 1; c < cnt.size(); c++) cnt[c] += cnt[c - 1];
  std::vector<uint32_t> lf(n);
  std::vector<uint32_t> seen(maxsym + 1, 0);
  for (size_t i = 0; i < n; i++) {
    lf[i] = cnt[bwt[i]] + seen[bwt[i]]++;
  }

  // T[n-k] = L[LF^k[p0]] where L[p0] is the sentinel (the row of the full
  // text). A premature return to p0 means the LF walk is not one n-cycle.
  size_t p0 = static_cast<size_t>(std::find(bwt.begin(), bwt.end(), kSentinel) - bwt.begin());
  Text out;
  out.sym.assign(n, 0);
  size_t p = p0;
  for (size_t k = 0; k < n; k++) {
    out.sym[n - 1 - k] = bwt[p];
    p = lf[p];
    if (p == p0 && k + 1 < n) throw std::invalid_argument("rlbwt_invert: malformed BWT, LF walk cycles early");
  }
  out.sigma = maxsym;
  out.has_sentinel = true;
  return out;
}

// ---------------------------------------------------------------------------
// Macro schemes

MacroScheme macro_from_lz77(const Lz77Parse& parse) {
  MacroScheme out;
  out.n = parse.n;
  Pos at = 1;
  for (const Lz77Phrase& ph : parse.phrases) {
    if (ph.is_literal()) {
      out.literals.push_back(MacroScheme::Literal{at, ph.literal});
    } else {
      out.copies.push_back(MacroScheme::Copy{at, at + ph.len - 1, ph.src, ph.src + ph.len - 1});
    }
    at += ph.cover();
  }
  return out;
}

Text macro_decode(const MacroScheme& scheme) {
  uint64_t n = scheme.n;
  if (n == 0) throw std::invalid_argument("macro_decode: empty scheme");
  for (const auto& c : scheme.copies) {
    if (c.dst_lo < 1 || c.dst_lo > c.dst_hi || c.dst_hi > n || c.src_lo < 1 || c.src_lo > c.src_hi || c.src_hi > n) {
      throw std::invalid_argument("macro_decode: directive interval out of range");
    }
    if (c.dst_hi - c.dst_lo != c.src_hi - c.src_lo) {
      throw std::invalid_argument("macro_decode: copy intervals differ in length");
    }
  }
  for (const auto& l : scheme.literals) {
    if (l.pos < 1 || l.pos > n) throw std::invalid_argument("macro_decode: literal position out of range");
  }

  // Position-granular worklist: whenever a source position resolves, the
  // mapped destination position resolves too.
  std::vector<std::vector<uint32_t>> by_src(n);
  for (uint32_t d = 0; d < scheme.copies.size(); d++) {
    const auto& c = scheme.copies[d];
    for (Pos q = c.src_lo; q <= c.src_hi; q++) by_src[q - 1].push_back(d);
  }

  std::vector<Symbol> sym(n, 0);
  std::vector<bool> set(n, false);
  std::vector<Pos> work;
  auto assign = [&](Pos p, Symbol s) {
    if (set[p - 1]) {
      if (sym[p - 1] != s) throw std::invalid_argument("macro_decode: conflicting assignments at position " + std::to_string(p));
      return;
    }
    set[p - 1] = true;
    sym[p - 1] = s;
    work.push_back(p);
  };
  for (const auto& l : scheme.literals) assign(l.pos, l.sym);
  while (!work.empty()) {
    Pos q = work.back();
    work.pop_back();
    for (uint32_t d : by_src[q - 1]) {
      const auto& c = scheme.copies[d];
      assign(c.dst_lo + (q - c.src_lo), sym[q - 1]);
    }
  }
  for (uint64_t p = 1; p <= n; p++) {
    if (!set[p - 1]) {
      throw std::invalid_argument("macro_decode: undecodable scheme, position " + std::to_string(p) + " unresolved");
    }
  }

  Text out;
  out.sym = std::move(sym);
  out.sigma = *std::max_element(out.sym.begin(), out.sym.end());
  if (out.sym.back() == kSentinel) out.has_sentinel = true;
  return out;
}

// ---------------------------------------------------------------------------
// Collage systems

namespace {

// Topological order over rule references; throws on cycles.
std::vector<uint32_t> topo_order(const CollageSystem& system) {
  size_t c = system.c();
  if (system.start < 1 || system.start > c) throw std::invalid_argument("collage: start rule undefined");
  std::vector<uint8_t> state(c + 1, 0);  // 0 new, 1 open, 2 done
  std::vector<uint32_t> order;
  order.reserve(c);
  std::vector<std::pair<uint32_t, uint32_t>> stack;  // (id, next child slot)
  auto children = [&](uint32_t id, uint32_t slot) -> uint32_t {
    const auto& rule = system.rule(id);
    if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      if (slot == 0) return p->left;
      if (slot == 1) return p->right;
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      if (slot == 0) return p->base;
    } else if (const auto* s = std::get_if<CollageSystem::Slice>(&rule)) {
      if (slot == 0) return s->base;
    }
    return 0;
  };
  for (uint32_t root = 1; root <= c; root++) {
    if (state[root] != 0) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [id, slot] = stack.back();
      uint32_t ch = children(id, slot++);
      if (ch == 0) {
        state[id] = 2;
        order.push_back(id);
        stack.pop_back();
        continue;
      }
      if (ch > c) throw std::invalid_argument("collage: rule references undefined nonterminal");
      if (state[ch] == 1) throw std::invalid_argument("collage: derivation contains a cycle");
      if (state[ch] == 0) {
        state[ch] = 1;
        stack.push_back({ch, 0});
      }
    }
  }
  return order;
}

}  // namespace

std::vector<uint64_t> collage_lengths(const CollageSystem& system) {
  std::vector<uint32_t> order = topo_order(system);
  std::vector<uint64_t> len(system.c() + 1, 0);
  for (uint32_t id : order) {
    const auto& rule = system.rule(id);
    if (std::holds_alternative<CollageSystem::Terminal>(rule)) {
      len[id] = 1;
    } else if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      len[id] = len[p->left] + len[p->right];
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      if (p->count < 2) throw std::invalid_argument("collage: power count must be >= 2");
      len[id] = len[p->base] * p->count;
    } else {
      const auto& s = std::get<CollageSystem::Slice>(rule);
      if (s.lo < 1 || s.lo > s.hi || s.hi > len[s.base]) {
        throw std::invalid_argument("collage: slice out of bounds");
      }
      len[id] = s.hi - s.lo + 1;
    }
    if (len[id] > kMaxExpansion) throw std::runtime_error("collage: expansion too large");
  }
  return len;
}

Text collage_expand(const CollageSystem& system) {
  std::vector<uint32_t> order = topo_order(system);
  std::vector<uint64_t> len = collage_lengths(system);

  uint64_t total = 0;
  std::vector<std::vector<Symbol>> exp(system.c() + 1);
  for (uint32_t id : order) {
    const auto& rule = system.rule(id);
    std::vector<Symbol>& out = exp[id];
    if (const auto* t = std::get_if<CollageSystem::Terminal>(&rule)) {
      out = {t->sym};
    } else if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      out = exp[p->left];
      out.insert(out.end(), exp[p->right].begin(), exp[p->right].end());
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      out.reserve(len[id]);
      for (uint64_t i = 0; i < p->count; i++) {
        out.insert(out.end(), exp[p->base].begin(), exp[p->base].end());
      }
    } else {
      const auto& s = std::get<CollageSystem::Slice>(rule);
      out.assign(exp[s.base].begin() + (s.lo - 1), exp[s.base].begin() + s.hi);
    }
    total += out.size();
    if (total > kMaxExpansion) throw std::runtime_error("collage: expansion too large");
  }

  Text out;
  out.sym = std::move(exp[system.start]);
  if (out.sym.empty()) throw std::invalid_argument("collage: empty expansion");
  out.sigma = *std::max_element(out.sym.begin(), out.sym.end());
  if (out.sym.back() == kSentinel) out.has_sentinel = true;
  return out;
}

std::vector<uint32_t> collage_heights(const CollageSystem& system) {
  std::vector<uint32_t> order = topo_order(system);
  std::vector<uint32_t> h(system.c() + 1, 0);
  for (uint32_t id : order) {
    const auto& rule = system.rule(id);
    if (std::holds_alternative<CollageSystem::Terminal>(rule)) {
      h[id] = 1;
    } else if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      h[id] = std::max(h[p->left], h[p->right]) + 1;
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      h[id] = h[p->base] + 1;
    } else {
      h[id] = h[std::get<CollageSystem::Slice>(rule).base] + 1;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Interchange formats

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  return out;
}

[[noreturn]] void bad_record(const std::filesystem::path& path, const std::string& line) {
  throw std::runtime_error("malformed record in " + path.string() + ": " + line);
}

}  // namespace

Lz77Parse read_lz77(const std::filesystem::path& path) {
  auto in = open_in(path);
  Lz77Parse parse;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'L') {
      Symbol s;
      if (!(ls >> s)) bad_record(path, line);
      parse.phrases.push_back(Lz77Phrase{s, 0, 0});
      parse.n += 1;
    } else if (tag == 'C') {
      Pos src;
      uint32_t len;
      if (!(ls >> src >> len) || len == 0) bad_record(path, line);
      parse.phrases.push_back(Lz77Phrase{0, src, len});
      parse.n += len;
    } else {
      bad_record(path, line);
    }
  }
  return parse;
}

void write_lz77(const std::filesystem::path& path, const Lz77Parse& parse) {
  auto out = open_out(path);
  for (const Lz77Phrase& ph : parse.phrases) {
    if (ph.is_literal()) {
      out << "L " << ph.literal << "\n";
    } else {
      out << "C " << ph.src << " " << ph.len << "\n";
    }
  }
}

Rlbwt read_rlbwt(const std::filesystem::path& path) {
  auto in = open_in(path);
  Rlbwt r;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    uint64_t len;
    Symbol sym;
    if (!(ls >> len >> sym) || len == 0) bad_record(path, line);
    if (!r.runs.empty() && r.runs.back().sym == sym) bad_record(path, line);  // not run-minimal
    r.runs.push_back(Rlbwt::Run{len, sym});
    r.n += len;
  }
  return r;
}

void write_rlbwt(const std::filesystem::path& path, const Rlbwt& rlbwt) {
  auto out = open_out(path);
  for (const auto& run : rlbwt.runs) out << run.len << " " << run.sym << "\n";
}

MacroScheme read_macro(const std::filesystem::path& path) {
  auto in = open_in(path);
  MacroScheme m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'C') {
      MacroScheme::Copy c;
      if (!(ls >> c.dst_lo >> c.dst_hi >> c.src_lo >> c.src_hi)) bad_record(path, line);
      m.copies.push_back(c);
      m.n = std::max<uint64_t>(m.n, std::max(c.dst_hi, c.src_hi));
    } else if (tag == 'L') {
      MacroScheme::Literal l;
      if (!(ls >> l.pos >> l.sym)) bad_record(path, line);
      m.literals.push_back(l);
      m.n = std::max<uint64_t>(m.n, l.pos);
    } else {
      bad_record(path, line);
    }
  }
  return m;
}

void write_macro(const std::filesystem::path& path, const MacroScheme& scheme) {
  auto out = open_out(path);
  for (const auto& c : scheme.copies) {
    out << "C " << c.dst_lo << " " << c.dst_hi << " " << c.src_lo << " " << c.src_hi << "\n";
  }
  for (const auto& l : scheme.literals) out << "L " << l.pos << " " << l.sym << "\n";
}

CollageSystem read_collage(const std::filesystem::path& path) {
  auto in = open_in(path);
  CollageSystem sys;
  std::vector<std::pair<uint32_t, CollageSystem::Rule>> defs;
  uint32_t max_id = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "START") {
      if (!(ls >> sys.start)) bad_record(path, line);
      continue;
    }
    uint32_t id;
    if (!(ls >> id) || id == 0) bad_record(path, line);
    max_id = std::max(max_id, id);
    if (tag == "T") {
      Symbol s;
      if (!(ls >> s)) bad_record(path, line);
      defs.push_back({id, CollageSystem::Terminal{s}});
    } else if (tag == "P") {
      uint32_t a, b;
      if (!(ls >> a >> b)) bad_record(path, line);
      defs.push_back({id, CollageSystem::Pair{a, b}});
    } else if (tag == "R") {
      uint32_t base;
      uint64_t count;
      if (!(ls >> base >> count) || count < 2) bad_record(path, line);
      defs.push_back({id, CollageSystem::Power{base, count}});
    } else if (tag == "S") {
      uint32_t base;
      uint64_t lo, hi;
      if (!(ls >> base >> lo >> hi)) bad_record(path, line);
      defs.push_back({id, CollageSystem::Slice{base, lo, hi}});
    } else {
      bad_record(path, line);
    }
  }
  sys.rules.assign(max_id, CollageSystem::Terminal{0});
  std::vector<bool> defined(max_id + 1, false);
  for (auto& [id, rule] : defs) {
    if (defined[id]) throw std::runtime_error("collage file: duplicate rule id " + std::to_string(id));
    defined[id] = true;
    sys.rules[id - 1] = std::move(rule);
  }
  for (uint32_t id = 1; id <= max_id; id++) {
    if (!defined[id]) throw std::runtime_error("collage file: missing rule id " + std::to_string(id));
  }
  if (sys.start == 0) throw std::runtime_error("collage file: missing START line");
  return sys;
}

void write_collage(const std::filesystem::path& path, const CollageSystem& system) {
  auto out = open_out(path);
  for (uint32_t id = 1; id <= system.c(); id++) {
    const auto& rule = system.rule(id);
    if (const auto* t = std::get_if<CollageSystem::Terminal>(&rule)) {
      out << "T " << id << " " << t->sym << "\n";
    } else if (const auto* p = std::get_if<CollageSystem::Pair>(&rule)) {
      out << "P " << id << " " << p->left << " " << p->right << "\n";
    } else if (const auto* p = std::get_if<CollageSystem::Power>(&rule)) {
      out << "R " << id << " " << p->base << " " << p->count << "\n";
    } else {
      const auto& s = std::get<CollageSystem::Slice>(rule);
      out << "S " << id << " " << s.base << " " << s.lo << " " << s.hi << "\n";
    }
  }
  out << "START " << system.start << "\n";
}

}  // namespace attractor
