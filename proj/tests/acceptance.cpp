// End-to-end acceptance suite: one pass/fail line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "attractor/access.hpp"
#include "attractor/approx.hpp"
#include "attractor/compress.hpp"
#include "attractor/gadget.hpp"
#include "attractor/induce.hpp"
#include "attractor/reduce.hpp"
#include "attractor/validate.hpp"

using namespace attractor;

namespace {

int g_failures = 0;

struct Criterion {
  const char* name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(const char* n) : name(n) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }

  ~Criterion() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok) {
      std::printf("PASS  %-22s (%.2fs)\n", name, secs);
    } else {
      std::printf("FAIL  %-22s (%.2fs): %s\n", name, secs, detail.c_str());
      g_failures++;
    }
    std::fflush(stdout);
  }
};

Text sample_text() {
  Text x;
  x.sym = {3, 4, 1, 2, 3, 3, 4, 1, 2, 3, 3, 1};  // CDABCCDABCCA densely remapped
  x.sigma = 4;
  return x;
}

Text from_letters(const char* s) {
  Text x;
  for (const char* p = s; *p; p++) x.sym.push_back(static_cast<Symbol>(*p - 'a' + 1));
  x.sigma = *std::max_element(x.sym.begin(), x.sym.end());
  return x;
}

void criterion1_sample_reproduction() {
  Criterion c("1 sample-text");
  Text x = sample_text();
  Attractor known = Attractor::of({4, 7, 11, 12}, 12, 12);
  c.require(validate_k_attractor(x, known, 12).valid, "known attractor rejected");
  c.require(naive_validate(x, known, 12).valid, "known attractor rejected by reference validator");
  Attractor best = min_attractor_brute(x, 12);
  c.require(best.size() == 4, "minimum size " + std::to_string(best.size()) + " != 4");
}

void criterion2_inducer_soundness() {
  Criterion c("2 inducer-soundness");
  std::mt19937_64 rng(20240901);
  std::vector<std::pair<Text, const char*>> cases;
  const Symbol sigmas[3] = {2, 4, 16};
  for (int it = 0; it < 1000; it++) {
    size_t n = 1 + rng() % 500;
    cases.push_back({random_text(n, sigmas[it % 3], rng()), "random"});
  }
  for (size_t n : {size_t{256}, size_t{1024}, size_t{4096}, size_t{16384}}) {
    cases.push_back({fibonacci_text(n), "fibonacci"});
    cases.push_back({unary_text(n), "unary"});
  }

  for (auto& [x, family] : cases) {
    if (!c.ok) break;
    SuffixIndex idx = build_suffix_index(x);
    ValidateOptions opts{.parallel = true, .index = &idx};
    uint64_t n = x.n();

    Lz77Parse parse = lz77_parse(x, &idx);
    Attractor glz = attractor_from_lz77(parse);
    c.require(glz.size() == parse.z(), std::string(family) + ": |lz77 attractor| != z");
    c.require(validate_k_attractor(x, glz, n, opts).valid, std::string(family) + ": lz77 attractor invalid");

    MacroScheme ms = macro_from_lz77(parse);
    Attractor gms = attractor_from_macro(ms);
    c.require(gms.size() <= 2 * ms.b(), std::string(family) + ": |macro attractor| > 2b");
    c.require(validate_k_attractor(x, gms, n, opts).valid, std::string(family) + ": macro attractor invalid");

    CollageSystem cs = collage_from_attractor(x, glz);
    Attractor gc = attractor_from_collage(cs);
    c.require(gc.size() <= cs.c(), std::string(family) + ": |collage attractor| > c");
    c.require(validate_k_attractor(x, gc, n, opts).valid, std::string(family) + ": collage attractor invalid");

    Text xs = x.with_sentinel();
    SuffixIndex sidx = build_suffix_index(xs);
    ValidateOptions sopts{.parallel = true, .index = &sidx};
    Rlbwt runs = rlbwt_build(xs, &sidx);
    Attractor gb = attractor_from_rlbwt(xs, &sidx);
    c.require(gb.size() == runs.r(), std::string(family) + ": |rlbwt attractor| != r");
    c.require(validate_k_attractor(xs, gb, xs.n(), sopts).valid, std::string(family) + ": rlbwt attractor invalid");
  }
}

void criterion3_oracle_equivalence() {
  Criterion c("3 validator-oracle");
  std::mt19937_64 rng(17051);
  for (int it = 0; it < 1000 && c.ok; it++) {
    size_t n = 1 + rng() % 200;
    Text x = random_text(n, 1 + rng() % 4, rng());
    std::vector<Pos> pos;
    for (size_t p = 1; p <= n; p++) {
      if (rng() % 3 == 0) pos.push_back(static_cast<Pos>(p));
    }
    if (pos.empty()) pos.push_back(static_cast<Pos>(1 + rng() % n));
    Attractor g = Attractor::of(std::move(pos), n, n);
    uint64_t k = 1 + rng() % n;
    ValidationResult fast = validate_k_attractor(x, g, k);
    ValidationResult ref = naive_validate(x, g, k);
    c.require(fast.valid == ref.valid, "verdict disagreement at iteration " + std::to_string(it));
    if (!fast.valid && !ref.valid) {
      c.require(fast.witness->pos == ref.witness->pos && fast.witness->len == ref.witness->len,
                "witness disagreement at iteration " + std::to_string(it));
    }
  }
}

void criterion4_sandwich(bool quick) {
  Criterion c("4 approximation");
  std::vector<Text> cases;
  for (size_t n = 1; n <= 12; n++) {
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); mask++) {
      Text x;
      x.sigma = 2;
      for (size_t b = 0; b < n; b++) x.sym.push_back(1 + ((mask >> b) & 1));
      cases.push_back(std::move(x));
    }
  }
  std::mt19937_64 rng(40999);
  for (int it = 0; it < 200; it++) {
    cases.push_back(random_text(2 + rng() % 15, 1 + rng() % 3, rng()));
  }
  if (quick) cases.resize(600);

  for (const Text& x : cases) {
    if (!c.ok) break;
    uint64_t n = x.n();
    SuffixIndex idx = build_suffix_index(x);
    for (uint64_t k : {uint64_t{2}, uint64_t{3}, n}) {
      if (k > n || !c.ok) continue;
      uint64_t lower = attractor_lower_bound(x, k);
      size_t opt = min_attractor_brute(x, k, &idx).size();
      Attractor greedy = k_attractor_greedy(x, k);
      Attractor two_k = k_attractor_2k(x, k);
      double h = harmonic(k * (k + 1) / 2);
      c.require(lower <= opt, "lower bound exceeds the optimum");
      c.require(opt <= greedy.size(), "greedy beat the optimum");
      c.require(static_cast<double>(greedy.size()) <= h * static_cast<double>(opt) + 1e-9,
                "greedy misses the harmonic ratio");
      c.require(opt <= two_k.size(), "2k beat the optimum");
      c.require(two_k.size() <= 2 * k * opt, "2k misses the 2k ratio");
      c.require(validate_k_attractor(x, greedy, k, {.parallel = true, .index = &idx}).valid,
                "greedy output invalid");
      c.require(validate_k_attractor(x, two_k, k, {.parallel = true, .index = &idx}).valid,
                "2k output invalid");
    }
  }
}

void criterion5_reductions() {
  Criterion c("5 reduction-size-law");
  constexpr double kC = 8.0;

  // round trips on the mixed fixture set
  std::mt19937_64 rng(5150);
  std::vector<Text> fixtures = {sample_text(), from_letters("banana"), from_letters("abracadabra"),
                                fibonacci_text(1000), unary_text(777)};
  for (int it = 0; it < 50; it++) fixtures.push_back(random_text(1 + rng() % 400, 1 + rng() % 4, rng()));
  for (const Text& x : fixtures) {
    if (!c.ok) break;
    Attractor g = attractor_from_lz77(lz77_parse(x));
    BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
    c.require(parse_decode(p).sym == x.sym, "parse decode mismatch");
    CollageSystem cs = collage_from_attractor(x, g);
    c.require(collage_expand(cs).sym == x.sym, "collage expansion mismatch");
  }

  for (size_t n : {size_t{256}, size_t{1024}, size_t{4096}, size_t{16384}, size_t{65536}}) {
    for (int fam = 0; fam < 2 && c.ok; fam++) {
      Text x = fam == 0 ? unary_text(n) : fibonacci_text(n);
      Attractor g = attractor_from_lz77(lz77_parse(x));
      double gamma = static_cast<double>(g.size());
      double bound = kC * gamma * (std::log2(static_cast<double>(n) / gamma) + 1);

      BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
      c.require(parse_decode(p).sym == x.sym, "parse decode mismatch in the size-law grid");
      c.require(static_cast<double>(p.size()) <= bound,
                "phrase count " + std::to_string(p.size()) + " above the size law at n=" + std::to_string(n));

      CollageSystem cs = collage_from_attractor(x, g);
      c.require(collage_expand(cs).sym == x.sym, "collage expansion mismatch in the size-law grid");
      c.require(static_cast<double>(cs.c()) <= bound,
                "rule count " + std::to_string(cs.c()) + " above the size law at n=" + std::to_string(n));
    }
  }
}

void criterion6_random_access(bool quick) {
  Criterion c("6 random-access");
  constexpr double kSpaceC = 12.0;

  auto space_ok = [&](const Text& x, const AttractorIndex& ix) {
    SpaceReport rep = space_report(ix);
    double gamma = static_cast<double>(ix.marks.size());
    double lg = std::log(static_cast<double>(x.n()) / gamma) / std::log(static_cast<double>(ix.tau));
    return static_cast<double>(rep.total_words) <= kSpaceC * gamma * ix.tau * (std::max(0.0, std::ceil(lg)) + 1);
  };

  // exhaustive tier, n <= 512
  std::vector<Text> small = {sample_text(), fibonacci_text(512), random_text(512, 4, 606)};
  for (const Text& x : small) {
    if (!c.ok) break;
    Attractor glz = attractor_from_lz77(lz77_parse(x));
    Text xs = x.with_sentinel();
    Attractor gbwt = attractor_from_rlbwt(xs);
    for (uint32_t tau : {2u, 3u, 8u}) {
      if (!c.ok) break;
      for (int which = 0; which < 2; which++) {
        const Text& text = which == 0 ? x : xs;
        const Attractor& gamma = which == 0 ? glz : gbwt;
        AttractorIndex ix = build_index(text, gamma, tau, 2);
        c.require(space_ok(text, ix), "space law violated on a small fixture");
        uint64_t n = text.n();
        for (uint64_t i = 1; i <= n && c.ok; i++) {
          for (uint64_t l = 1; i + l - 1 <= n; l++) {
            std::vector<Symbol> got = extract(ix, i, l);
            bool same = true;
            for (uint64_t t = 0; t < l && same; t++) same = got[t] == text.at(static_cast<Pos>(i + t));
            if (!same) {
              c.require(false, "extraction mismatch at n=" + std::to_string(n) + " i=" + std::to_string(i) +
                                   " l=" + std::to_string(l));
              break;
            }
          }
        }
      }
    }
  }

  // sampled tier, n = 10^5
  size_t big_n = quick ? 20000 : 100000;
  std::vector<Text> big = {fibonacci_text(big_n), random_text(big_n, 2, 808)};
  std::mt19937_64 rng(909);
  for (const Text& x : big) {
    if (!c.ok) break;
    Attractor glz = attractor_from_lz77(lz77_parse(x));
    Text xs = x.with_sentinel();
    Attractor gbwt = attractor_from_rlbwt(xs);
    for (uint32_t tau : {2u, 3u, 8u}) {
      if (!c.ok) break;
      for (int which = 0; which < 2; which++) {
        const Text& text = which == 0 ? x : xs;
        const Attractor& gamma = which == 0 ? glz : gbwt;
        AttractorIndex ix = build_index(text, gamma, tau, 64);
        c.require(space_ok(text, ix), "space law violated on a large fixture");
        uint64_t n = text.n();
        for (int q = 0; q < 10000 && c.ok; q++) {
          uint64_t i = 1 + rng() % n;
          uint64_t l = 1 + rng() % std::min<uint64_t>(1000, n - i + 1);
          std::vector<Symbol> got = extract(ix, i, l);
          for (uint64_t t = 0; t < l; t++) {
            if (got[t] != text.at(static_cast<Pos>(i + t))) {
              c.require(false, "extraction mismatch on the large tier");
              break;
            }
          }
        }
      }
    }
  }
}

void criterion7_gadgets() {
  Criterion c("7 hardness-gadgets");
  std::mt19937_64 rng(70707);
  for (uint64_t u = 1; u <= 3 && c.ok; u++) {
    std::vector<std::vector<uint32_t>> pool;
    for (uint32_t mask = 1; mask < (1u << u); mask++) {
      std::vector<uint32_t> s;
      for (uint32_t e = 1; e <= u; e++) {
        if (mask & (1u << (e - 1))) s.push_back(e);
      }
      pool.push_back(s);
    }
    for (uint32_t pick = 1; pick < (1u << pool.size()) && c.ok; pick++) {
      if (static_cast<size_t>(__builtin_popcount(pick)) > 4) continue;
      SetCoverInstance inst;
      inst.universe_size = u;
      std::vector<bool> hit(u + 1, false);
      for (size_t s = 0; s < pool.size(); s++) {
        if (pick & (1u << s)) {
          inst.sets.push_back({static_cast<uint32_t>(inst.sets.size() + 1), pool[s]});
          for (uint32_t e : pool[s]) hit[e] = true;
        }
      }
      if (std::find(hit.begin() + 1, hit.end(), false) != hit.end()) continue;

      GadgetString g = build_gadget(inst, 3);
      SuffixIndex idx = build_suffix_index(g.text);
      ValidateOptions opts{.parallel = true, .index = &idx};
      bool first_cover = true;
      for (uint32_t cmask = 1; cmask < (1u << inst.sets.size()) && c.ok; cmask++) {
        std::vector<uint32_t> cover;
        std::vector<bool> chit(u + 1, false);
        for (size_t s = 0; s < inst.sets.size(); s++) {
          if (cmask & (1u << s)) {
            cover.push_back(inst.sets[s].id);
            for (uint32_t e : inst.sets[s].elems) chit[e] = true;
          }
        }
        if (std::find(chit.begin() + 1, chit.end(), false) != chit.end()) continue;

        Attractor gamma = cover_attractor(g, cover);
        size_t expected = 4 * u * 2 + cover.size() + 6 * g.t - 3 * g.m;
        c.require(gamma.size() == expected, "structured attractor size deviates from the formula");
        c.require(validate_k_attractor(g.text, gamma, 3, opts).valid, "structured attractor invalid at k=3");
        if (first_cover) {
          first_cover = false;
          uint64_t n = g.text.n();
          for (uint64_t kp : {uint64_t{4}, uint64_t{7}, n / 2, n}) {
            if (kp <= 3 || kp > n) continue;
            c.require(validate_k_attractor(g.text, gamma, kp, opts).valid,
                      "structured attractor invalid at k'=" + std::to_string(kp));
          }
        }
      }
    }
  }
}

void criterion8_monotonicity_witness() {
  Criterion c("8 strict-k-witness");
  Text x = from_letters("acacaacc");
  size_t g2 = min_attractor_brute(x, 2).size();
  size_t g3 = min_attractor_brute(x, 3).size();
  c.require(g2 < g3, "expected strict growth, got " + std::to_string(g2) + " and " + std::to_string(g3));
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  criterion1_sample_reproduction();
  criterion2_inducer_soundness();
  criterion3_oracle_equivalence();
  criterion4_sandwich(quick);
  criterion5_reductions();
  criterion6_random_access(quick);
  criterion7_gadgets();
  criterion8_monotonicity_witness();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
