#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "attractor/attractor.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "test_util.hpp"

using namespace attractor;
using namespace attractor::testutil;

TEST_CASE("byte texts are remapped densely") {
  ByteText bt = text_from_bytes("CDABCCDABCCA");
  CHECK(bt.text.sigma == 4);
  CHECK(bt.text.n() == 12);
  CHECK(bt.text.at(1) == 3);  // 'C' is the third distinct byte in order
  CHECK(bt.byte_of_symbol[3] == 'C');
  bt.text.check();
}

TEST_CASE("sentinel handling") {
  Text x = t("ab").with_sentinel();
  CHECK(x.n() == 3);
  CHECK(x.at(3) == kSentinel);
  x.check();
  CHECK_THROWS(x.with_sentinel());
  CHECK_THROWS(x.square());
  CHECK_THROWS(text_from_bytes(""));
}

TEST_CASE("suffix array of abaaba$") {
  Text x = t("abaaba").with_sentinel();
  SuffixIndex idx = build_suffix_index(x);
  CHECK(idx.sa == std::vector<uint32_t>{7, 6, 3, 4, 1, 5, 2});
}

TEST_CASE("suffix array of a$") {
  SuffixIndex idx = build_suffix_index(t("a").with_sentinel());
  CHECK(idx.sa == std::vector<uint32_t>{2, 1});
}

TEST_CASE("bwt of banana$") {
  ByteText bt = text_from_bytes("banana");
  Text x = bt.text.with_sentinel();
  SuffixIndex idx = build_suffix_index(x);
  std::string bwt;
  for (Symbol s : idx.bwt) bwt += s == kSentinel ? '$' : static_cast<char>(bt.byte_of_symbol[s]);
  CHECK(bwt == "annb$aa");
}

TEST_CASE("suffix array matches brute-force sort on random texts") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; it++) {
    size_t n = 1 + rng() % 300;
    Symbol sigma = 1 + rng() % 4;
    Text x = random_text(n, sigma, rng());
    if (rng() % 2) x = x.with_sentinel();
    SuffixIndex idx = build_suffix_index(x);
    CHECK(idx.sa == brute_suffix_sort(x));
    for (size_t i = 0; i < x.n(); i++) CHECK(idx.sa[idx.isa[i] - 1] == i + 1);
  }
}

TEST_CASE("suffixes in sa order strictly increase, n up to 10^4") {
  for (const Text& x : {random_text(10000, 3, 11), fibonacci_text(10000), unary_text(10000)}) {
    SuffixIndex idx = build_suffix_index(x);
    size_t n = x.n();
    for (size_t i = 2; i <= n; i++) {
      uint32_t a = idx.sa_at(static_cast<uint32_t>(i - 1)), b = idx.sa_at(static_cast<uint32_t>(i));
      // verify lcp and strict order in one pass
      uint32_t h = 0;
      while (a + h <= n && b + h <= n && x.at(a + h) == x.at(b + h)) h++;
      REQUIRE(idx.lcp_at(static_cast<uint32_t>(i)) == h);
      bool a_exhausted = a + h > n;
      REQUIRE((a_exhausted || x.at(a + h) < x.at(b + h)));
    }
  }
}

TEST_CASE("lf mapping inverts the bwt") {
  for (std::string_view s : {"banana", "mississippi", "abaaba", "aaaa"}) {
    Text x = t(s).with_sentinel();
    SuffixIndex idx = build_suffix_index(x);
    size_t n = x.n();
    // LF[i] = C[L[i]] + rank_{L[i]}(L, i)
    std::vector<uint32_t> cnt(x.sigma + 2, 0);
    for (Symbol c : idx.bwt) cnt[c + 1]++;
    for (size_t c = 1; c < cnt.size(); c++) cnt[c] += cnt[c - 1];
    std::vector<uint32_t> lf(n), seen(x.sigma + 1, 0);
    for (size_t i = 0; i < n; i++) {
      lf[i] = cnt[idx.bwt[i]] + seen[idx.bwt[i]];
      seen[idx.bwt[i]]++;
    }
    std::vector<Symbol> rebuilt(n);
    uint32_t p = idx.isa_at(1) - 1;  // row of the full text; its L symbol is T[n]
    for (size_t k = 0; k < n; k++) {
      rebuilt[n - 1 - k] = idx.bwt[p];
      p = lf[p];
    }
    CHECK(rebuilt == x.sym);
  }
}

TEST_CASE("occurrences finds exactly the naive occurrence set") {
  Text ex = t("CDABCCDABCCA").with_sentinel();
  SuffixIndex idx = build_suffix_index(ex);
  std::vector<Symbol> cda = {ex.at(1), ex.at(2), ex.at(3)};  // "CDA"
  SaInterval iv = occurrences(idx, ex, cda);
  std::vector<uint32_t> got;
  for (uint32_t i = iv.lo; i <= iv.hi; i++) got.push_back(idx.sa_at(i));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<uint32_t>{1, 6});

  Text tiny = t("a").with_sentinel();
  SuffixIndex tidx = build_suffix_index(tiny);
  std::vector<Symbol> miss = {99};
  CHECK(occurrences(tidx, tiny, miss).empty());

  Text ab = t("abaaba").with_sentinel();
  SuffixIndex aidx = build_suffix_index(ab);
  std::vector<Symbol> aba = {1, 2, 1};
  SaInterval jv = occurrences(aidx, ab, aba);
  std::vector<uint32_t> got2;
  for (uint32_t i = jv.lo; i <= jv.hi; i++) got2.push_back(aidx.sa_at(i));
  std::sort(got2.begin(), got2.end());
  CHECK(got2 == std::vector<uint32_t>{1, 4});
}

TEST_CASE("occurrences equals naive scan on random patterns") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; it++) {
    size_t n = 1 + rng() % 1000;
    Text x = random_text(n, 1 + rng() % 3, rng());
    SuffixIndex idx = build_suffix_index(x);
    size_t plen = 1 + rng() % 6;
    std::vector<Symbol> pat;
    for (size_t i = 0; i < plen; i++) pat.push_back(1 + rng() % 3);
    SaInterval iv = occurrences(idx, x, pat);
    std::vector<uint32_t> got;
    for (uint32_t i = iv.lo; i <= iv.hi; i++) got.push_back(idx.sa_at(i));
    std::sort(got.begin(), got.end());
    CHECK(got == naive_occurrences(x, pat));
  }
}

TEST_CASE("succ_distance") {
  std::vector<Pos> marked = {4, 7, 11, 12};
  std::vector<uint32_t> d = succ_distance(12, marked);
  CHECK(d[0] == 3);
  CHECK(d[1] == 2);
  CHECK(d[2] == 1);
  CHECK(d[3] == 0);
  CHECK(d[11] == 0);

  std::vector<Pos> all(9);
  for (size_t i = 0; i < 9; i++) all[i] = static_cast<Pos>(i + 1);
  for (uint32_t v : succ_distance(9, all)) CHECK(v == 0);

  std::vector<Pos> last = {9};
  std::vector<uint32_t> d2 = succ_distance(9, last);
  for (size_t p = 1; p <= 9; p++) CHECK(d2[p - 1] == 9 - p);

  std::vector<Pos> bad = {10};
  CHECK_THROWS(succ_distance(9, bad));
}

TEST_CASE("attractor io round trip") {
  Attractor g = Attractor::of({4, 7, 11, 12}, 12, 12);
  auto path = std::filesystem::temp_directory_path() / "attr_io_test.gamma";
  write_attractor(path, g);
  Attractor back = read_attractor(path, 0);
  CHECK(back.positions == g.positions);
  CHECK(back.n == 12);
  CHECK(back.k == 12);
  std::filesystem::remove(path);
}
