#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "attractor/induce.hpp"
#include "attractor/reduce.hpp"
#include "attractor/validate.hpp"
#include "test_util.hpp"

using namespace attractor;
using namespace attractor::testutil;

namespace {

// One bound constant for phrase counts, rule counts and heights across all
// size-law checks.
constexpr double kSizeLawC = 8.0;

double size_law_bound(double gamma, double n) { return kSizeLawC * gamma * (std::log2(n / gamma) + 1); }

void check_source_crossing(const Text& text, const Attractor& gamma, const BidirectionalParse& parse) {
  Attractor closed = equally_spaced_close(gamma);
  std::vector<uint32_t> d = succ_distance(text.n(), closed.positions);
  for (const auto& ph : parse.phrases) {
    if (ph.is_explicit) continue;
    // chosen source occurrence contains a (closed) attractor element
    REQUIRE(d[ph.src - 1] + 1 <= ph.len);
    for (uint32_t j = 0; j < ph.len; j++) REQUIRE(text.at(ph.src + j) == text.at(ph.start + j));
  }
}

}  // namespace

TEST_CASE("parse of the sample text decodes and crosses the attractor") {
  Text x = t("CDABCCDABCCA");
  Attractor g = Attractor::of({4, 7, 11, 12}, 12, 12);
  BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
  CHECK(parse_decode(p).sym == x.sym);
  check_source_crossing(x, g, p);
}

TEST_CASE("full attractor gives an all-explicit parse of height zero") {
  Text x = t("abcabc");
  BidirectionalParse p = bidirectional_parse_from_attractor(x, Attractor::full(6));
  CHECK(p.size() == 6);
  CHECK(p.height == 0);
  for (const auto& ph : p.phrases) CHECK(ph.is_explicit);
  CHECK(parse_decode(p).sym == x.sym);
}

TEST_CASE("unary parse is logarithmic and decodes") {
  Text x = unary_text(256);
  Attractor g = Attractor::of({1}, 256, 256);
  BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
  CHECK(parse_decode(p).sym == x.sym);
  CHECK(static_cast<double>(p.size()) <= size_law_bound(1, 256));
}

TEST_CASE("invalid attractors are rejected") {
  Text x = t("CDABCCDABCCA");
  Attractor bad = Attractor::of({4, 7, 11}, 12, 12);
  CHECK_THROWS(bidirectional_parse_from_attractor(x, bad));
  CHECK_THROWS(collage_from_attractor(x, bad));
}

TEST_CASE("corrupt parses are rejected by the decoder") {
  BidirectionalParse p;
  p.n = 2;
  p.phrases = {{1, 1, false, 0, 2}, {2, 1, false, 0, 1}};  // no explicit anchor
  CHECK_THROWS(parse_decode(p));

  BidirectionalParse gap;
  gap.n = 3;
  gap.phrases = {{1, 1, true, 1, 0}, {3, 1, true, 1, 0}};
  CHECK_THROWS(parse_decode(gap));
}

TEST_CASE("round trips over random texts with induced attractors") {
  std::mt19937_64 rng(211);
  for (int it = 0; it < 1000; it++) {
    Text x = random_text(1 + rng() % 300, 1 + rng() % 4, rng());
    Attractor g = attractor_from_lz77(lz77_parse(x));
    BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
    REQUIRE(parse_decode(p).sym == x.sym);
    check_source_crossing(x, g, p);

    CollageSystem c = collage_from_attractor(x, g);
    REQUIRE(collage_expand(c).sym == x.sym);
  }
}

TEST_CASE("collage of a full attractor uses only terminals and pairs") {
  Text x = t("abab");
  CollageSystem c = collage_from_attractor(x, Attractor::full(4));
  for (const auto& rule : c.rules) {
    CHECK_FALSE(std::holds_alternative<CollageSystem::Slice>(rule));
    CHECK_FALSE(std::holds_alternative<CollageSystem::Power>(rule));
  }
  CHECK(collage_expand(c).sym == x.sym);
}

TEST_CASE("collage of unary a^16 with a single-position attractor stays small") {
  Text x = unary_text(16);
  Attractor g = Attractor::of({1}, 16, 16);
  CollageSystem c = collage_from_attractor(x, g);
  CHECK(collage_expand(c).sym == x.sym);
  CHECK(static_cast<double>(c.c()) <= size_law_bound(1, 16));
}

TEST_CASE("derivation heights of built collages are finite") {
  Text x = fibonacci_text(512);
  Attractor g = attractor_from_lz77(lz77_parse(x));
  CollageSystem c = collage_from_attractor(x, g);
  std::vector<uint32_t> h = collage_heights(c);
  CHECK(h[c.start] > 0);
  CHECK(collage_expand(c).sym == x.sym);
}

TEST_CASE("size law across the unary and fibonacci families") {
  for (size_t n : {size_t{256}, size_t{1024}, size_t{4096}, size_t{16384}, size_t{65536}}) {
    for (int fam = 0; fam < 2; fam++) {
      Text x = fam == 0 ? unary_text(n) : fibonacci_text(n);
      Attractor g = fam == 0 ? Attractor::of({1}, n, n) : attractor_from_lz77(lz77_parse(x));
      double gamma = static_cast<double>(g.size());
      double bound = size_law_bound(gamma, static_cast<double>(n));

      BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
      REQUIRE(parse_decode(p).sym == x.sym);
      CHECK(static_cast<double>(p.size()) <= bound);
      CHECK(static_cast<double>(p.height) <=
            kSizeLawC * (std::ceil(std::log2(static_cast<double>(n) / gamma)) + 1));

      CollageSystem c = collage_from_attractor(x, g);
      REQUIRE(collage_expand(c).sym == x.sym);
      CHECK(static_cast<double>(c.c()) <= bound);
    }
  }
}

TEST_CASE("parse exports a decodable macro scheme") {
  Text x = t("CDABCCDABCCA");
  Attractor g = Attractor::of({4, 7, 11, 12}, 12, 12);
  BidirectionalParse p = bidirectional_parse_from_attractor(x, g);
  MacroScheme m = p.to_macro();
  CHECK(m.b() == p.size());
  CHECK(macro_decode(m).sym == x.sym);
}
