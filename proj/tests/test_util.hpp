#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "attractor/text.hpp"

namespace attractor::testutil {

// Builds a text from a readable ASCII literal; 'a' -> 1 order is the byte
// order of the distinct characters, matching text_from_bytes.
inline Text t(std::string_view s) { return text_from_bytes(s).text; }

inline std::string render(const Text& text) {
  std::string out;
  for (Symbol s : text.sym) out += s == kSentinel ? '$' : static_cast<char>('a' + s - 1);
  return out;
}

// Brute-force suffix sort by direct suffix comparison.
inline std::vector<uint32_t> brute_suffix_sort(const Text& text) {
  size_t n = text.n();
  std::vector<uint32_t> sa(n);
  for (size_t i = 0; i < n; i++) sa[i] = static_cast<uint32_t>(i + 1);
  std::sort(sa.begin(), sa.end(), [&](uint32_t a, uint32_t b) {
    while (a <= n && b <= n) {
      if (text.at(a) != text.at(b)) return text.at(a) < text.at(b);
      a++;
      b++;
    }
    return a > n;
  });
  return sa;
}

// All start positions of pattern in text by naive scanning.
inline std::vector<uint32_t> naive_occurrences(const Text& text,
                                               const std::vector<Symbol>& pattern) {
  std::vector<uint32_t> out;
  for (size_t p = 1; p + pattern.size() - 1 <= text.n(); p++) {
    bool ok = true;
    for (size_t i = 0; i < pattern.size() && ok; i++) ok = text.at(p + i) == pattern[i];
    if (ok) out.push_back(static_cast<uint32_t>(p));
  }
  return out;
}

}  // namespace attractor::testutil
