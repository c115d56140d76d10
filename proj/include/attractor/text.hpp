#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace attractor {

using Symbol = uint32_t;
using Pos = uint32_t;  // 1-based text position

// Sentinel symbol used by BWT-related operations. It is smaller than every
// alphabet symbol (alphabet symbols live in [1..sigma]).
inline constexpr Symbol kSentinel = 0;

// A string over the integer alphabet [1..sigma], optionally terminated by a
// unique sentinel (symbol 0) that is not counted in sigma.
struct Text {
  std::vector<Symbol> sym;  // 1-based access via at()
  Symbol sigma = 0;
  bool has_sentinel = false;

  size_t n() const { return sym.size(); }
  Symbol at(Pos p) const { return sym[p - 1]; }

  bool operator==(const Text&) const = default;

  // Checks the type invariants; throws std::invalid_argument on violation.
  void check() const;

  // Returns a copy with the sentinel appended. Rejects texts that already
  // carry one.
  Text with_sentinel() const;

  // The concatenation of two copies of this text. Rejects sentinel texts.
  Text square() const;
};

// Builds a Text by remapping raw bytes to a dense alphabet [1..sigma]
// (byte order preserved, so lexicographic comparisons are unchanged).
// Returns the text plus the symbol->byte table.
struct ByteText {
  Text text;
  std::vector<uint8_t> byte_of_symbol;  // index 0 unused
};
ByteText text_from_bytes(std::string_view bytes);

// Builds a Text from pre-mapped integer tokens (values >= 1).
Text text_from_tokens(const std::vector<Symbol>& tokens);

// File readers for the two on-disk text flavours: raw bytes, or one decimal
// token per line.
ByteText read_byte_text(const std::filesystem::path& path);
Text read_token_text(const std::filesystem::path& path);
void write_token_text(const std::filesystem::path& path, const Text& text);

// Deterministic test-data families.
Text unary_text(size_t n);
Text fibonacci_text(size_t n);  // prefix of the infinite Fibonacci word, sigma = 2
Text random_text(size_t n, Symbol sigma, uint64_t seed);

}  // namespace attractor
