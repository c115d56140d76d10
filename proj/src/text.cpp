#include "attractor/text.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace attractor {

void Text::check() const {
  if (sym.empty()) throw std::invalid_argument("text: empty");
  size_t last = sym.size() - (has_sentinel ? 1 : 0);
  if (has_sentinel) {
    if (sym.back() != kSentinel) throw std::invalid_argument("text: sentinel flag without trailing sentinel");
    if (last == 0) throw std::invalid_argument("text: sentinel-only text");
  }
  for (size_t i = 0; i < last; i++) {
    if (sym[i] < 1 || sym[i] > sigma) throw std::invalid_argument("text: symbol out of [1..sigma]");
  }
}

Text Text::with_sentinel() const {
  if (has_sentinel) throw std::invalid_argument("text: sentinel already present");
  Text out = *this;
  out.sym.push_back(kSentinel);
  out.has_sentinel = true;
  return out;
}

Text Text::square() const {
  if (has_sentinel) throw std::invalid_argument("text: cannot square a sentinel text");
  Text out = *this;
  out.sym.insert(out.sym.end(), sym.begin(), sym.end());
  return out;
}

ByteText text_from_bytes(std::string_view bytes) {
  if (bytes.empty()) throw std::invalid_argument("text: empty");
  std::array<bool, 256> seen{};
  for (unsigned char c : bytes) seen[c] = true;
  std::array<Symbol, 256> code{};
  ByteText out;
  out.byte_of_symbol.push_back(0);  // symbol 0 reserved for the sentinel
  Symbol next = 1;
  for (int c = 0; c < 256; c++) {
    if (seen[c]) {
      code[c] = next++;
      out.byte_of_symbol.push_back(static_cast<uint8_t>(c));
    }
  }
  out.text.sigma = next - 1;
  out.text.sym.reserve(bytes.size());
  for (unsigned char c : bytes) out.text.sym.push_back(code[c]);
  return out;
}

Text text_from_tokens(const std::vector<Symbol>& tokens) {
  if (tokens.empty()) throw std::invalid_argument("text: empty");
  Text out;
  out.sym = tokens;
  out.sigma = *std::max_element(tokens.begin(), tokens.end());
  out.check();
  return out;
}

ByteText read_byte_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open text file: " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text_from_bytes(data);
}

Text read_token_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open token file: " + path.string());
  std::vector<Symbol> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    tokens.push_back(static_cast<Symbol>(std::stoul(line)));
  }
  return text_from_tokens(tokens);
}

void write_token_text(const std::filesystem::path& path, const Text& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write token file: " + path.string());
  for (Symbol s : text.sym) out << s << "\n";
}

Text unary_text(size_t n) {
  Text out;
  out.sym.assign(n, 1);
  out.sigma = 1;
  return out;
}

Text fibonacci_text(size_t n) {
  // a, ab, aba, abaab, ... ; each word is the previous two concatenated.
  std::vector<Symbol> cur = {1};
  std::vector<Symbol> prev = {1, 2};
  std::swap(cur, prev);  // cur = "ab", prev = "a"
  while (cur.size() < n) {
    std::vector<Symbol> next = cur;
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.resize(n);
  Text out;
  out.sym = std::move(cur);
  out.sigma = n >= 2 ? 2 : 1;
  return out;
}

Text random_text(size_t n, Symbol sigma, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Symbol> dist(1, sigma);
  Text out;
  out.sigma = sigma;
  out.sym.reserve(n);
  for (size_t i = 0; i < n; i++) out.sym.push_back(dist(rng));
  // sigma counts the declared alphabet; not all symbols need to occur.
  return out;
}

}  // namespace attractor
