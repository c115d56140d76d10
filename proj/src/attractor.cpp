#include "attractor/attractor.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "attractor/suffix_index.hpp"

namespace attractor {

void Attractor::check() const {
  if (n == 0) throw std::invalid_argument("attractor: n must be positive");
  if (k < 1 || k > n) throw std::invalid_argument("attractor: k out of [1..n]");
  for (size_t i = 0; i < positions.size(); i++) {
    if (positions[i] < 1 || positions[i] > n) throw std::invalid_argument("attractor: position out of range");
    if (i > 0 && positions[i] <= positions[i - 1]) {
      throw std::invalid_argument("attractor: positions not strictly increasing");
    }
  }
}

Attractor Attractor::full(uint64_t n) {
  Attractor g;
  g.n = n;
  g.k = n;
  g.positions.resize(n);
  std::iota(g.positions.begin(), g.positions.end(), Pos{1});
  return g;
}

Attractor Attractor::of(std::vector<Pos> positions, uint64_t n, uint64_t k) {
  Attractor g;
  g.positions = std::move(positions);
  std::sort(g.positions.begin(), g.positions.end());
  g.positions.erase(std::unique(g.positions.begin(), g.positions.end()), g.positions.end());
  g.n = n;
  g.k = k;
  g.check();
  return g;
}

Attractor superset_close(const Attractor& gamma, std::span<const Pos> extra) {
  std::vector<Pos> all = gamma.positions;
  all.insert(all.end(), extra.begin(), extra.end());
  return Attractor::of(std::move(all), gamma.n, gamma.k);
}

Attractor equally_spaced_close(const Attractor& gamma) {
  gamma.check();
  uint64_t g = gamma.size();
  if (g == 0) throw std::invalid_argument("attractor: cannot space-close an empty set");
  uint64_t step = (gamma.n + g - 1) / g;
  std::vector<Pos> extra;
  for (uint64_t i = 1; i <= g; i++) {
    extra.push_back(static_cast<Pos>(std::min(step * i, gamma.n)));
  }
  return superset_close(gamma, extra);
}

Attractor read_attractor(const std::filesystem::path& path, uint64_t fallback_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open attractor file: " + path.string());
  uint64_t n = fallback_n, k = 0;
  std::vector<Pos> positions;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string field;
      while (hs >> field) {
        if (field.rfind("n=", 0) == 0) n = std::stoull(field.substr(2));
        if (field.rfind("k=", 0) == 0) k = std::stoull(field.substr(2));
      }
      continue;
    }
    positions.push_back(static_cast<Pos>(std::stoul(line)));
  }
  if (n == 0) throw std::runtime_error("attractor file: unknown text length");
  if (k == 0) k = n;
  Attractor g;
  g.positions = std::move(positions);
  g.n = n;
  g.k = k;
  g.check();
  return g;
}

void write_attractor(const std::filesystem::path& path, const Attractor& gamma) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write attractor file: " + path.string());
  out << "# n=" << gamma.n << " k=" << gamma.k << "\n";
  for (Pos p : gamma.positions) out << p << "\n";
}

std::vector<uint32_t> succ_distance(const Text& text, const Attractor& gamma) {
  if (gamma.n != text.n()) throw std::invalid_argument("succ_distance: attractor built for a different length");
  return succ_distance(text.n(), gamma.positions);
}

}  // namespace attractor
