#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "attractor/approx.hpp"
#include "attractor/attractor.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Hardness gadget text built from a k-set-cover instance. The text is the
// concatenation P_1..P_u R_1 S_1 .. R_m S_m over a synthetic alphabet:
// one S block per set (holding the element strings x_e^(1)..x_e^(k)), with
// P and R blocks covering shared junk substrings for free. Minimum
// k-attractors of the text encode minimum covers via the size formula
// 4u(k-1) + p + 6t - 3m.
struct GadgetString {
  Text text;
  std::vector<std::string> symbol_names;  // by symbol code; [0] unused
  uint32_t k = 0;
  SetCoverInstance instance;
  uint64_t u = 0, m = 0, t = 0, t2 = 0;  // universe, sets, sum n_i, sum n_i^2

  // 0-based offsets of each gadget block within the text.
  std::vector<uint64_t> p_base, r_base, s_base;

  // The structured position sets used by cover_attractor: per-S minimum and
  // nearly-universal sets, and the universal P/R sets. 1-based set index.
  std::vector<Pos> gamma_s(uint64_t i) const;        // 2*n_i + 1 positions
  std::vector<Pos> gamma_s_prime(uint64_t i) const;  // 2*n_i + 2 positions
  std::vector<Pos> gamma_p(uint64_t i) const;        // 4*(k-1) positions
  std::vector<Pos> gamma_r(uint64_t i) const;        // 4*(n_i - 1) positions
};

// Builds the gadget. Requires k >= 3, every set non-empty and of size <= k.
GadgetString build_gadget(const SetCoverInstance& instance, uint32_t k);

// The structured k-attractor for a valid cover (set ids): nearly-universal
// sets for chosen sets, minimum sets elsewhere, universal P/R sets. Size is
// exactly 4u(k-1) + |cover| + 6t - 3m. Rejects non-covers.
Attractor cover_attractor(const GadgetString& gadget, const std::vector<uint32_t>& cover);

// Undirected graph for the vertex-cover adapter.
struct Graph {
  uint32_t vertices = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // 1-based endpoints
};

// Universe = edges, one set per vertex holding its incident edges; minimum
// covers correspond to minimum vertex covers. Rejects isolated vertices and
// degrees above max_degree.
SetCoverInstance vertex_cover_to_set_cover(const Graph& graph, uint32_t max_degree);

// Sidecar mapping file: one "<code> <name>" line per symbol.
void write_symbol_table(const std::filesystem::path& path, const GadgetString& gadget);

}  // namespace attractor
