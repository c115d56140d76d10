#include "attractor/gadget.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace attractor {

namespace {

// Symbol codes handed out by a running counter, in the fixed enumeration
// order: x(i,j), then the dollar families in subscript order, '#' last.
struct Codes {
  std::vector<std::vector<Symbol>> x_, dollar_, d1_, d2_, d3_, d4_;  // [i][j]
  Symbol hash_ = 0;

  Codes(const SetCoverInstance& inst, uint32_t k) {
    uint64_t u = inst.universe_size, m = inst.sets.size();
    Symbol next = 1;
    auto family = [&](std::vector<std::vector<Symbol>>& fam, uint64_t count, uint64_t j_lo,
                      auto j_hi) {
      fam.assign(count + 1, {});
      for (uint64_t i = 1; i <= count; i++) {
        fam[i].assign(j_hi(i) + 1, 0);
        for (uint64_t j = j_lo; j <= j_hi(i); j++) fam[i][j] = next++;
      }
    };
    auto ni = [&](uint64_t i) { return inst.sets[i - 1].elems.size(); };
    family(x_, u, 1, [&](uint64_t) { return static_cast<uint64_t>(k); });
    family(dollar_, m, 1, [&](uint64_t i) { return ni(i) + 1; });
    family(d1_, u, 2, [&](uint64_t) { return static_cast<uint64_t>(k); });
    family(d2_, u, 2, [&](uint64_t) { return static_cast<uint64_t>(k); });
    family(d3_, m, 2, [&](uint64_t i) { return ni(i); });
    family(d4_, m, 2, [&](uint64_t i) { return ni(i); });
    hash_ = next;
  }

  Symbol x(uint64_t i, uint64_t j) const { return x_[i][j]; }
  Symbol dollar(uint64_t i, uint64_t j) const { return dollar_[i][j]; }
  Symbol d1(uint64_t i, uint64_t j) const { return d1_[i][j]; }
  Symbol d2(uint64_t i, uint64_t j) const { return d2_[i][j]; }
  Symbol d3(uint64_t i, uint64_t j) const { return d3_[i][j]; }
  Symbol d4(uint64_t i, uint64_t j) const { return d4_[i][j]; }
  Symbol hash() const { return hash_; }
};

uint64_t p_row_len(uint64_t k, uint64_t j) { return 2 * k + 2 * j + 2; }
uint64_t s_row_len(uint64_t k, uint64_t j) { return 2 * k + j; }

// Row base offset (0-based) of row j within a P-style block (rows j = 2..).
uint64_t row_base(uint64_t k, uint64_t j) {
  uint64_t off = 0;
  for (uint64_t r = 2; r < j; r++) off += p_row_len(k, r);
  return off;
}

}  // namespace

GadgetString build_gadget(const SetCoverInstance& instance, uint32_t k) {
  if (k < 3) throw std::invalid_argument("build_gadget: k must be >= 3");
  instance.check();
  for (const auto& s : instance.sets) {
    if (s.elems.empty()) throw std::invalid_argument("build_gadget: empty set");
    if (s.elems.size() > k) throw std::invalid_argument("build_gadget: set larger than k");
  }

  GadgetString g;
  g.k = k;
  g.instance = instance;
  g.u = instance.universe_size;
  g.m = instance.sets.size();
  for (const auto& s : instance.sets) {
    g.t += s.elems.size();
    g.t2 += s.elems.size() * s.elems.size();
  }

  Codes codes(instance, k);
  std::vector<Symbol>& out = g.text.sym;
  auto emit = [&](Symbol s) { out.push_back(s); };
  auto emit_hashes = [&] {
    for (uint64_t h = 0; h + 1 < k; h++) emit(codes.hash());
  };

  g.p_base.assign(g.u + 1, 0);
  for (uint64_t i = 1; i <= g.u; i++) {
    g.p_base[i] = out.size();
    for (uint64_t j = 2; j <= k; j++) {
      emit_hashes();
      emit(codes.d1(i, j));
      for (uint64_t q = 2; q <= j; q++) emit(codes.x(i, q));
      emit(codes.d2(i, j));
      emit_hashes();
      emit(codes.d1(i, j));
      for (uint64_t q = 2; q <= j; q++) emit(codes.x(i, q));
      emit(codes.d1(i, j));
      emit(codes.d1(i, j));
      emit(codes.d2(i, j));
    }
  }

  g.r_base.assign(g.m + 1, 0);
  g.s_base.assign(g.m + 1, 0);
  for (uint64_t i = 1; i <= g.m; i++) {
    uint64_t ni = instance.sets[i - 1].elems.size();
    g.r_base[i] = out.size();
    for (uint64_t j = 2; j <= ni; j++) {
      emit_hashes();
      emit(codes.d3(i, j));
      for (uint64_t q = 2; q <= j; q++) emit(codes.dollar(i, q));
      emit(codes.d4(i, j));
      emit_hashes();
      emit(codes.d3(i, j));
      for (uint64_t q = 2; q <= j; q++) emit(codes.dollar(i, q));
      emit(codes.d3(i, j));
      emit(codes.d3(i, j));
      emit(codes.d4(i, j));
    }
    g.s_base[i] = out.size();
    for (uint64_t j = 1; j <= ni; j++) {
      emit_hashes();
      for (uint64_t q = 1; q <= j; q++) emit(codes.dollar(i, q));
      uint64_t e = instance.sets[i - 1].elems[j - 1];
      for (uint64_t q = 1; q <= k; q++) emit(codes.x(e, q));
      emit(codes.dollar(i, j));
    }
    emit_hashes();
    for (uint64_t q = 1; q <= ni + 1; q++) emit(codes.dollar(i, q));
  }

  g.text.sigma = codes.hash();
  g.text.check();

  g.symbol_names.assign(codes.hash() + 1, "");
  for (uint64_t i = 1; i <= g.u; i++) {
    for (uint64_t j = 1; j <= k; j++) g.symbol_names[codes.x(i, j)] = "x(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  for (uint64_t i = 1; i <= g.m; i++) {
    uint64_t ni = instance.sets[i - 1].elems.size();
    for (uint64_t j = 1; j <= ni + 1; j++) g.symbol_names[codes.dollar(i, j)] = "$(" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (uint64_t j = 2; j <= ni; j++) {
      g.symbol_names[codes.d3(i, j)] = "$'''(" + std::to_string(i) + "," + std::to_string(j) + ")";
      g.symbol_names[codes.d4(i, j)] = "$''''(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  }
  for (uint64_t i = 1; i <= g.u; i++) {
    for (uint64_t j = 2; j <= k; j++) {
      g.symbol_names[codes.d1(i, j)] = "$'(" + std::to_string(i) + "," + std::to_string(j) + ")";
      g.symbol_names[codes.d2(i, j)] = "$''(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  }
  g.symbol_names[codes.hash()] = "#";
  return g;
}

// The named positions below are closed-form offsets into the block layouts;
// all returned positions are 1-based.

std::vector<Pos> GadgetString::gamma_s(uint64_t i) const {
  uint64_t ni = instance.sets[i - 1].elems.size();
  std::vector<Pos> out;
  uint64_t row = s_base[i];
  for (uint64_t j = 1; j <= ni; j++) {
    out.push_back(static_cast<Pos>(row + (k - 2 + j) + 1));      // leftmost $(i,j)
    out.push_back(static_cast<Pos>(row + (2 * k - 1 + j) + 1));  // second $(i,j), row end
    row += s_row_len(k, j);
  }
  out.push_back(static_cast<Pos>(row + (k - 1 + ni) + 1));  // only $(i,ni+1), in the tail
  return out;
}

std::vector<Pos> GadgetString::gamma_s_prime(uint64_t i) const {
  uint64_t ni = instance.sets[i - 1].elems.size();
  std::vector<Pos> out;
  uint64_t row = s_base[i];
  for (uint64_t j = 1; j <= ni; j++) {
    out.push_back(static_cast<Pos>(row + (k - 1 + j) + 1));      // only x_e^(1) of the row
    out.push_back(static_cast<Pos>(row + (2 * k - 1 + j) + 1));  // second $(i,j)
    row += s_row_len(k, j);
  }
  out.push_back(static_cast<Pos>(row + (k - 1) + 1));       // last $(i,1), in the tail
  out.push_back(static_cast<Pos>(row + (k - 1 + ni) + 1));  // only $(i,ni+1)
  return out;
}

std::vector<Pos> GadgetString::gamma_p(uint64_t i) const {
  std::vector<Pos> out;
  for (uint64_t j = 2; j <= k; j++) {
    uint64_t row = p_base[i] + row_base(k, j);
    out.push_back(static_cast<Pos>(row + (k + j - 2) + 1));  // leftmost x(i,j)
    if (j == 2) {
      out.push_back(static_cast<Pos>(row + (2 * k + j - 2) + 1));  // # before 2nd $'(i,2)
    } else {
      out.push_back(static_cast<Pos>(row + (2 * k + j - 1) + 1));  // 2nd $'(i,j)
    }
    out.push_back(static_cast<Pos>(row + (2 * k + 2 * j - 1) + 1));  // 3rd $'(i,j)
    out.push_back(static_cast<Pos>(row + (2 * k + 2 * j + 1) + 1));  // 2nd $''(i,j)
  }
  return out;
}

std::vector<Pos> GadgetString::gamma_r(uint64_t i) const {
  uint64_t ni = instance.sets[i - 1].elems.size();
  std::vector<Pos> out;
  for (uint64_t j = 2; j <= ni; j++) {
    uint64_t row = r_base[i] + row_base(k, j);
    out.push_back(static_cast<Pos>(row + (k + j - 2) + 1));  // leftmost $(i,j) in R
    if (j == 2) {
      out.push_back(static_cast<Pos>(row + (2 * k + j - 2) + 1));  // # before 2nd $'''(i,2)
    } else {
      out.push_back(static_cast<Pos>(row + (2 * k + j - 1) + 1));  // 2nd $'''(i,j)
    }
    out.push_back(static_cast<Pos>(row + (2 * k + 2 * j - 1) + 1));  // 3rd $'''(i,j)
    out.push_back(static_cast<Pos>(row + (2 * k + 2 * j + 1) + 1));  // 2nd $''''(i,j)
  }
  return out;
}

Attractor cover_attractor(const GadgetString& gadget, const std::vector<uint32_t>& cover) {
  // verify the ids form a cover
  std::vector<bool> chosen(gadget.m + 1, false);
  for (uint32_t id : cover) {
    bool known = false;
    for (const auto& s : gadget.instance.sets) known = known || s.id == id;
    if (!known) throw std::invalid_argument("cover_attractor: unknown set id");
  }
  std::vector<bool> hit(gadget.u + 1, false);
  for (uint64_t i = 1; i <= gadget.m; i++) {
    const auto& s = gadget.instance.sets[i - 1];
    if (std::find(cover.begin(), cover.end(), s.id) != cover.end()) {
      chosen[i] = true;
      for (uint32_t e : s.elems) hit[e] = true;
    }
  }
  for (uint64_t e = 1; e <= gadget.u; e++) {
    if (!hit[e]) throw std::invalid_argument("cover_attractor: ids do not cover the universe");
  }

  std::vector<Pos> pos;
  for (uint64_t i = 1; i <= gadget.m; i++) {
    std::vector<Pos> part = chosen[i] ? gadget.gamma_s_prime(i) : gadget.gamma_s(i);
    pos.insert(pos.end(), part.begin(), part.end());
    std::vector<Pos> r = gadget.gamma_r(i);
    pos.insert(pos.end(), r.begin(), r.end());
  }
  for (uint64_t i = 1; i <= gadget.u; i++) {
    std::vector<Pos> p = gadget.gamma_p(i);
    pos.insert(pos.end(), p.begin(), p.end());
  }

  size_t expected = 4 * gadget.u * (gadget.k - 1) + cover.size() + 6 * gadget.t - 3 * gadget.m;
  Attractor out = Attractor::of(std::move(pos), gadget.text.n(), gadget.k);
  if (out.size() != expected) {
    throw std::logic_error("cover_attractor: structured set size deviates from the formula");
  }
  return out;
}

SetCoverInstance vertex_cover_to_set_cover(const Graph& graph, uint32_t max_degree) {
  SetCoverInstance inst;
  inst.universe_size = graph.edges.size();
  inst.k_bound = max_degree;
  std::vector<std::vector<uint32_t>> incident(graph.vertices + 1);
  for (size_t e = 0; e < graph.edges.size(); e++) {
    auto [a, b] = graph.edges[e];
    if (a < 1 || a > graph.vertices || b < 1 || b > graph.vertices || a == b) {
      throw std::invalid_argument("vertex_cover_to_set_cover: bad edge");
    }
    incident[a].push_back(static_cast<uint32_t>(e + 1));
    incident[b].push_back(static_cast<uint32_t>(e + 1));
  }
  for (uint32_t v = 1; v <= graph.vertices; v++) {
    if (incident[v].empty()) throw std::invalid_argument("vertex_cover_to_set_cover: isolated vertex");
    if (incident[v].size() > max_degree) {
      throw std::invalid_argument("vertex_cover_to_set_cover: degree above the bound");
    }
    inst.sets.push_back({v, incident[v]});
  }
  inst.check();
  return inst;
}

void write_symbol_table(const std::filesystem::path& path, const GadgetString& gadget) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write symbol table: " + path.string());
  for (size_t c = 1; c < gadget.symbol_names.size(); c++) {
    out << c << " " << gadget.symbol_names[c] << "\n";
  }
}

}  // namespace attractor
