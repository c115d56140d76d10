// Compares the OpenMP-parallel kernels against their serial runs on the
// texts the test families use. Results must be identical; timings differ.
#include <chrono>
#include <cstdio>
#include <string>

#include "attractor/access.hpp"
#include "attractor/approx.hpp"
#include "attractor/compress.hpp"
#include "attractor/induce.hpp"
#include "attractor/validate.hpp"

using namespace attractor;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0, std::chrono::steady_clock::now());
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %9.4fs %9.4fs  x%.2f  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "results equal" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  size_t n = argc > 1 ? std::stoul(argv[1]) : 200000;
  std::printf("kernel                          serial   parallel  speedup\n");

  {
    Text x = fibonacci_text(n);
    SuffixIndex idx = build_suffix_index(x);
    Attractor g = attractor_from_lz77(lz77_parse(x, &idx));
    ValidationResult rs, rp;
    ValidateOptions ser{.parallel = false, .index = &idx};
    ValidateOptions par{.parallel = true, .index = &idx};
    double ts = timed([&] { rs = validate_k_attractor(x, g, x.n(), ser); });
    double tp = timed([&] { rp = validate_k_attractor(x, g, x.n(), par); });
    row("validate (fibonacci)", ts, tp, rs.valid == rp.valid);
  }
  {
    Text x = random_text(n, 4, 42);
    SuffixIndex idx = build_suffix_index(x);
    Attractor g = attractor_from_lz77(lz77_parse(x, &idx));
    ValidationResult rs, rp;
    ValidateOptions ser{.parallel = false, .index = &idx};
    ValidateOptions par{.parallel = true, .index = &idx};
    double ts = timed([&] { rs = validate_k_attractor(x, g, x.n(), ser); });
    double tp = timed([&] { rp = validate_k_attractor(x, g, x.n(), par); });
    row("validate (random)", ts, tp, rs.valid == rp.valid);
  }
  {
    Text x = random_text(18, 3, 7);
    Attractor a, b;
    double ts = timed([&] { a = min_attractor_brute(x, 18, nullptr, false); });
    double tp = timed([&] { b = min_attractor_brute(x, 18, nullptr, true); });
    row("min attractor (n=18)", ts, tp, a.positions == b.positions);
  }
  {
    Text x = random_text(std::min<size_t>(n, 4000), 2, 11);
    Attractor a, b;
    double ts = timed([&] { a = k_attractor_greedy(x, 5, false); });
    double tp = timed([&] { b = k_attractor_greedy(x, 5, true); });
    row("greedy cover (k=5)", ts, tp, a.positions == b.positions);
  }
  {
    Text x = fibonacci_text(n);
    Attractor g = attractor_from_lz77(lz77_parse(x));
    AttractorIndex a, b;
    double ts = timed([&] { a = build_index(x, g, 4, 4, false); });
    double tp = timed([&] { b = build_index(x, g, 4, 4, true); });
    row("index build (tau=4)", ts, tp, a.store == b.store && a.levels == b.levels);
  }
  return 0;
}
