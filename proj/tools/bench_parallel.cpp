// Compares the serial reference path against the OpenMP path on the three
// heaviest kernels: the A2 ball suite, the dichotomy sweep cells, and FEM
// operator assembly. Results must agree bitwise; timings are informative.

#include <chrono>
#include <cstdio>
#include <functional>

#include "wadams/extremals.hpp"
#include "wadams/parallel.hpp"
#include "wadams/solver.hpp"
#include "wadams/weights.hpp"

using namespace wadams;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Case {
  const char* name;
  std::function<double()> run;  // returns a digest of the result
};

}  // namespace

int main() {
  WeightProfile profile;
  profile.beta = 0.5;
  profile.chi = ChiSpec::power(3.0);

  Case cases[] = {
      {"a2_ball_suite",
       [&]() {
         auto rep = check_a2(profile, default_ball_suite());
         double digest = 0.0;
         for (const auto& e : rep.entries) digest += e.value;
         return digest;
       }},
      {"dichotomy_cells",
       [&]() {
         double ab = alpha_beta(0.5);
         auto rep = dichotomy_sweep({0.9 * ab, ab, 1.2 * ab}, 0.5, profile,
                                    default_epsilon_ladder(0.5));
         double digest = 0.0;
         for (const auto& row : rep.rows)
           for (const auto& c : row.cells) digest += c.value;
         return digest;
       }},
      {"fem_assembly",
       [&]() {
         GrowthParams g;
         FemSpace space = FemSpace::make(20.0, 80, 240, true);
         Operator op(space, profile, g, 8, {});
         return op.K().diagonal().sum();
       }},
  };

  std::printf("%-18s %12s %12s %8s %s\n", "kernel", "serial[ms]",
              "parallel[ms]", "speedup", "bitwise");
  for (auto& c : cases) {
    set_parallel(false);
    double serial_digest = 0.0;
    double ts = time_ms([&]() { serial_digest = c.run(); });
    set_parallel(true);
    double par_digest = 0.0;
    double tp = time_ms([&]() { par_digest = c.run(); });
    bool same = serial_digest == par_digest;
    std::printf("%-18s %12.2f %12.2f %8.2fx %s\n", c.name, ts, tp,
                ts / tp, same ? "yes" : "NO");
    if (!same) return 1;
  }
  return 0;
}
