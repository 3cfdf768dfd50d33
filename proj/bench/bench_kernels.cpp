// Serial reference against OpenMP kernels on the heavier loops.
// Usage: latlab_bench [repeats]

#include "latlab/lattice_lab.hpp"
#include "latlab/nerve.hpp"
#include "latlab/presets.hpp"
#include "latlab/smallness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>

using namespace latlab;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, int repeats, const std::function<void(Exec)>& f) {
  const double s = best_of(repeats, [&] { f(Exec::Serial); });
  const double p = best_of(repeats, [&] { f(Exec::Parallel); });
  std::printf("%-34s %12.4f %12.4f %8.2fx\n", name.c_str(), s, p, s / p);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  const auto octagon = presets::octagon_genus2();
  row("word ball, octagon, L = 5", repeats, [&](Exec e) { word_ball(octagon, 5, 1000000, e); });

  lab::SampleRegion region;
  region.count = 4000;
  const auto points = lab::sample_region(region);
  const auto sl2z = presets::sl2z();
  row("thick-thin, SL2(Z), 4000 samples", repeats, [&](Exec e) { lab::thick_thin_scan(sl2z, 0.2, points, 6, e); });

  const auto deck = nerve::lattice_translations(2, 2);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<nerve::Point> samples;
  for (int i = 0; i < 20000; ++i) {
    const double a = u(rng);
    samples.push_back(Eigen::Vector2d(a, u(rng)));
  }
  const auto net = nerve::build_eps_net(*deck, samples, 0.05);
  row("nerve, torus, " + std::to_string(net.centers.size()) + " centres", repeats,
      [&](Exec e) { nerve::build_nerve(*deck, net.centers, 0.06, e); });

  row("commutator trial, 20000 pairs", repeats,
      [&](Exec e) { small::commutator_contraction_trial(4, 0.1, 20000, 0, e); });

  const auto s = small::MatrixSet::floating(small::random_near_identity(3, 6, 0.1, 1));
  row("commutator ladder, 4 levels", repeats, [&](Exec e) { small::commutator_ladder(s, 4, e); });
  return 0;
}
