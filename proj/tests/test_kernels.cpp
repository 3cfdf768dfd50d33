#include "latlab/kernels.hpp"
#include "latlab/presets.hpp"
#include "latlab/word_ball.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

using namespace latlab;

TEST_CASE("map and argmin agree across execution paths") {
  auto f = [](std::size_t i) { return std::sin(0.37 * static_cast<double>(i)) + 0.001 * static_cast<double>(i % 7); };
  const auto a = kernels::map(Exec::Serial, 5000, f);
  const auto b = kernels::map(Exec::Parallel, 5000, f);
  CHECK(a == b);
  const auto m1 = kernels::argmin(Exec::Serial, 5000, f);
  const auto m2 = kernels::argmin(Exec::Parallel, 5000, f);
  CHECK(m1.index == m2.index);
  CHECK(m1.value == m2.value);
}

TEST_CASE("argmin ties resolve to the lowest index") {
  auto f = [](std::size_t i) { return i % 10 == 3 ? -1.0 : 0.0; };
  CHECK(kernels::argmin(Exec::Parallel, 1000, f).index == 3);
  CHECK(kernels::argmin(Exec::Serial, 1000, f).index == 3);
}

TEST_CASE("parallel map rethrows the first failing index") {
  auto f = [](std::size_t i) -> int {
    if (i == 400 || i == 900) throw std::runtime_error(std::to_string(i));
    return static_cast<int>(i);
  };
  try {
    kernels::map(Exec::Parallel, 1000, f);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "400");
  }
}

TEST_CASE("word ball of radius 0 is the identity") {
  const auto ball = word_ball(presets::sl2z(), 0);
  CHECK(ball.size() == 1);
  CHECK(ball.words[0].empty());
}

TEST_CASE("Z^2 ball of radius 3 has 25 elements") {
  const auto ball = word_ball(presets::zn_translations(2), 3);
  CHECK(ball.size() == 25);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& t = ball.elements[i].translation();
    CHECK(std::abs(t(0)) + std::abs(t(1)) == doctest::Approx(static_cast<double>(ball.length(i))));
  }
}

TEST_CASE("SL2(Z) ball of radius 2 matches an independent enumeration") {
  const auto g = presets::sl2z();
  const auto ball = word_ball(g, 2);
  // every product of at most two letters, hashed on rounded PSL entries
  std::set<std::vector<long long>> seen;
  auto key = [](const hyp::MoebiusIsometry& m) {
    auto e = m.row_major();
    if (e[0] < 0 || (e[0] == 0 && e[1] < 0))
      for (auto& x : e) x = -x;
    std::vector<long long> k;
    for (double x : e) k.push_back(std::llround(x * 1e6));
    return k;
  };
  const auto letters = g.letters();
  seen.insert(key(hyp::MoebiusIsometry()));
  for (const auto& a : letters) {
    seen.insert(key(a.second));
    for (const auto& b : letters) seen.insert(key(a.second * b.second));
  }
  CHECK(ball.size() == seen.size());
  CHECK(ball.size() > 1);
}

TEST_CASE("word balls agree across execution paths") {
  const auto g = presets::octagon_genus2();
  const auto a = word_ball(g, 3, 1000000, Exec::Serial);
  const auto b = word_ball(g, 3, 1000000, Exec::Parallel);
  REQUIRE(a.size() == b.size());
  CHECK(a.words == b.words);
}

TEST_CASE("word ball cap") {
  CHECK_THROWS_AS(word_ball(presets::octagon_genus2(), 4, 100), CapExceeded);
  bool capped = false;
  const auto ball = word_ball(presets::octagon_genus2(), 4, 100, Exec::Parallel, &capped);
  CHECK(capped);
  CHECK(ball.size() == 100);
}

TEST_CASE("minimal words") {
  const auto ball = word_ball(presets::zn_translations(2), 4);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto& t = ball.elements[i].translation();
    CHECK(ball.length(i) == static_cast<int>(std::lround(std::abs(t(0)) + std::abs(t(1)))));
  }
  CHECK(word_to_string({1, -2}) == "g0 g1^-1");
}
