#include "latlab/chabauty.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace latlab;
using namespace latlab::chab;

namespace {

Eigen::MatrixXd hexagonal() {
  Eigen::MatrixXd b(2, 2);
  b << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2;
  return b;
}

Eigen::MatrixXd unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-3, 3);
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(2, 2);
  for (int s = 0; s < 4; ++s) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Identity(2, 2);
    e(s % 2, 1 - s % 2) = k(rng);
    u = u * e;
  }
  return u;
}

ClosedSubgroup scaled(double t) {
  Eigen::MatrixXd b(1, 1);
  b(0, 0) = t;
  return ClosedSubgroup::lattice(b);
}

Eigen::MatrixXd random_basis(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.6, 1.6), a(0.0, std::numbers::pi);
  const double r1 = u(rng), r2 = u(rng), t1 = a(rng), t2 = t1 + 0.4 + 0.5 * a(rng);
  Eigen::MatrixXd b(2, 2);
  b << r1 * std::cos(t1), r2 * std::cos(t2), r1 * std::sin(t1), r2 * std::sin(t2);
  return b;
}

}  // namespace

TEST_CASE("covolume oracles") {
  CHECK(covolume(Eigen::MatrixXd::Identity(2, 2)) == doctest::Approx(1.0));
  Eigen::MatrixXd b(2, 2);
  b << 2, 1, 0, 3;
  CHECK(covolume(b) == doctest::Approx(6.0));
  CHECK(std::abs(covolume(hexagonal()) - std::sqrt(3.0) / 2) <= 1e-12);
  CHECK(covolume(RationalMatrix{{2, 1}, {0, Rational(3, 2)}}) == 3);
  Eigen::MatrixXd sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(covolume(sing), PreconditionError);
}

TEST_CASE("covolume is unimodular invariant") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto b = random_basis(rng);
    CHECK(std::abs(covolume(b * unimodular(rng)) - covolume(b)) <= 1e-9 * covolume(b));
  }
}

TEST_CASE("basis reduction") {
  Eigen::MatrixXd b(2, 2);
  b << 1, 5, 0, 1;
  const auto r = reduce_basis(b);
  CHECK(std::abs(r.col(0).norm() - 1.0) <= 1e-12);
  CHECK(std::abs(r.col(1).norm() - 1.0) <= 1e-12);
  CHECK(std::abs(r.col(0).dot(r.col(1))) <= 1e-12);

  const auto s = shortest_vectors(hexagonal() * Eigen::MatrixXd((Eigen::Matrix2d() << 1, 7, 0, 1).finished()));
  CHECK(std::abs(s.length - 1.0) <= 1e-9);
  CHECK(s.minimal.size() == 6);
  CHECK(shortest_vectors(Eigen::MatrixXd::Identity(2, 2)).minimal.size() == 4);
}

TEST_CASE("lattice points in a ball") {
  CHECK(lattice_points_in_ball(Eigen::MatrixXd::Identity(2, 2), 1.0).size() == 5);
  CHECK(lattice_points_in_ball(Eigen::MatrixXd::Identity(2, 2), 2.0).size() == 13);
  CHECK_THROWS_AS(lattice_points_in_ball(Eigen::MatrixXd::Identity(2, 2) * 1e-3, 10.0, 1000), CapExceeded);
}

TEST_CASE("compact sets avoiding the lattice") {
  const Eigen::MatrixXd z2 = Eigen::MatrixXd::Identity(2, 2);
  Candidate half;
  half.half_widths = Eigen::Vector2d(0.5, 0.5);
  Candidate big;
  big.half_widths = Eigen::Vector2d(0.6, 0.5);
  Candidate disk;
  disk.kind = Candidate::Kind::Disk;
  disk.radius = 0.5;
  disk.half_widths = Eigen::Vector2d::Zero();
  CHECK(admissible(z2, half));
  CHECK_FALSE(admissible(z2, big));
  CHECK(admissible(z2, disk));
  Candidate wide = disk;
  wide.radius = 0.51;
  CHECK_FALSE(admissible(z2, wide));
  const auto rep = sup_formula_check(z2, {half, big, disk});
  CHECK(rep.admissible == std::vector<bool>{true, false, true});
  CHECK(rep.best_volume <= rep.covolume + 1e-12);
  CHECK(rep.best == std::optional<std::size_t>(0));
}

TEST_CASE("box sweep approaches the covolume") {
  std::mt19937_64 rng(42);
  for (const auto& b : {Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)), hexagonal(), random_basis(rng)}) {
    const auto rep = sup_formula_check(b, box_sweep(b));
    CHECK(rep.best_volume <= rep.covolume * (1 + 1e-9));
    CHECK(rep.best_volume >= 0.8 * rep.covolume);
  }
}

TEST_CASE("truncated Hausdorff distance oracles") {
  CHECK(chabauty_distance(scaled(1.0), scaled(1.0), 3.0) == 0.0);
  for (long n : {1L, 2L, 7L, 100L})
    CHECK(std::abs(chabauty_distance(scaled(1.0 / static_cast<double>(n)), ClosedSubgroup::whole(1), 1.0) -
                   0.5 / static_cast<double>(n)) <= 1e-12);
  CHECK(std::abs(chabauty_distance(scaled(3.0), ClosedSubgroup::trivial(1), 4.0) - 3.0) <= 1e-12);
  CHECK(chabauty_distance(scaled(5.0), ClosedSubgroup::trivial(1), 4.0) == 0.0);
  Eigen::MatrixXd x(2, 1), y(2, 1);
  x << 1, 0;
  y << 0, 1;
  const ClosedSubgroup lx(2, x, Eigen::MatrixXd(2, 0)), ly(2, y, Eigen::MatrixXd(2, 0));
  CHECK(std::abs(chabauty_distance(lx, ly, 2.0) - 2.0) <= 1e-6);
}

TEST_CASE("truncated distance is a metric on samples") {
  std::mt19937_64 rng(43);
  std::vector<ClosedSubgroup> gs;
  for (int i = 0; i < 30; ++i) gs.push_back(ClosedSubgroup::lattice(random_basis(rng)));
  std::uniform_int_distribution<std::size_t> pick(0, gs.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto &a = gs[pick(rng)], &b = gs[pick(rng)], &c = gs[pick(rng)];
    const double ab = chabauty_distance(a, b, 2.0), ba = chabauty_distance(b, a, 2.0);
    CHECK(std::abs(ab - ba) <= 1e-9);
    CHECK(ab <= chabauty_distance(a, c, 2.0) + chabauty_distance(c, b, 2.0) + 1e-9);
  }
}

TEST_CASE("limits of sequences") {
  const std::vector<long> idx = [] {
    std::vector<long> v;
    for (long n = 1; n <= 100; ++n) v.push_back(n);
    return v;
  }();
  const std::vector<double> radii = {1, 2, 4};

  const auto dense = chabauty_limit([](long n) { return scaled(1.0 / static_cast<double>(n)); }, idx, radii);
  CHECK(dense.found);
  CHECK(dense.verified);
  REQUIRE(dense.limit);
  CHECK(dense.limit->connected().cols() == 1);

  const auto escape = chabauty_limit([](long n) { return scaled(static_cast<double>(n)); }, idx, radii);
  CHECK(escape.verified);
  REQUIRE(escape.limit);
  CHECK(escape.limit->connected().cols() == 0);
  CHECK(escape.limit->discrete().cols() == 0);

  const auto line = chabauty_limit(
      [](long n) {
        Eigen::MatrixXd v(2, 1);
        v << std::cos(1.0 / static_cast<double>(n)), std::sin(1.0 / static_cast<double>(n));
        return ClosedSubgroup(2, v, Eigen::MatrixXd(2, 0));
      },
      idx, radii);
  CHECK(line.verified);
  REQUIRE(line.limit);
  REQUIRE(line.limit->connected().cols() == 1);
  CHECK(std::abs(std::abs(line.limit->connected()(0, 0)) - 1.0) <= 1e-6);

  const auto oscillating = chabauty_limit(
      [](long n) { return n % 2 == 0 ? scaled(1.0) : ClosedSubgroup::whole(1); }, idx, radii);
  CHECK_FALSE(oscillating.verified);
  CHECK_FALSE(oscillating.witness.empty());
}

TEST_CASE("Mahler subsequence") {
  std::vector<Eigen::MatrixXd> rot, shrink;
  for (int k = 1; k <= 40; ++k) {
    const double t = 1.0 / k;
    Eigen::MatrixXd r(2, 2), s(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    s << t, 0, 0, 1.0 / t;
    rot.push_back(r);
    shrink.push_back(s);
  }
  const auto rep = mahler_subsequence(rot, 1.0, 0.5);
  CHECK(rep.verified);
  CHECK(rep.subsequence.size() >= 2);
  CHECK(std::abs(rep.limit_covolume - 1.0) <= 1e-6);
  CHECK(rep.limit_shortest >= 0.5 - 1e-9);
  CHECK_THROWS_AS(mahler_subsequence(shrink, 1.0, 0.5), PreconditionError);
}
